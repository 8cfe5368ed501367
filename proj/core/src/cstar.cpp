#include "smalelab/cstar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smalelab/errors.hpp"

namespace smalelab {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DomainError(std::string(what) + ": dimension mismatch");
}

using LScalar = std::complex<long double>;

// Kahan-compensated complex sum.
class CompensatedSum {
 public:
  void add(LScalar x) {
    const LScalar y = x - carry_;
    const LScalar t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  LScalar value() const { return sum_; }

 private:
  LScalar sum_{};
  LScalar carry_{};
};

LScalar widen(Scalar z) { return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())}; }

LScalar eval_root_form_ld(const std::vector<LScalar>& roots, LScalar lead, LScalar z) {
  LScalar acc = lead;
  for (const auto& r : roots) acc *= z - r;
  return acc;
}

LScalar derivative_root_form_ld(const std::vector<LScalar>& roots, LScalar lead, LScalar z) {
  CompensatedSum sum;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    LScalar term = lead;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i != j) term *= z - roots[i];
    }
    sum.add(term);
  }
  return sum.value();
}

// Second derivative of the root form, for Newton on P'.
LScalar second_derivative_root_form_ld(const std::vector<LScalar>& roots, LScalar lead, LScalar z) {
  CompensatedSum sum;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    for (std::size_t l = 0; l < roots.size(); ++l) {
      if (l == j) continue;
      LScalar term = lead;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i != j && i != l) term *= z - roots[i];
      }
      sum.add(term);
    }
  }
  return sum.value();
}

// Per-coordinate quantities at z shared by every critical element.
struct CoordinateData {
  std::vector<std::vector<double>> value_gap;  // |P_t(z_t) - P_t(w_tj)|
  std::vector<std::vector<double>> distance;   // |z_t - w_tj|
  std::vector<double> deriv_abs;               // |P'_t(z_t)|
  double deriv_norm = 0.0;
};

double derivative_scale(const CStarPoly& P) {
  double s = 0.0;
  for (std::size_t t = 0; t < P.dim(); ++t) s = std::max(s, derivative(P.coordinate(t)).coeff_scale());
  return s;
}

CoordinateData prepare(const CStarPoly& P, const CriticalSet& crit, const CStarElement& z, const CStarCheckConfig& cfg) {
  require_same_dim(z.dim(), P.dim(), "check_smale");
  require_same_dim(crit.dim(), P.dim(), "check_smale");
  const CStarElement pz = cstar_eval(P, z);
  const CStarElement dz = cstar_derivative_eval(P, z);
  CoordinateData d;
  d.deriv_norm = dz.norm();
  if (!(d.deriv_norm > cfg.critical_tol * derivative_scale(P))) throw PreconditionError("check_smale: z is critical");

  double sup_distance_to_set = 0.0;
  for (std::size_t t = 0; t < P.dim(); ++t) {
    const auto& rs = crit.per_coordinate()[t];
    const auto roots = P.coordinate_roots(t);
    std::vector<double> gap;
    std::vector<double> dist;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& w : rs.roots) {
      const Scalar pw = P.lead()[t] * eval_root_form(roots, w);
      gap.push_back(std::abs(pz[t] - pw));
      dist.push_back(std::abs(z[t] - w));
      nearest = std::min(nearest, dist.back());
    }
    sup_distance_to_set = std::max(sup_distance_to_set, nearest);
    d.value_gap.push_back(std::move(gap));
    d.distance.push_back(std::move(dist));
    d.deriv_abs.push_back(std::abs(dz[t]));
  }
  if (!(sup_distance_to_set > cfg.coincidence_tol)) {
    throw PreconditionError("check_smale: z coincides with a critical element");
  }
  return d;
}

CStarVerdict run_check(const CStarPoly& P, const CriticalSet& crit, const CStarElement& z, const CStarCheckConfig& cfg,
                       bool strong) {
  const CoordinateData d = prepare(P, crit, z, cfg);
  const int n = P.degree();
  const double sharp = static_cast<double>(n - 1) / n;
  const std::size_t k = P.dim();

  CStarVerdict v;
  v.z = z;
  v.critical_count = crit.product_size();
  v.strong_checked = strong;
  v.strong_smale_margin = std::numeric_limits<double>::infinity();
  v.strong_dual_margin = std::numeric_limits<double>::infinity();
  double weak_margin = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> best_index;
  std::vector<std::size_t> worst_index;
  bool first = true;
  crit.for_each([&](const std::vector<std::size_t>& idx) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      num = std::max(num, d.value_gap[t][idx[t]]);
      den = std::max(den, d.distance[t][idx[t]]);
    }
    const double ratio = num / (den * d.deriv_norm);
    if (first || ratio < v.min_ratio) {
      v.min_ratio = ratio;
      best_index = idx;
    }
    if (first || ratio > v.max_ratio) {
      v.max_ratio = ratio;
      worst_index = idx;
    }
    first = false;

    if (strong) {
      double scale = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        const double gap2 = d.value_gap[t][idx[t]] * d.value_gap[t][idx[t]];
        const double rhs = d.distance[t][idx[t]] * d.deriv_abs[t];
        scale = std::max({scale, gap2, rhs * rhs});
      }
      double ex_weak = -std::numeric_limits<double>::infinity();
      double ex_sharp = ex_weak;
      double ex_dual = ex_weak;
      for (std::size_t t = 0; t < k; ++t) {
        const double gap2 = d.value_gap[t][idx[t]] * d.value_gap[t][idx[t]];
        const double rhs = d.distance[t][idx[t]] * d.deriv_abs[t];
        const double rhs2 = rhs * rhs;
        ex_weak = std::max(ex_weak, (gap2 - rhs2) / scale);
        ex_sharp = std::max(ex_sharp, (gap2 - sharp * sharp * rhs2) / scale);
        ex_dual = std::max(ex_dual, (rhs2 / (n * n) - gap2) / scale);
      }
      weak_margin = std::min(weak_margin, ex_weak);
      v.strong_smale_margin = std::min(v.strong_smale_margin, ex_sharp);
      v.strong_dual_margin = std::min(v.strong_dual_margin, ex_dual);
    }
    return true;
  });

  v.best_witness = crit.element(best_index);
  v.worst_witness = crit.element(worst_index);
  v.weak_pass = v.min_ratio <= 1.0 + cfg.verdict_tol;
  v.sharp_pass = v.min_ratio <= sharp + cfg.verdict_tol;
  v.dual_pass = v.max_ratio >= 1.0 / n - cfg.verdict_tol;
  if (strong) {
    v.strong_weak_pass = weak_margin <= cfg.strong_tol;
    v.strong_smale_pass = v.strong_smale_margin <= cfg.strong_tol;
    v.strong_dual_pass = v.strong_dual_margin <= cfg.strong_tol;
  } else {
    v.strong_smale_margin = 0.0;
    v.strong_dual_margin = 0.0;
  }
  return v;
}

}  // namespace

CStarElement::CStarElement(std::vector<Scalar> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("CStarElement: need at least one coordinate");
  for (const auto& c : coords_) {
    if (!is_finite(c)) throw DomainError("CStarElement: coordinate is not finite");
  }
}

double CStarElement::norm() const noexcept {
  double m = 0.0;
  for (const auto& c : coords_) m = std::max(m, std::abs(c));
  return m;
}

CStarElement CStarElement::adjoint() const {
  std::vector<Scalar> c(coords_.size());
  std::transform(coords_.begin(), coords_.end(), c.begin(), [](Scalar x) { return std::conj(x); });
  return CStarElement(std::move(c));
}

CStarElement& CStarElement::operator+=(const CStarElement& o) {
  require_same_dim(dim(), o.dim(), "CStarElement +");
  for (std::size_t t = 0; t < coords_.size(); ++t) coords_[t] += o.coords_[t];
  return *this;
}

CStarElement& CStarElement::operator-=(const CStarElement& o) {
  require_same_dim(dim(), o.dim(), "CStarElement -");
  for (std::size_t t = 0; t < coords_.size(); ++t) coords_[t] -= o.coords_[t];
  return *this;
}

CStarElement& CStarElement::operator*=(const CStarElement& o) {
  require_same_dim(dim(), o.dim(), "CStarElement *");
  for (std::size_t t = 0; t < coords_.size(); ++t) coords_[t] *= o.coords_[t];
  return *this;
}

CStarElement& CStarElement::operator*=(Scalar s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

CStarPoly::CStarPoly(std::vector<CStarElement> roots)
    : CStarPoly(roots, CStarElement::identity(roots.empty() ? 1 : roots.front().dim())) {}

CStarPoly::CStarPoly(std::vector<CStarElement> roots, CStarElement lead) : roots_(std::move(roots)), lead_(std::move(lead)) {
  if (roots_.size() < 2) throw DomainError("CStarPoly: degree must be at least 2");
  for (const auto& r : roots_) require_same_dim(r.dim(), lead_.dim(), "CStarPoly");
  for (const auto& c : lead_.coords()) {
    if (c == Scalar{}) throw DomainError("CStarPoly: leading coefficient must be invertible");
  }
}

std::vector<Scalar> CStarPoly::coordinate_roots(std::size_t t) const {
  std::vector<Scalar> out;
  out.reserve(roots_.size());
  for (const auto& r : roots_) out.push_back(r[t]);
  return out;
}

Poly CStarPoly::coordinate(std::size_t t) const {
  const auto roots = coordinate_roots(t);
  return from_roots(roots, lead_[t]);
}

CStarElement cstar_eval(const CStarPoly& P, const CStarElement& z) {
  require_same_dim(z.dim(), P.dim(), "cstar_eval");
  std::vector<Scalar> out(z.dim());
  for (std::size_t t = 0; t < z.dim(); ++t) out[t] = P.lead()[t] * eval_root_form(P.coordinate_roots(t), z[t]);
  return CStarElement(std::move(out));
}

CStarElement cstar_derivative_eval(const CStarPoly& P, const CStarElement& z) {
  require_same_dim(z.dim(), P.dim(), "cstar_derivative_eval");
  std::vector<Scalar> out(z.dim());
  for (std::size_t t = 0; t < z.dim(); ++t) out[t] = P.lead()[t] * derivative_root_form(P.coordinate_roots(t), z[t]);
  return CStarElement(std::move(out));
}

CriticalSet::CriticalSet(std::vector<RootSet> per_coordinate) : per_coordinate_(std::move(per_coordinate)) {
  product_size_ = per_coordinate_.empty() ? 0 : 1;
  for (const auto& rs : per_coordinate_) {
    const std::uint64_t m = rs.size();
    if (m == 0 || product_size_ > std::numeric_limits<std::uint64_t>::max() / m) {
      product_size_ = m == 0 ? 0 : std::numeric_limits<std::uint64_t>::max();
      if (m == 0) break;
    } else {
      product_size_ *= m;
    }
  }
}

CStarElement CriticalSet::element(const std::vector<std::size_t>& index) const {
  require_same_dim(index.size(), dim(), "CriticalSet::element");
  std::vector<Scalar> c(dim());
  for (std::size_t t = 0; t < dim(); ++t) c[t] = per_coordinate_[t].roots.at(index[t]);
  return CStarElement(std::move(c));
}

void CriticalSet::for_each(const std::function<bool(const std::vector<std::size_t>&)>& fn) const {
  if (product_size_ == 0) return;
  std::vector<std::size_t> idx(dim(), 0);
  while (true) {
    if (!fn(idx)) return;
    std::size_t t = 0;
    while (t < idx.size()) {
      if (++idx[t] < per_coordinate_[t].size()) break;
      idx[t] = 0;
      ++t;
    }
    if (t == idx.size()) return;
  }
}

CriticalSet enumerate_critical_set(const CStarPoly& P, const RootFindConfig& cfg, std::uint64_t cap) {
  std::vector<RootSet> per;
  per.reserve(P.dim());
  for (std::size_t t = 0; t < P.dim(); ++t) per.push_back(critical_points(P.coordinate(t), cfg));
  CriticalSet set(std::move(per));
  if (set.product_size() > cap) {
    throw CapacityError("critical set has " + std::to_string(set.product_size()) + " elements, above the cap of " +
                        std::to_string(cap) + "; lower the dimension k or the degree n");
  }
  return set;
}

CStarVerdict check_smale(const CStarPoly& P, const CStarElement& z, const CStarCheckConfig& cfg) {
  return check_smale(P, enumerate_critical_set(P, cfg.rootfind, cfg.cap), z, cfg);
}

CStarVerdict check_smale(const CStarPoly& P, const CriticalSet& crit, const CStarElement& z, const CStarCheckConfig& cfg) {
  return run_check(P, crit, z, cfg, false);
}

CStarVerdict check_strong_forms(const CStarPoly& P, const CStarElement& z, const CStarCheckConfig& cfg) {
  return check_strong_forms(P, enumerate_critical_set(P, cfg.rootfind, cfg.cap), z, cfg);
}

CStarVerdict check_strong_forms(const CStarPoly& P, const CriticalSet& crit, const CStarElement& z,
                                const CStarCheckConfig& cfg) {
  return run_check(P, crit, z, cfg, true);
}

double degree2_identity_residual(const CStarElement& a, const CStarElement& b, const CStarElement& z) {
  require_same_dim(a.dim(), b.dim(), "degree2_identity_residual");
  require_same_dim(a.dim(), z.dim(), "degree2_identity_residual");
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t t = 0; t < z.dim(); ++t) {
    const Scalar c = 0.5 * (a[t] + b[t]);
    const Scalar pz = (z[t] - a[t]) * (z[t] - b[t]);
    const Scalar pc = (c - a[t]) * (c - b[t]);
    const Scalar dz = 2.0 * z[t] - (a[t] + b[t]);
    const double lhs = std::norm(pz - pc);
    const double rhs = 0.25 * std::norm(z[t] - c) * std::norm(dz);
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, rhs);
  }
  return scale > 0.0 ? worst / scale : worst;
}

double degree2_higher_order(const CStarElement& a, const CStarElement& b, const CStarElement& z) {
  const CStarPoly P({a, b});
  const CStarElement c = 0.5 * (a + b);
  const CStarElement dz = cstar_derivative_eval(P, z);
  const double second = 2.0;  // ||P''|| = ||2 * 1||
  const double dnorm = dz.norm();
  if (!(dnorm > 0.0)) throw PreconditionError("degree2_higher_order: z is critical");
  return (second / 2.0) * (cstar_eval(P, z) - cstar_eval(P, c)).norm() / (dnorm * dnorm);
}

CStarDynamicsReport cstar_dynamics_check(const CStarPoly& P, const OrbitConfig& cfg, const CStarCheckConfig& check) {
  const std::size_t k = P.dim();
  const CStarElement zero = CStarElement::zero(k);
  if (cstar_eval(P, zero).norm() > 1e-10 || (cstar_derivative_eval(P, zero) - CStarElement::identity(k)).norm() > 1e-10) {
    throw PreconditionError("cstar_dynamics_check: need P(0) = 0 and P'(0) = 1");
  }
  const CriticalSet crit = enumerate_critical_set(P, check.rootfind, check.cap);

  // orbits per coordinate critical point, shared across the product
  std::vector<std::vector<OrbitResult>> coord_orbits(k);
  for (std::size_t t = 0; t < k; ++t) {
    const Poly coord = P.coordinate(t);
    std::vector<Scalar> c(coord.coeffs().begin(), coord.coeffs().end());
    c[0] = Scalar{};
    c[1] = Scalar{1.0};
    const Poly pt(std::move(c));
    for (const auto& w : crit.per_coordinate()[t].roots) coord_orbits[t].push_back(orbit_escalating(pt, w, cfg));
  }

  CStarDynamicsReport report;
  crit.for_each([&](const std::vector<std::size_t>& idx) {
    CStarOrbitEntry e;
    e.w = crit.element(idx);
    const double wn = e.w.norm();
    if (!(wn > check.coincidence_tol)) return true;
    e.ratio = cstar_eval(P, e.w).norm() / wn;
    e.converged = true;
    for (std::size_t t = 0; t < k; ++t) {
      e.coordinates.push_back(coord_orbits[t][idx[t]]);
      e.converged = e.converged && e.coordinates.back().verdict == OrbitVerdict::kConvergedToZero;
    }
    if (e.ratio <= 1.0 + 1e-9 && e.converged) report.holds = true;
    report.entries.push_back(std::move(e));
    return true;
  });
  return report;
}

Certificate reverify(const CStarPoly& P, const CStarElement& z, const CStarVerdict& verdict, const CStarCheckConfig& cfg) {
  const int n = P.degree();
  const std::size_t k = P.dim();
  const CriticalSet crit = enumerate_critical_set(P, cfg.rootfind, cfg.cap);

  std::vector<std::vector<long double>> gap(k);
  std::vector<std::vector<long double>> dist(k);
  long double deriv_norm = 0.0L;
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<LScalar> roots;
    for (const auto& r : P.coordinate_roots(t)) roots.push_back(widen(r));
    const LScalar lead = widen(P.lead()[t]);
    const LScalar zt = widen(z[t]);
    const LScalar pz = eval_root_form_ld(roots, lead, zt);
    deriv_norm = std::max(deriv_norm, std::abs(derivative_root_form_ld(roots, lead, zt)));
    for (const auto& w0 : crit.per_coordinate()[t].roots) {
      LScalar w = widen(w0);
      long double res = std::abs(derivative_root_form_ld(roots, lead, w));
      for (int s = 0; s < 8 && res > 0.0L; ++s) {
        const LScalar d2 = second_derivative_root_form_ld(roots, lead, w);
        if (d2 == LScalar{}) break;
        const LScalar cand = w - derivative_root_form_ld(roots, lead, w) / d2;
        const long double cres = std::abs(derivative_root_form_ld(roots, lead, cand));
        if (!(cres < res)) break;
        w = cand;
        res = cres;
      }
      gap[t].push_back(std::abs(pz - eval_root_form_ld(roots, lead, w)));
      dist[t].push_back(std::abs(zt - w));
    }
  }

  long double lo = std::numeric_limits<long double>::infinity();
  long double hi = 0.0L;
  crit.for_each([&](const std::vector<std::size_t>& idx) {
    long double num = 0.0L;
    long double den = 0.0L;
    for (std::size_t t = 0; t < k; ++t) {
      num = std::max(num, gap[t][idx[t]]);
      den = std::max(den, dist[t][idx[t]]);
    }
    const long double ratio = num / (den * deriv_norm);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    return true;
  });

  Certificate cert{P, z, verdict, {}, static_cast<double>(lo), static_cast<double>(hi), false};
  const long double slack = 2.0L * cfg.verdict_tol;
  const long double sharp = static_cast<long double>(n - 1) / n;
  if (!verdict.weak_pass) {
    cert.violated.emplace_back("weak_smale");
    cert.confirmed = cert.confirmed || lo > 1.0L + slack;
  }
  if (!verdict.sharp_pass) {
    cert.violated.emplace_back("sharp_smale");
    cert.confirmed = cert.confirmed || lo > sharp + slack;
  }
  if (!verdict.dual_pass) {
    cert.violated.emplace_back("dual");
    cert.confirmed = cert.confirmed || hi < 1.0L / n - slack;
  }
  return cert;
}

}  // namespace smalelab
