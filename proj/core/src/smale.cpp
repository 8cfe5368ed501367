#include "smalelab/smale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "smalelab/errors.hpp"
#include "smalelab/nelder_mead.hpp"
#include "smalelab/rng.hpp"

namespace smalelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_root_modulus(const Poly& p) {
  if (p.roots()) {
    double m = 0.0;
    for (const auto& r : *p.roots()) m = std::max(m, std::abs(r));
    return m;
  }
  try {
    const RootSet rs = find_roots(p);
    double m = 0.0;
    for (const auto& r : rs.roots) m = std::max(m, std::abs(r));
    return m;
  } catch (const ConvergenceError&) {
    return cauchy_bound(p);
  }
}

template <typename Better>
QuotientWitness extremal_witness(const CriticalContext& ctx, Scalar z, Better better) {
  if (ctx.degree() < 2) throw DomainError("quotient witness: degree must be at least 2");
  const Scalar dz = ctx.derivative_at(z);
  if (!ctx.is_admissible(z)) throw PreconditionError("z is a critical point");
  const auto& crit = ctx.critical_points();
  QuotientWitness best;
  bool have = false;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    if (!(std::abs(z - crit[i]) > kCoincidenceTol)) throw PreconditionError("z coincides with a critical point");
    const double q = ctx.quotient(i, z);
    if (!have || better(q, best.quotient)) {
      best = {crit[i], q, 0.0, i};
      have = true;
    }
  }
  best.ratio = best.quotient / std::abs(dz);
  return best;
}

template <typename Better>
QuotientWitness normalized_witness(const CriticalContext& ctx, Better better) {
  const Poly& p = ctx.poly();
  if (ctx.degree() < 2) throw DomainError("normalized quantity: degree must be at least 2");
  if (!is_normalized(p, kNormalizationTol)) {
    throw PreconditionError("polynomial is not normalized (need P(0) = 0 and P'(0) = 1)");
  }
  const auto& crit = ctx.critical_points();
  const auto& values = ctx.critical_values();
  QuotientWitness best;
  bool have = false;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double modulus = std::abs(crit[i]);
    if (!(modulus > kCoincidenceTol)) throw PreconditionError("critical point at the origin");
    const double q = std::abs(values[i]) / modulus;
    if (!have || better(q, best.quotient)) {
      best = {crit[i], q, q, i};
      have = true;
    }
  }
  return best;
}

// Samples then refines; `sign` = +1 maximises the s_at ratio, -1 minimises
// the ds_at ratio.
template <typename WitnessFn>
Estimate sampled_extremum(const CriticalContext& ctx, const SampleConfig& cfg, WitnessFn witness_at, double sign) {
  if (ctx.degree() < 2) throw DomainError("estimate: degree must be at least 2");
  const double radius = ctx.sampling_radius();
  int evals = 0;

  // objective to minimise
  auto objective = [&](Scalar z) {
    ++evals;
    if (!ctx.is_admissible(z)) return kInf;
    for (const auto& w : ctx.critical_points()) {
      if (!(std::abs(z - w) > kCoincidenceTol)) return kInf;
    }
    return -sign * witness_at(ctx, z).ratio;
  };

  struct Sample {
    Scalar z;
    double value;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(std::max(cfg.samples, 0)));
  for (int i = 0; i < cfg.samples; ++i) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const Scalar z = rng.in_disk(radius);
    samples.push_back({z, objective(z)});
  }
  // Degree-independent anchor point so the estimate is never empty.
  if (samples.empty() || std::none_of(samples.begin(), samples.end(), [](const Sample& s) { return std::isfinite(s.value); })) {
    for (int i = 0; i < 64; ++i) {
      const Scalar z = std::polar(radius * (0.5 + i / 128.0), 0.1 + i);
      samples.push_back({z, objective(z)});
    }
  }

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a].value < samples[b].value; });

  Scalar best_z = samples[order.front()].z;
  double best_value = samples[order.front()].value;

  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.refine_starts, 0)), order.size());
  const std::vector<double> step(2, 0.05 * radius);
  NelderMeadOptions opts;
  opts.max_evals = cfg.refine_max_evals;
  opts.x_tol = 1e-12 * radius;
  for (std::size_t s = 0; s < starts; ++s) {
    const Scalar z0 = samples[order[s]].z;
    if (!std::isfinite(samples[order[s]].value)) continue;
    const auto result = nelder_mead_minimize(
        [&](std::span<const double> x) { return objective({x[0], x[1]}); }, {z0.real(), z0.imag()}, step, opts);
    if (result.value < best_value) {
      best_value = result.value;
      best_z = {result.x[0], result.x[1]};
    }
  }
  if (!std::isfinite(best_value)) throw PreconditionError("estimate: no admissible sample point found");

  Estimate est;
  est.z = best_z;
  est.witness = witness_at(ctx, best_z);
  est.value = est.witness.ratio;
  est.evaluations = evals;
  return est;
}

}  // namespace

CriticalContext::CriticalContext(Poly p, const RootFindConfig& cfg)
    : CriticalContext(p, p.degree() >= 2 ? expand_multiplicities(smalelab::critical_points(p, cfg)) : std::vector<Scalar>{}) {}

CriticalContext::CriticalContext(Poly p, std::vector<Scalar> critical)
    : p_(std::move(p)), dp_(p_.degree() >= 1 ? smalelab::derivative(p_) : Poly::constant(Scalar{})), crit_(std::move(critical)) {
  if (p_.degree() < 2) throw DomainError("critical context: degree must be at least 2");
  crit_values_.reserve(crit_.size());
  local_.reserve(crit_.size());
  for (const auto& w : crit_) {
    const Poly shifted = taylor_shift(p_, w);
    std::vector<Scalar> b(shifted.coeffs().begin(), shifted.coeffs().end());
    b.resize(static_cast<std::size_t>(p_.degree()) + 1);
    b[1] = Scalar{};
    crit_values_.push_back(b[0]);
    local_.push_back(std::move(b));
  }
  critical_floor_ = kCriticalTol * dp_.coeff_scale();
  sampling_radius_ = 2.0 * (1.0 + max_root_modulus(p_));
}

Scalar CriticalContext::difference(std::size_t i, Scalar z) const noexcept {
  const auto& b = local_[i];
  const Scalar h = z - crit_[i];
  Scalar acc{};
  for (std::size_t j = b.size() - 1; j >= 2; --j) acc = acc * h + b[j];
  return acc * h * h;
}

double CriticalContext::quotient(std::size_t i, Scalar z) const noexcept {
  const auto& b = local_[i];
  const Scalar h = z - crit_[i];
  Scalar acc{};
  for (std::size_t j = b.size() - 1; j >= 2; --j) acc = acc * h + b[j];
  return std::abs(acc * h);
}

Scalar CriticalContext::derivative_at(Scalar z) const noexcept {
  std::size_t nearest = crit_.size();
  double best = std::abs(z);
  for (std::size_t i = 0; i < crit_.size(); ++i) {
    const double d = std::abs(z - crit_[i]);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  if (nearest == crit_.size()) return dp_(z);
  const auto& b = local_[nearest];
  const Scalar h = z - crit_[nearest];
  Scalar acc{};
  for (std::size_t j = b.size() - 1; j >= 2; --j) acc = acc * h + static_cast<double>(j) * b[j];
  return acc * h;
}

bool CriticalContext::is_admissible(Scalar z) const noexcept { return std::abs(derivative_at(z)) > critical_floor_; }

double smale_quotient(const Poly& p, Scalar z, Scalar w, double coincidence_tol) {
  const double dist = std::abs(z - w);
  if (!(dist > coincidence_tol)) throw PreconditionError("smale_quotient: z and w coincide");
  return std::abs(p(z) - p(w)) / dist;
}

QuotientWitness s_at(const CriticalContext& ctx, Scalar z) {
  return extremal_witness(ctx, z, [](double a, double b) { return a < b; });
}
QuotientWitness s_at(const Poly& p, Scalar z) { return s_at(CriticalContext(p), z); }

QuotientWitness ds_at(const CriticalContext& ctx, Scalar z) {
  return extremal_witness(ctx, z, [](double a, double b) { return a > b; });
}
QuotientWitness ds_at(const Poly& p, Scalar z) { return ds_at(CriticalContext(p), z); }

QuotientWitness nearest_value_witness(const CriticalContext& ctx, Scalar z) {
  if (ctx.degree() < 2) throw DomainError("quotient witness: degree must be at least 2");
  if (!ctx.is_admissible(z)) throw PreconditionError("z is a critical point");
  const auto& crit = ctx.critical_points();
  std::size_t best = 0;
  double best_gap = std::abs(ctx.difference(0, z));
  for (std::size_t i = 1; i < crit.size(); ++i) {
    const double gap = std::abs(ctx.difference(i, z));
    if (gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  if (!(std::abs(z - crit[best]) > kCoincidenceTol)) throw PreconditionError("z coincides with a critical point");
  const double q = ctx.quotient(best, z);
  return {crit[best], q, q / std::abs(ctx.derivative_at(z)), best};
}
QuotientWitness nearest_value_witness(const Poly& p, Scalar z) {
  return nearest_value_witness(CriticalContext(p), z);
}

QuotientWitness s0(const CriticalContext& ctx) {
  return normalized_witness(ctx, [](double a, double b) { return a < b; });
}
QuotientWitness s0(const Poly& p) { return s0(CriticalContext(p)); }

QuotientWitness ds0(const CriticalContext& ctx) {
  return normalized_witness(ctx, [](double a, double b) { return a > b; });
}
QuotientWitness ds0(const Poly& p) { return ds0(CriticalContext(p)); }

Estimate estimate_S(const CriticalContext& ctx, const SampleConfig& cfg) {
  return sampled_extremum(ctx, cfg, [](const CriticalContext& c, Scalar z) { return s_at(c, z); }, 1.0);
}

Estimate estimate_DS(const CriticalContext& ctx, const SampleConfig& cfg) {
  return sampled_extremum(ctx, cfg, [](const CriticalContext& c, Scalar z) { return ds_at(c, z); }, -1.0);
}

double higher_order_quantity(const Poly& p, Scalar z, Scalar w, int k) {
  const int n = p.degree();
  if (k < 2 || k > n) throw DomainError("higher_order_quantity: need 2 <= k <= degree");
  const Poly dp = derivative(p);
  const Scalar dz = dp(z);
  if (!(std::abs(dz) > kCriticalTol * dp.coeff_scale())) throw PreconditionError("higher_order_quantity: z is critical");
  if (std::abs(dp(w)) > 1e-8 * std::max(dp.abs_eval(std::abs(w)), dp.coeff_scale())) {
    throw PreconditionError("higher_order_quantity: w is not a critical point");
  }
  const Scalar dk = kth_derivative(p, k)(z);
  const double factorial = std::tgamma(k + 1.0);
  const double diff = std::abs(p(z) - p(w));
  return std::abs(dk) / factorial * std::pow(diff, k - 1) / std::pow(std::abs(dz), k);
}

double higher_order_quantity(const CriticalContext& ctx, Scalar z, std::size_t i, int k) {
  if (k < 2 || k > ctx.degree()) throw DomainError("higher_order_quantity: need 2 <= k <= degree");
  if (i >= ctx.critical_points().size()) throw DomainError("higher_order_quantity: no such critical point");
  if (!ctx.is_admissible(z)) throw PreconditionError("higher_order_quantity: z is critical");
  const Scalar dk = kth_derivative(ctx.poly(), k)(z);
  const double factorial = std::tgamma(k + 1.0);
  const double diff = std::abs(ctx.difference(i, z));
  return std::abs(dk) / factorial * std::pow(diff, k - 1) / std::pow(std::abs(ctx.derivative_at(z)), k);
}

double smale_ceiling() { return 4.0; }

double beardon_minda_ng_bound(int n) { return std::pow(4.0, static_cast<double>(n - 2) / (n - 1)); }

double fujikawa_sugawa_bound(int n) {
  return 4.0 * (1.0 + (n - 2) * std::pow(4.0, -1.0 / (n - 1))) / (n + 1);
}

double conte_fujikawa_lakic_bound(int n) { return 4.0 * (n - 1) / (n + 1); }

double ng_zhang_floor(int n) { return std::pow(4.0, -n); }

double dubinin_tan_floor(int n) { return std::tan(std::numbers::pi / (4.0 * n)) / n; }

double dubinin_sugawa_floor(int n) { return 1.0 / (n * std::pow(4.0, n)); }

BoundCheck make_check(std::string name, double observed, Relation rel, double bound, double tol) {
  BoundCheck c{std::move(name), bound, observed, rel, false};
  switch (rel) {
    case Relation::kLessEq: c.pass = observed <= bound + tol; break;
    case Relation::kGreaterEq: c.pass = observed >= bound - tol; break;
    case Relation::kGreater: c.pass = observed > bound - tol; break;
  }
  return c;
}

bool ScalarReport::all_pass() const noexcept {
  return std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.pass; });
}

ScalarReport bound_report(const CriticalContext& ctx, const SampleConfig& cfg) {
  const int n = ctx.degree();
  if (n < 2) throw DomainError("bound_report: degree must be at least 2");
  ScalarReport r;
  r.degree = n;
  r.s_estimate = estimate_S(ctx, cfg);
  r.ds_estimate = estimate_DS(ctx, cfg);
  r.witnesses = {r.s_estimate.witness, r.ds_estimate.witness};

  const double s_est = r.s_estimate.value;
  const double ds_est = r.ds_estimate.value;
  auto& checks = r.bound_checks;
  checks.push_back(make_check("smale_theorem", s_est, Relation::kLessEq, smale_ceiling()));
  checks.push_back(make_check("beardon_minda_ng", s_est, Relation::kLessEq, beardon_minda_ng_bound(n)));
  checks.push_back(make_check("fujikawa_sugawa", s_est, Relation::kLessEq, fujikawa_sugawa_bound(n)));
  checks.push_back(make_check("conte_fujikawa_lakic", s_est, Relation::kLessEq, conte_fujikawa_lakic_bound(n)));
  checks.push_back(make_check("dubinin_sugawa_theorem", ds_est, Relation::kGreaterEq, dubinin_sugawa_floor(n)));
  checks.push_back(make_check("dubinin_tan", ds_est, Relation::kGreaterEq, dubinin_tan_floor(n)));

  r.normalized = is_normalized(ctx.poly(), kNormalizationTol);
  if (r.normalized) {
    r.s0 = s0(ctx);
    r.ds0 = ds0(ctx);
    r.witnesses.push_back(*r.s0);
    r.witnesses.push_back(*r.ds0);
    const double v = r.s0->quotient;
    checks.push_back(make_check("beardon_minda_ng_s0", v, Relation::kLessEq, beardon_minda_ng_bound(n)));
    checks.push_back(make_check("fujikawa_sugawa_s0", v, Relation::kLessEq, fujikawa_sugawa_bound(n)));
    checks.push_back(make_check("conte_fujikawa_lakic_s0", v, Relation::kLessEq, conte_fujikawa_lakic_bound(n)));
    checks.push_back(make_check("ng_zhang_ds0", r.ds0->quotient, Relation::kGreater, ng_zhang_floor(n), 0.0));
    checks.push_back(make_check("dubinin_tan_ds0", r.ds0->quotient, Relation::kGreaterEq, dubinin_tan_floor(n)));
  }
  return r;
}

ScalarReport bound_report(const Poly& p, const SampleConfig& cfg) { return bound_report(CriticalContext(p), cfg); }

}  // namespace smalelab
