#include "smalelab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include "smalelab/errors.hpp"
#include "smalelab/parallel.hpp"
#include "smalelab/rng.hpp"

namespace smalelab {

std::string_view to_string(OrbitVerdict v) noexcept {
  switch (v) {
    case OrbitVerdict::kConvergedToZero: return "converged_to_zero";
    case OrbitVerdict::kEscaped: return "escaped";
    case OrbitVerdict::kMaxIters: return "max_iters";
    case OrbitVerdict::kCycled: return "cycled";
  }
  return "unknown";
}

Scalar ParabolicGerm::fatou(Scalar z) const noexcept {
  return -1.0 / (static_cast<double>(q) * a * std::pow(z, q));
}

Scalar ParabolicGerm::fatou_increment(Scalar z0, Scalar z1) const noexcept {
  Scalar inc = fatou(z1) - fatou(z0);
  if (q == 1) inc += log_coeff * std::log(z1 / z0);
  return inc;
}

ParabolicGerm parabolic_germ(const Poly& p) {
  if (p.degree() < 2 || !is_normalized(p, 1e-10)) {
    throw PreconditionError("orbit: polynomial must be normalized (P(0) = 0, P'(0) = 1)");
  }
  const double tiny = 1e-14 * p.coeff_scale();
  int j = 2;
  while (j <= p.degree() && std::abs(p.coeff(j)) <= tiny) ++j;
  ParabolicGerm g;
  g.q = j - 1;
  g.a = p.coeff(j);
  // Guard radius: every neglected term of phi(P(z)) - phi(z) - 1 stays below
  // 0.05 / (#terms). With the log correction the b z^(q+2) term enters only
  // at second order, as (b/a)^2 z^2.
  const int terms = std::max(1, p.degree() - j);
  const double share = 0.05 / terms;
  double r = std::pow(0.1 / std::abs(g.a), 1.0 / g.q);
  for (int i = j + 1; i <= p.degree(); ++i) {
    const double rel = std::abs(p.coeff(i) / g.a);
    if (rel == 0.0) continue;
    const int order = (g.q == 1 && i == j + 1) ? 2 : i - j;
    r = std::min(r, std::pow(share / std::pow(rel, order / static_cast<double>(i - j)), 1.0 / order));
  }
  if (g.q == 1) {
    const Scalar b = p.degree() >= 3 ? p.coeff(3) : Scalar{};
    g.log_coeff = 1.0 - b / (g.a * g.a);
  }
  g.radius = r;
  return g;
}

OrbitResult orbit(const Poly& p, Scalar w0, const OrbitConfig& cfg) {
  const ParabolicGerm germ = parabolic_germ(p);

  OrbitResult r;
  r.w0 = w0;
  r.ratio = std::abs(w0) > 0.0 ? std::abs(p(w0) / w0) : 0.0;

  const std::size_t window = static_cast<std::size_t>(std::max(cfg.capture_window, 1));
  std::deque<Scalar> recent{w0};

  // Brent cycle detection state
  Scalar tortoise = w0;
  int power = 1;
  int lam = 0;

  auto captured = [&]() {
    if (!cfg.parabolic_capture || recent.size() < window + 1) return false;
    for (std::size_t i = recent.size() - window - 1; i + 1 < recent.size(); ++i) {
      const Scalar z0 = recent[i];
      const Scalar z1 = recent[i + 1];
      if (!(std::abs(z0) <= germ.radius) || !(std::abs(z1) < std::abs(z0))) return false;
      const Scalar f0 = germ.fatou(z0);
      if (f0.real() < 0.5 * std::abs(f0)) return false;
      if (std::abs(germ.fatou_increment(z0, z1) - 1.0) > 0.1) return false;
    }
    return true;
  };

  Scalar z = w0;
  int m = 0;
  r.verdict = OrbitVerdict::kMaxIters;
  while (true) {
    const double mod = std::abs(z);
    if (mod <= cfg.zero_tol) {
      r.verdict = OrbitVerdict::kConvergedToZero;
      break;
    }
    if (!(mod < cfg.escape_radius)) {
      r.verdict = OrbitVerdict::kEscaped;
      break;
    }
    if (captured()) {
      r.verdict = OrbitVerdict::kConvergedToZero;
      r.parabolic_capture = true;
      break;
    }
    if (m >= cfg.max_iters) break;

    z = p(z);
    ++m;
    recent.push_back(z);
    if (recent.size() > window + 1) recent.pop_front();

    ++lam;
    if (std::abs(z) > germ.radius && std::abs(z - tortoise) <= cfg.cycle_tol * std::abs(z)) {
      r.verdict = OrbitVerdict::kCycled;
      r.cycle_period = lam;
      break;
    }
    if (lam == power) {
      tortoise = z;
      power *= 2;
      lam = 0;
    }
  }

  r.trajectory_len = m;
  r.final_modulus = std::abs(z);
  const std::size_t keep = std::min(recent.size(), window);
  for (std::size_t i = recent.size() - keep; i < recent.size(); ++i) r.tail_moduli.push_back(std::abs(recent[i]));
  return r;
}

OrbitResult orbit_escalating(const Poly& p, Scalar w0, const OrbitConfig& cfg, int iteration_cap) {
  OrbitConfig budget = cfg;
  OrbitResult o = orbit(p, w0, budget);
  while (o.verdict == OrbitVerdict::kMaxIters && budget.max_iters < iteration_cap) {
    budget.max_iters = static_cast<int>(std::min<long long>(10LL * budget.max_iters, iteration_cap));
    o = orbit(p, w0, budget);
  }
  return o;
}

MlpResult mlp_check(const Poly& p, const OrbitConfig& cfg, const RootFindConfig& rf, int iteration_cap) {
  parabolic_germ(p);
  const RootSet crit = critical_points(p, rf);
  MlpResult out;
  for (const auto& w : crit.roots) {
    // Only a candidate witness is worth a larger budget.
    const double ratio = std::abs(p(w) / w);
    OrbitResult o = ratio <= 1.0 + 1e-9 ? orbit_escalating(p, w, cfg, iteration_cap) : orbit(p, w, cfg);
    out.orbits.push_back(o);
    if (o.ratio <= 1.0 + 1e-9 && o.verdict == OrbitVerdict::kConvergedToZero) {
      out.holds = true;
      out.witness = o;
      return out;
    }
  }
  if (!out.orbits.empty()) out.witness = out.orbits.front();
  return out;
}

bool inconclusive(const MlpResult& r) noexcept {
  if (r.holds) return false;
  return std::any_of(r.orbits.begin(), r.orbits.end(), [](const OrbitResult& o) {
    return o.ratio <= 1.0 + 1e-9 && o.verdict == OrbitVerdict::kMaxIters;
  });
}

Poly random_normalized_poly(int n, std::uint64_t seed, std::uint64_t trial, double radius) {
  if (n < 2) throw DomainError("random_normalized_poly: degree must be >= 2");
  CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(n)), trial);
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1);
  c[1] = 1.0;
  for (int j = 2; j <= n; ++j) c[static_cast<std::size_t>(j)] = rng.in_disk(radius);
  return Poly(std::move(c));
}

MlpSweep mlp_sweep(int n, int trials, std::uint64_t seed, const OrbitConfig& cfg, const RootFindConfig& rf,
                   int jobs, int iteration_cap) {
  if (trials < 0) throw DomainError("mlp_sweep: trials must be >= 0");
  std::vector<std::optional<MlpSweepFailure>> slots(static_cast<std::size_t>(trials));
  parallel_for(slots.size(), jobs, [&](std::size_t t) {
    Poly p = random_normalized_poly(n, seed, t);
    MlpResult r = mlp_check(p, cfg, rf, iteration_cap);
    if (!r.holds) slots[t] = MlpSweepFailure{t, std::move(p), std::move(r)};
  });
  MlpSweep out;
  out.degree = n;
  out.trials = trials;
  for (auto& s : slots) {
    if (!s) {
      ++out.holds;
      continue;
    }
    out.inconclusive += inconclusive(s->result);
    out.failures.push_back(std::move(*s));
  }
  return out;
}

}  // namespace smalelab
