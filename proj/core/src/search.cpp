#include "smalelab/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "smalelab/errors.hpp"
#include "smalelab/nelder_mead.hpp"
#include "smalelab/parallel.hpp"
#include "smalelab/rng.hpp"

namespace smalelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Goal { kMaxS0, kMinDs0 };

// Objective to minimise; +inf outside the box or at collisions.
double search_objective(std::span<const double> params, Goal goal, const SearchConfig& cfg) {
  const double lo = std::log(cfg.min_modulus);
  const double hi = std::log(cfg.max_modulus);
  for (std::size_t i = 0; i < params.size(); i += 2) {
    if (params[i] < lo || params[i] > hi) return kInf;
  }
  const auto crit = critical_points_from_params(params);
  for (std::size_t i = 0; i < crit.size(); ++i) {
    for (std::size_t j = i + 1; j < crit.size(); ++j) {
      if (std::abs(crit[i] - crit[j]) < cfg.collision_tol) return kInf;
    }
  }
  const Poly p = normalized_from_critical_points(crit);
  double best = goal == Goal::kMaxS0 ? kInf : 0.0;
  for (const auto& c : crit) {
    const double q = std::abs(p(c) / c);
    best = goal == Goal::kMaxS0 ? std::min(best, q) : std::max(best, q);
  }
  return goal == Goal::kMaxS0 ? -best : best;
}

SearchState run_search(int n, const SearchConfig& cfg, Goal goal) {
  if (n < 2 || n > 12) throw DomainError("search: degree must be in [2, 12]");
  if (cfg.restarts < 1) throw DomainError("search: need at least one restart");
  const std::size_t dim = 2 * static_cast<std::size_t>(n - 1);

  struct Outcome {
    std::vector<double> x;
    double value = kInf;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  parallel_for(outcomes.size(), cfg.jobs, [&](std::size_t r) {
    CounterRng rng(cfg.seed, r);
    std::vector<double> x0(dim);
    for (std::size_t i = 0; i < dim; i += 2) {
      x0[i] = rng.uniform(-1.0, 1.0);
      x0[i + 1] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const std::vector<double> step(dim, 0.3);
    NelderMeadOptions opts;
    opts.max_evals = cfg.max_evals;
    opts.restarts = cfg.simplex_rounds;
    opts.f_tol = 1e-15;
    opts.x_tol = 1e-12;
    auto res = nelder_mead_minimize([&](std::span<const double> x) { return search_objective(x, goal, cfg); },
                                    std::move(x0), step, opts);
    outcomes[r] = {std::move(res.x), res.value};
  });

  SearchState state;
  double best = kInf;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].value < best) {
      best = outcomes[r].value;
      state.params = outcomes[r].x;
    }
    const double sign = goal == Goal::kMaxS0 ? -1.0 : 1.0;
    state.table.push_back({static_cast<int>(r), sign * outcomes[r].value, sign * best});
  }
  if (!std::isfinite(best)) throw DomainError("search: no feasible point found");
  state.restarts_done = cfg.restarts;
  state.objective = goal == Goal::kMaxS0 ? -best : best;
  state.best_poly = normalized_from_critical_points(critical_points_from_params(state.params));
  return state;
}

}  // namespace

Poly normalized_from_critical_points(std::span<const Scalar> critical) {
  if (critical.empty()) throw DomainError("normalized_from_critical_points: need at least one critical point");
  Scalar lead{1.0};
  for (const auto& c : critical) {
    if (c == Scalar{}) throw DomainError("normalized_from_critical_points: critical point at the origin");
    lead *= -1.0 / c;
  }
  return antiderivative_zero_at_origin(from_roots(critical, lead));
}

std::vector<Scalar> critical_points_from_params(std::span<const double> params) {
  if (params.size() % 2 != 0) throw DomainError("search parameters come in (log modulus, argument) pairs");
  std::vector<Scalar> out;
  out.reserve(params.size() / 2);
  for (std::size_t i = 0; i < params.size(); i += 2) out.push_back(std::polar(std::exp(params[i]), params[i + 1]));
  return out;
}

SearchState search_extremal_s0(int n, const SearchConfig& cfg) { return run_search(n, cfg, Goal::kMaxS0); }

SearchState search_extremal_ds0(int n, const SearchConfig& cfg) { return run_search(n, cfg, Goal::kMinDs0); }

std::pair<CStarPoly, CStarElement> random_cstar_trial(int n, int k, std::uint64_t seed, std::uint64_t trial,
                                                      const HuntConfig& cfg, CriticalSet* crit_out) {
  if (n < 2 || k < 1) throw DomainError("random_cstar_trial: need n >= 2 and k >= 1");
  CounterRng rng(derive_seed(seed, (static_cast<std::uint64_t>(n) << 16) | static_cast<std::uint64_t>(k)), trial);
  std::vector<CStarElement> roots;
  double max_mod = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> c(static_cast<std::size_t>(k));
    for (auto& x : c) {
      x = rng.in_disk(cfg.root_radius);
      max_mod = std::max(max_mod, std::abs(x));
    }
    roots.emplace_back(std::move(c));
  }
  CStarPoly P(std::move(roots));
  CriticalSet crit = enumerate_critical_set(P, cfg.check.rootfind, cfg.check.cap);

  const double radius = 2.0 * (1.0 + max_mod);
  std::vector<Scalar> z(static_cast<std::size_t>(k));
  for (std::size_t t = 0; t < z.size(); ++t) {
    const auto& rs = crit.per_coordinate()[t];
    while (true) {
      const Scalar cand = rng.in_disk(radius);
      const bool clear = std::all_of(rs.roots.begin(), rs.roots.end(),
                                     [&](Scalar w) { return std::abs(cand - w) >= cfg.z_margin; });
      if (clear) {
        z[t] = cand;
        break;
      }
    }
  }
  if (crit_out) *crit_out = std::move(crit);
  return {std::move(P), CStarElement(std::move(z))};
}

HuntSummary hunt_cstar(int n, int k, int trials, const HuntConfig& cfg) {
  if (n < 2 || k < 1 || trials < 0) throw DomainError("hunt_cstar: need n >= 2, k >= 1, trials >= 0");
  const double bound = std::pow(static_cast<double>(n - 1), k);
  if (bound > static_cast<double>(cfg.check.cap)) {
    throw CapacityError("hunt_cstar: (n-1)^k exceeds the critical-set cap; lower k or n");
  }

  struct TrialOutcome {
    std::optional<CStarVerdict> verdict;
    std::optional<Certificate> certificate;
    bool flagged = false;
  };
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(outcomes.size(), cfg.jobs, [&](std::size_t t) {
    CriticalSet crit;
    auto [P, z] = random_cstar_trial(n, k, cfg.seed, t, cfg, &crit);
    CStarVerdict v = cfg.strong ? check_strong_forms(P, crit, z, cfg.check) : check_smale(P, crit, z, cfg.check);
    auto& out = outcomes[t];
    out.flagged = !v.weak_pass || !v.sharp_pass || !v.dual_pass;
    if (out.flagged) {
      Certificate cert = reverify(P, z, v, cfg.check);
      if (cert.confirmed) out.certificate = std::move(cert);
    }
    out.verdict = std::move(v);
  });

  HuntSummary s;
  s.degree = n;
  s.dim = k;
  s.trials = trials;
  s.min_max_ratio = kInf;
  for (auto& o : outcomes) {
    const auto& v = *o.verdict;
    s.max_min_ratio = std::max(s.max_min_ratio, v.min_ratio);
    s.min_max_ratio = std::min(s.min_max_ratio, v.max_ratio);
    s.weak_failures += !v.weak_pass;
    s.sharp_failures += !v.sharp_pass;
    s.dual_failures += !v.dual_pass;
    if (v.strong_checked) {
      s.strong_weak_failures += !v.strong_weak_pass;
      s.strong_smale_failures += !v.strong_smale_pass;
      s.strong_dual_failures += !v.strong_dual_pass;
      s.strong_implies_sharp_violations += (v.strong_smale_pass && !v.sharp_pass);
    }
    if (o.certificate) {
      s.certificates.push_back(std::move(*o.certificate));
    } else if (o.flagged) {
      ++s.unconfirmed;
    }
  }
  if (trials == 0) s.min_max_ratio = 0.0;
  return s;
}

}  // namespace smalelab
