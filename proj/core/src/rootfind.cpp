#include "smalelab/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "smalelab/errors.hpp"

namespace smalelab {

namespace {

constexpr double kPhaseOffset = 0.37;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rounding-error level of Horner at z: a residual at or below this is noise.
double horner_noise(const Poly& p, Scalar z) {
  return 4.0 * (p.degree() + 1) * kEps * p.abs_eval(std::abs(z));
}

}  // namespace

int RootSet::total_multiplicity() const noexcept {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

double cauchy_bound(const Poly& p) {
  const Scalar lead = p.leading();
  double m = 0.0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p.coeff(i) / lead));
  return 1.0 + m;
}

RootSet find_roots(const Poly& p, const RootFindConfig& cfg) {
  const int n = p.degree();
  if (n < 1) throw DomainError("find_roots: degree must be at least 1");
  if (!(std::abs(p.leading()) > 1e-30)) throw DomainError("find_roots: leading coefficient vanishes");

  const double radius = cauchy_bound(p);
  std::vector<Scalar> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    z[static_cast<std::size_t>(j)] = std::polar(radius, 2.0 * std::numbers::pi * j / n + kPhaseOffset);
  }
  if (n == 1) z[0] = -p.coeff(0) / p.coeff(1);

  std::vector<bool> frozen(static_cast<std::size_t>(n), n == 1);
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    bool all_frozen = true;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (frozen[j]) continue;
      const auto [value, deriv] = p.eval_with_derivative(z[j]);
      if (!is_finite(value)) {
        all_frozen = false;
        break;
      }
      if (std::abs(value) <= horner_noise(p, z[j])) {
        frozen[j] = true;
        continue;
      }
      all_frozen = false;
      Scalar repulsion{};
      for (std::size_t i = 0; i < z.size(); ++i) {
        if (i != j) repulsion += 1.0 / (z[j] - z[i]);
      }
      const Scalar newton = value / deriv;
      Scalar step = newton / (1.0 - newton * repulsion);
      if (!is_finite(step)) step = newton;
      if (!is_finite(step)) step = Scalar{radius * 1e-3, 0.0};
      z[j] -= step;
      if (std::abs(step) <= cfg.step_tol * std::max(std::abs(z[j]), kEps * radius)) frozen[j] = true;
    }
    if (all_frozen) break;
  }

  std::vector<double> residuals(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) residuals[j] = std::abs(p(z[j]));
  if (!std::all_of(residuals.begin(), residuals.end(), [](double r) { return std::isfinite(r); })) {
    throw ConvergenceError("find_roots: polynomial overflows on the Cauchy circle", z, residuals);
  }
  if (!std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; })) {
    throw ConvergenceError("find_roots: Aberth iteration did not converge within " +
                               std::to_string(cfg.max_iters) + " sweeps",
                           z, residuals);
  }

  // Newton polish, keeping a step only if it lowers the residual.
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (int s = 0; s < cfg.polish_steps; ++s) {
      const auto [value, deriv] = p.eval_with_derivative(z[j]);
      if (deriv == Scalar{} || std::abs(value) == 0.0) break;
      const Scalar candidate = z[j] - value / deriv;
      const double r = std::abs(p(candidate));
      if (!(r < residuals[j])) break;
      z[j] = candidate;
      residuals[j] = r;
    }
  }

  // Cluster into multiplicities, preserving first-seen order.
  const double merge = cfg.cluster_tol * radius;
  RootSet out;
  std::vector<bool> taken(z.size(), false);
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (taken[j]) continue;
    Scalar sum = z[j];
    int count = 1;
    taken[j] = true;
    for (std::size_t i = j + 1; i < z.size(); ++i) {
      if (!taken[i] && std::abs(z[i] - z[j]) <= merge) {
        taken[i] = true;
        sum += z[i];
        ++count;
      }
    }
    const Scalar centre = count == 1 ? z[j] : sum / static_cast<double>(count);
    out.roots.push_back(centre);
    out.multiplicities.push_back(count);
    out.residuals.push_back(std::abs(p(centre)));
  }
  return out;
}

RootSet critical_points(const Poly& p, const RootFindConfig& cfg) {
  if (p.degree() < 2) throw DomainError("critical_points: degree must be at least 2");
  return find_roots(derivative(p), cfg);
}

std::vector<Scalar> expand_multiplicities(const RootSet& rs) {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(rs.multiplicities[i]), rs.roots[i]);
  }
  return out;
}

}  // namespace smalelab
