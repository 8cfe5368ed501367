#ifndef SMALELAB_TESTS_SUPPORT_HPP_
#define SMALELAB_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <complex>
#include <limits>
#include <vector>

#include "smalelab/poly.hpp"
#include "smalelab/rng.hpp"

namespace smalelab::test {

inline double dist(Scalar a, Scalar b) { return std::abs(a - b); }

inline double max_coeff_diff(const Poly& p, const std::vector<Scalar>& expected) {
  if (static_cast<std::size_t>(p.degree() + 1) != expected.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) d = std::max(d, dist(p.coeffs()[i], expected[i]));
  return d;
}

// Coefficients of prod (z - r_i) from elementary symmetric sums over every
// subset of the roots.
inline std::vector<Scalar> subset_expansion(const std::vector<Scalar>& roots) {
  const std::size_t n = roots.size();
  std::vector<Scalar> e(n + 1);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Scalar prod{1.0};
    std::size_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        prod *= roots[i];
        ++bits;
      }
    }
    e[bits] += prod;
  }
  std::vector<Scalar> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) c[n - j] = (j % 2 ? -1.0 : 1.0) * e[j];
  return c;
}

// Largest distance in a greedy nearest pairing of two equal-size multisets.
inline double multiset_distance(std::vector<Scalar> a, std::vector<Scalar> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Scalar u, Scalar v) { return dist(u, x) < dist(v, x); });
    worst = std::max(worst, dist(*it, x));
    b.erase(it);
  }
  return worst;
}

// Roots in the disk of radius `radius` with pairwise separation >= sep.
inline std::vector<Scalar> separated_roots(CounterRng& rng, int n, double radius, double sep) {
  std::vector<Scalar> roots;
  while (static_cast<int>(roots.size()) < n) {
    const Scalar z = rng.in_disk(radius);
    if (std::all_of(roots.begin(), roots.end(), [&](Scalar r) { return dist(r, z) >= sep; })) roots.push_back(z);
  }
  return roots;
}

}  // namespace smalelab::test

#endif  // SMALELAB_TESTS_SUPPORT_HPP_
