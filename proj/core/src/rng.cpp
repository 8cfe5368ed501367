#include "smalelab/rng.hpp"

#include <cmath>
#include <numbers>

namespace smalelab {

std::complex<double> CounterRng::in_disk(double radius) noexcept {
  const double r = radius * std::sqrt(uniform());
  const double theta = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, theta);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  CounterRng rng(seed, 0xa5a5a5a5ULL + tag);
  return rng.next_u64();
}

}  // namespace smalelab
