#ifndef SMALELAB_DYNAMICS_HPP_
#define SMALELAB_DYNAMICS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "smalelab/poly.hpp"
#include "smalelab/rootfind.hpp"

namespace smalelab {

struct OrbitConfig {
  double zero_tol = 1e-12;
  double escape_radius = 1e6;
  int max_iters = 10000;
  double cycle_tol = 1e-10;
  /// Accept capture by the parabolic basin of 0 as convergence (see orbit()).
  bool parabolic_capture = true;
  int capture_window = 10;
};

enum class OrbitVerdict { kConvergedToZero, kEscaped, kMaxIters, kCycled };

std::string_view to_string(OrbitVerdict v) noexcept;

struct OrbitResult {
  Scalar w0;
  double ratio = 0.0;       ///< |P(w0) / w0|, or 0 when w0 = 0
  int trajectory_len = 0;   ///< iterations performed
  OrbitVerdict verdict = OrbitVerdict::kMaxIters;
  double final_modulus = 0.0;
  bool parabolic_capture = false;  ///< converged via the petal test rather than zero_tol
  int cycle_period = 0;
  std::vector<double> tail_moduli;  ///< |z_m| for the last capture_window steps
};

/// Local data of a normalized P at its parabolic fixed point 0:
/// P(z) = z + a z^(q+1) + b z^(q+2) + ..., with approximate Fatou coordinate
/// phi(z) = -1 / (q a z^q) (+ c log z when q = 1, c = 1 - b / a^2), which
/// satisfies phi(P(z)) = phi(z) + 1 + O(z^2) near 0.
struct ParabolicGerm {
  int q = 0;
  Scalar a;
  Scalar log_coeff;
  double radius = 0.0;  ///< guard radius for the petal test

  /// Leading term of phi.
  Scalar fatou(Scalar z) const noexcept;
  /// phi(z1) - phi(z0), with the logarithm taken as log(z1 / z0).
  Scalar fatou_increment(Scalar z0, Scalar z1) const noexcept;
};

/// Throws PreconditionError when P is not normalized within 1e-10.
ParabolicGerm parabolic_germ(const Poly& p);

/// Iterates z <- P(z) from w0.
///
/// Stops as converged when |z| <= zero_tol, or, with parabolic_capture, when
/// the last capture_window iterates all lie inside the germ radius, advance
/// their Fatou coordinate by 1 within 0.1 per step, sit in the sector
/// |arg| <= 60 degrees of that coordinate, and decrease strictly in modulus.
/// 0 is parabolic for every normalized P, so orbits reach it only at rate
/// m^(-1/q) and zero_tol alone is out of reach within any practical
/// iteration budget. Escape at |z| >= escape_radius; approximate cycles away
/// from 0 are found with Brent's algorithm.
OrbitResult orbit(const Poly& p, Scalar w0, const OrbitConfig& cfg = {});

struct MlpResult {
  bool holds = false;
  OrbitResult witness;               ///< first succeeding critical point, else the first one
  std::vector<OrbitResult> orbits;   ///< one per critical point in RootSet order
};

/// Iteration budget cap for mlp_check: an orbit that hits max_iters is rerun
/// with ten times the budget until this cap.
inline constexpr int kMlpIterationCap = 10'000'000;

/// orbit() rerun with ten times the budget while it ends at max_iters, up to
/// `iteration_cap` iterations.
OrbitResult orbit_escalating(const Poly& p, Scalar w0, const OrbitConfig& cfg = {},
                             int iteration_cap = kMlpIterationCap);

/// True iff some critical point w has |P(w)/w| <= 1 + 1e-9 and its orbit
/// converges to 0. Critical points are tried in RootSet order and the search
/// stops at the first success, so `orbits` may be shorter than the critical
/// set.
MlpResult mlp_check(const Poly& p, const OrbitConfig& cfg = {}, const RootFindConfig& rf = {},
                    int iteration_cap = kMlpIterationCap);

/// A failed check where some candidate (ratio <= 1) ran out of budget rather
/// than escaping or cycling.
bool inconclusive(const MlpResult& r) noexcept;

/// z + a_2 z^2 + ... + a_n z^n with a_j uniform in the disk of radius
/// `radius`, drawn from stream `trial` of derive_seed(seed, n).
Poly random_normalized_poly(int n, std::uint64_t seed, std::uint64_t trial, double radius = 2.0);

struct MlpSweepFailure {
  std::uint64_t trial = 0;
  Poly poly = Poly::constant(Scalar{});
  MlpResult result;
};

struct MlpSweep {
  int degree = 0;
  int trials = 0;
  int holds = 0;
  int inconclusive = 0;
  std::vector<MlpSweepFailure> failures;  ///< by trial index
};

/// mlp_check on `trials` random_normalized_poly instances.
MlpSweep mlp_sweep(int n, int trials, std::uint64_t seed, const OrbitConfig& cfg = {},
                   const RootFindConfig& rf = {}, int jobs = 1, int iteration_cap = kMlpIterationCap);

}  // namespace smalelab

#endif  // SMALELAB_DYNAMICS_HPP_
