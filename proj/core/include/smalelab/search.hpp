#ifndef SMALELAB_SEARCH_HPP_
#define SMALELAB_SEARCH_HPP_

#include <cstdint>
#include <vector>

#include "smalelab/cstar.hpp"
#include "smalelab/poly.hpp"

namespace smalelab {

struct SearchConfig {
  int restarts = 64;
  std::uint64_t seed = 42;
  int max_evals = 6000;       ///< per restart
  int simplex_rounds = 4;     ///< simplex re-inflations per restart
  double min_modulus = 1e-2;  ///< critical points are kept in [min_modulus, max_modulus]
  double max_modulus = 1e2;
  double collision_tol = 1e-6;
  int jobs = 1;
};

/// Normalized polynomial with the given critical points:
/// the antiderivative of prod (1 - z / c_i) vanishing at 0.
Poly normalized_from_critical_points(std::span<const Scalar> critical);

/// Decodes 2(n-1) search parameters (log modulus, argument) pairs.
std::vector<Scalar> critical_points_from_params(std::span<const double> params);

struct RestartRow {
  int restart = 0;
  double objective = 0.0;     ///< this restart's best
  double best_so_far = 0.0;   ///< running best across restarts 0..restart
};

struct SearchState {
  std::vector<double> params;
  double objective = 0.0;
  Poly best_poly = Poly::constant(Scalar{});
  int restarts_done = 0;
  std::vector<RestartRow> table;
};

/// Multi-start simplex maximisation of s0 over normalized degree-n
/// polynomials, parametrised by their critical points. Throws DomainError
/// unless 2 <= n <= 12.
SearchState search_extremal_s0(int n, const SearchConfig& cfg = {});

/// As search_extremal_s0, minimising ds0.
SearchState search_extremal_ds0(int n, const SearchConfig& cfg = {});

struct HuntConfig {
  std::uint64_t seed = 42;
  bool strong = false;
  int jobs = 1;
  double root_radius = 2.0;
  double z_margin = 1e-3;  ///< minimum distance of each z_t from the coordinate critical points
  CStarCheckConfig check;
};

/// Aggregates over all trials of one (n, k) cell.
struct HuntSummary {
  int degree = 0;
  int dim = 0;
  int trials = 0;
  double max_min_ratio = 0.0;   ///< worst case for the Smale forms
  double min_max_ratio = 0.0;   ///< worst case for the dual form
  int weak_failures = 0;        ///< first-pass flags, before re-verification
  int sharp_failures = 0;
  int dual_failures = 0;
  int strong_weak_failures = 0;
  int strong_smale_failures = 0;
  int strong_dual_failures = 0;
  int strong_implies_sharp_violations = 0;  ///< must stay 0: strong form implies the norm form
  int unconfirmed = 0;          ///< flagged trials that did not survive re-verification
  std::vector<Certificate> certificates;  ///< confirmed candidate counterexamples, by trial index
};

/// A seeded random CStarPoly (monic, root coordinates in the disk of radius
/// `root_radius`) and an admissible z for trial `trial`.
std::pair<CStarPoly, CStarElement> random_cstar_trial(int n, int k, std::uint64_t seed, std::uint64_t trial,
                                                      const HuntConfig& cfg, CriticalSet* crit_out = nullptr);

/// Runs check_smale (and check_strong_forms when cfg.strong) on `trials`
/// random instances. Throws CapacityError when (n-1)^k exceeds the cap.
HuntSummary hunt_cstar(int n, int k, int trials, const HuntConfig& cfg = {});

}  // namespace smalelab

#endif  // SMALELAB_SEARCH_HPP_
