#ifndef SMALELAB_ROOTFIND_HPP_
#define SMALELAB_ROOTFIND_HPP_

#include <vector>

#include "smalelab/poly.hpp"

namespace smalelab {

struct RootFindConfig {
  double step_tol = 1e-14;   ///< relative Aberth step at which a root is frozen
  int max_iters = 200;       ///< Aberth sweeps
  double cluster_tol = 1e-7; ///< merge distance, relative to the Cauchy bound
  int polish_steps = 5;      ///< Newton steps per root after the sweeps
};

/// Distinct roots with multiplicities; residuals are |p(r)| after polishing.
struct RootSet {
  std::vector<Scalar> roots;
  std::vector<int> multiplicities;
  std::vector<double> residuals;

  std::size_t size() const noexcept { return roots.size(); }
  int total_multiplicity() const noexcept;
};

/// 1 + max |a_i / a_n|; every root lies in the disk of this radius.
double cauchy_bound(const Poly& p);

/// All roots of p by Aberth-Ehrlich simultaneous iteration.
///
/// Initial guesses sit on the Cauchy circle at equal angles with a fixed
/// phase offset of 0.37 rad. A root stops moving once its relative step
/// drops below `cfg.step_tol` or its residual is below the rounding-error
/// level of Horner's scheme at that point; the latter is what lets multiple
/// roots (which converge only linearly) terminate. Throws ConvergenceError
/// if some root is still moving after `cfg.max_iters` sweeps, and
/// DomainError for degree 0 or a vanishing leading coefficient.
RootSet find_roots(const Poly& p, const RootFindConfig& cfg = {});

/// Roots of p' (deg p - 1 of them counted with multiplicity).
RootSet critical_points(const Poly& p, const RootFindConfig& cfg = {});

/// Expands a RootSet into a flat list with each root repeated per multiplicity.
std::vector<Scalar> expand_multiplicities(const RootSet& rs);

}  // namespace smalelab

#endif  // SMALELAB_ROOTFIND_HPP_
