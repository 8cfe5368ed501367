#ifndef SMALELAB_NELDER_MEAD_HPP_
#define SMALELAB_NELDER_MEAD_HPP_

#include <functional>
#include <span>
#include <vector>

namespace smalelab {

struct NelderMeadOptions {
  int max_evals = 2000;
  double f_tol = 1e-13;  ///< stop when the simplex's value spread falls below this
  double x_tol = 1e-12;  ///< ... and its diameter falls below this
  int restarts = 0;      ///< re-inflate the simplex around the best vertex this many times
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int evals;
};

/// Minimizes `f` with the standard reflection/expansion/contraction/shrink
/// simplex moves (coefficients 1, 2, 1/2, 1/2). Non-finite values are
/// treated as +infinity, which lets callers encode hard constraints.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, std::span<const double> step,
                                      const NelderMeadOptions& opts = {});

}  // namespace smalelab

#endif  // SMALELAB_NELDER_MEAD_HPP_
