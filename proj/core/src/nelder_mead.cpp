#include "smalelab/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace smalelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Simplex {
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;
};

}  // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, std::span<const double> step,
                                      const NelderMeadOptions& opts) {
  const std::size_t dim = x0.size();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<double> best_x = x0;
  double best_value = eval(x0);
  std::vector<double> scale(step.begin(), step.end());

  for (int round = 0; round <= opts.restarts && evals < opts.max_evals; ++round) {
    Simplex s;
    s.vertices.push_back(best_x);
    s.values.push_back(best_value);
    for (std::size_t i = 0; i < dim; ++i) {
      auto v = best_x;
      v[i] += scale[i];
      s.values.push_back(eval(v));
      s.vertices.push_back(std::move(v));
    }

    std::vector<std::size_t> order(dim + 1);
    while (evals < opts.max_evals) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[dim - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= dim; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
          diameter = std::max(diameter, std::abs(s.vertices[i][d] - s.vertices[lo][d]));
        }
      }
      const double spread = s.values[hi] - s.values[lo];
      if (std::isfinite(spread) && spread <= opts.f_tol && diameter <= opts.x_tol) break;
      if (diameter <= opts.x_tol * 1e-3) break;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == hi) continue;
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += s.vertices[i][d];
      }
      for (auto& c : centroid) c /= static_cast<double>(dim);

      auto along = [&](double t) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d) p[d] = centroid[d] + t * (s.vertices[hi][d] - centroid[d]);
        return p;
      };

      auto reflected = along(-1.0);
      const double fr = eval(reflected);
      if (fr < s.values[lo]) {
        auto expanded = along(-2.0);
        const double fe = eval(expanded);
        if (fe < fr) {
          s.vertices[hi] = std::move(expanded);
          s.values[hi] = fe;
        } else {
          s.vertices[hi] = std::move(reflected);
          s.values[hi] = fr;
        }
        continue;
      }
      if (fr < s.values[second]) {
        s.vertices[hi] = std::move(reflected);
        s.values[hi] = fr;
        continue;
      }
      const bool outside = fr < s.values[hi];
      auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : s.values[hi])) {
        s.vertices[hi] = std::move(contracted);
        s.values[hi] = fc;
        continue;
      }
      // shrink towards the best vertex
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == lo) continue;
        for (std::size_t d = 0; d < dim; ++d) {
          s.vertices[i][d] = s.vertices[lo][d] + 0.5 * (s.vertices[i][d] - s.vertices[lo][d]);
        }
        s.values[i] = eval(s.vertices[i]);
      }
    }

    for (std::size_t i = 0; i <= dim; ++i) {
      if (s.values[i] < best_value) {
        best_value = s.values[i];
        best_x = s.vertices[i];
      }
    }
    for (auto& sc : scale) sc *= 0.25;
  }
  return {std::move(best_x), best_value, evals};
}

}  // namespace smalelab
