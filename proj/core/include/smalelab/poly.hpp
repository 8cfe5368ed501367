#ifndef SMALELAB_POLY_HPP_
#define SMALELAB_POLY_HPP_

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace smalelab {

using Scalar = std::complex<double>;

/// Default relative tolerance for stored roots: |p(r)| <= tol * max|a_i|.
inline constexpr double kPolyResidualTol = 1e-8;

bool is_finite(Scalar z) noexcept;

/// Complex polynomial a_0 + a_1 z + ... + a_n z^n, coefficients stored in
/// ascending order. Optionally carries its roots when it was built from them.
///
/// Trailing exact zeros are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero (which is
/// represented with degree 0 and the single coefficient 0).
class Poly {
 public:
  explicit Poly(std::vector<Scalar> coeffs);
  Poly(std::vector<Scalar> coeffs, std::vector<Scalar> roots);

  static Poly constant(Scalar c) { return Poly(std::vector<Scalar>{c}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  Scalar coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  Scalar leading() const noexcept { return coeffs_.back(); }
  const std::optional<std::vector<Scalar>>& roots() const noexcept { return roots_; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Scalar{}; }

  /// max_i |a_i|; the reference scale for relative tolerances.
  double coeff_scale() const noexcept;

  /// Horner evaluation.
  Scalar operator()(Scalar z) const noexcept;

  /// Value and first derivative in a single Horner sweep.
  std::pair<Scalar, Scalar> eval_with_derivative(Scalar z) const noexcept;

  /// Sum_i |a_i| |z|^i, the natural magnitude against which |p(z)| is small.
  double abs_eval(double r) const noexcept;

 private:
  std::vector<Scalar> coeffs_;
  std::optional<std::vector<Scalar>> roots_;
};

/// Monic polynomial prod (z - r_i), expanded by sequential linear-factor
/// convolution. Throws DomainError on an empty list.
Poly from_roots(std::span<const Scalar> roots);

/// leading * prod (z - r_i).
Poly from_roots(std::span<const Scalar> roots, Scalar leading);

Scalar evaluate(const Poly& p, Scalar z) noexcept;

/// Throws DomainError for degree 0.
Poly derivative(const Poly& p);

/// k-th derivative; k > degree yields the zero polynomial.
Poly kth_derivative(const Poly& p, int k);

/// Q with Q' = p and Q(0) = 0.
Poly antiderivative_zero_at_origin(const Poly& p);

/// Q(h) = (P(z0 + h) - P(z0)) / P'(z0). Throws PreconditionError when z0 is
/// critical relative to `critical_tol` (scaled by the derivative's
/// coefficients).
Poly renormalize_at(const Poly& p, Scalar z0, double critical_tol = 1e-10);

/// Coefficients of p(z0 + h) in h (Taylor shift).
Poly taylor_shift(const Poly& p, Scalar z0);

/// prod (z - r_i) evaluated directly from the roots.
Scalar eval_root_form(std::span<const Scalar> roots, Scalar z) noexcept;

/// Sum_j prod_{i != j} (z - r_i): the derivative of the monic root form,
/// computed without expanding coefficients.
Scalar derivative_root_form(std::span<const Scalar> roots, Scalar z) noexcept;

/// True when P(0) = 0 and P'(0) = 1 within `tol`.
bool is_normalized(const Poly& p, double tol = 1e-12) noexcept;

}  // namespace smalelab

#endif  // SMALELAB_POLY_HPP_
