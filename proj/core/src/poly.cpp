#include "smalelab/poly.hpp"

#include <algorithm>
#include <cmath>

#include "smalelab/errors.hpp"

namespace smalelab {

bool is_finite(Scalar z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace {

std::vector<Scalar> trimmed(std::vector<Scalar> coeffs) {
  if (coeffs.empty()) throw DomainError("polynomial needs at least one coefficient");
  for (const auto& c : coeffs) {
    if (!is_finite(c)) throw DomainError("polynomial coefficient is not finite");
  }
  while (coeffs.size() > 1 && coeffs.back() == Scalar{}) coeffs.pop_back();
  return coeffs;
}

}  // namespace

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(trimmed(std::move(coeffs))) {}

Poly::Poly(std::vector<Scalar> coeffs, std::vector<Scalar> roots) : coeffs_(trimmed(std::move(coeffs))) {
  if (static_cast<int>(roots.size()) != degree()) throw DomainError("root count must equal the degree");
  for (const auto& r : roots) {
    if (!is_finite(r)) throw DomainError("polynomial root is not finite");
    // Relative to the larger of the coefficient scale and the rounding scale at |r|.
    const double scale = std::max(coeff_scale(), abs_eval(std::abs(r)));
    if (std::abs((*this)(r)) > kPolyResidualTol * scale) {
      throw DomainError("stored root does not annihilate the polynomial");
    }
  }
  roots_ = std::move(roots);
}

double Poly::coeff_scale() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Scalar Poly::operator()(Scalar z) const noexcept {
  Scalar acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Scalar, Scalar> Poly::eval_with_derivative(Scalar z) const noexcept {
  Scalar value = coeffs_.back();
  Scalar deriv{};
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
  return {value, deriv};
}

double Poly::abs_eval(double r) const noexcept {
  double acc = std::abs(coeffs_.back());
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Poly from_roots(std::span<const Scalar> roots) { return from_roots(roots, Scalar{1.0}); }

Poly from_roots(std::span<const Scalar> roots, Scalar leading) {
  if (roots.empty()) throw DomainError("from_roots: empty root list");
  if (leading == Scalar{}) throw DomainError("from_roots: zero leading coefficient");
  std::vector<Scalar> c{leading};
  c.reserve(roots.size() + 1);
  for (const auto& r : roots) {
    // multiply by (z - r)
    c.push_back(c.back());
    for (std::size_t i = c.size() - 2; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return Poly(std::move(c), std::vector<Scalar>(roots.begin(), roots.end()));
}

Scalar evaluate(const Poly& p, Scalar z) noexcept { return p(z); }

Poly derivative(const Poly& p) {
  if (p.degree() < 1) throw DomainError("derivative: polynomial has degree 0");
  const auto a = p.coeffs();
  std::vector<Scalar> d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = static_cast<double>(i) * a[i];
  return Poly(std::move(d));
}

Poly kth_derivative(const Poly& p, int k) {
  if (k < 0) throw DomainError("kth_derivative: negative order");
  if (k > p.degree()) return Poly::constant(Scalar{});
  Poly q = p;
  for (int i = 0; i < k; ++i) q = derivative(q);
  return q;
}

Poly antiderivative_zero_at_origin(const Poly& p) {
  if (p.is_zero()) return Poly::constant(Scalar{});
  const auto a = p.coeffs();
  std::vector<Scalar> q(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) q[i + 1] = a[i] / static_cast<double>(i + 1);
  return Poly(std::move(q));
}

Poly taylor_shift(const Poly& p, Scalar z0) {
  std::vector<Scalar> c(p.coeffs().begin(), p.coeffs().end());
  const std::size_t n = c.size();
  // Repeated synthetic division by (z - z0).
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = n - 1; i > k; --i) c[i - 1] += z0 * c[i];
  }
  return Poly(std::move(c));
}

Poly renormalize_at(const Poly& p, Scalar z0, double critical_tol) {
  if (p.degree() < 1) throw DomainError("renormalize_at: constant polynomial");
  const Poly dp = derivative(p);
  const Scalar d0 = dp(z0);
  if (!(std::abs(d0) > critical_tol * dp.coeff_scale())) {
    throw PreconditionError("renormalize_at: z0 is a critical point");
  }
  const Poly shifted = taylor_shift(p, z0);
  std::vector<Scalar> c(shifted.coeffs().begin(), shifted.coeffs().end());
  c[0] = Scalar{};
  for (auto& ci : c) ci /= d0;
  c[1] = Scalar{1.0};
  return Poly(std::move(c));
}

Scalar eval_root_form(std::span<const Scalar> roots, Scalar z) noexcept {
  Scalar acc{1.0};
  for (const auto& r : roots) acc *= z - r;
  return acc;
}

Scalar derivative_root_form(std::span<const Scalar> roots, Scalar z) noexcept {
  Scalar sum{};
  for (std::size_t j = 0; j < roots.size(); ++j) {
    Scalar term{1.0};
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i != j) term *= z - roots[i];
    }
    sum += term;
  }
  return sum;
}

bool is_normalized(const Poly& p, double tol) noexcept {
  if (p.degree() < 1) return false;
  return std::abs(p.coeff(0)) <= tol && std::abs(p.coeff(1) - Scalar{1.0}) <= tol;
}

}  // namespace smalelab
