#ifndef SMALELAB_CSTAR_HPP_
#define SMALELAB_CSTAR_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "smalelab/dynamics.hpp"
#include "smalelab/poly.hpp"
#include "smalelab/rootfind.hpp"

namespace smalelab {

/// Element of the commutative C*-algebra C({1..k}) = C^k: pointwise
/// arithmetic, complex conjugation as involution, sup norm.
class CStarElement {
 public:
  CStarElement() = default;
  explicit CStarElement(std::vector<Scalar> coords);

  static CStarElement constant(std::size_t k, Scalar c) { return CStarElement(std::vector<Scalar>(k, c)); }
  static CStarElement zero(std::size_t k) { return constant(k, Scalar{}); }
  static CStarElement identity(std::size_t k) { return constant(k, Scalar{1.0}); }

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  Scalar operator[](std::size_t t) const { return coords_.at(t); }

  /// max_t |x_t|
  double norm() const noexcept;
  CStarElement adjoint() const;

  CStarElement& operator+=(const CStarElement& o);
  CStarElement& operator-=(const CStarElement& o);
  CStarElement& operator*=(const CStarElement& o);
  CStarElement& operator*=(Scalar s);

  friend CStarElement operator+(CStarElement a, const CStarElement& b) { return a += b; }
  friend CStarElement operator-(CStarElement a, const CStarElement& b) { return a -= b; }
  friend CStarElement operator*(CStarElement a, const CStarElement& b) { return a *= b; }
  friend CStarElement operator*(CStarElement a, Scalar s) { return a *= s; }
  friend CStarElement operator*(Scalar s, CStarElement a) { return a *= s; }
  friend bool operator==(const CStarElement&, const CStarElement&) = default;

 private:
  std::vector<Scalar> coords_;
};

/// Root-form polynomial lead * (z - a_1) ... (z - a_n) over C^k. lead defaults
/// to 1; any invertible lead is allowed so that normalized polynomials such as
/// z - z^2/2 are representable.
class CStarPoly {
 public:
  explicit CStarPoly(std::vector<CStarElement> roots);
  CStarPoly(std::vector<CStarElement> roots, CStarElement lead);

  int degree() const noexcept { return static_cast<int>(roots_.size()); }
  std::size_t dim() const noexcept { return lead_.dim(); }
  const std::vector<CStarElement>& roots() const noexcept { return roots_; }
  const CStarElement& lead() const noexcept { return lead_; }

  /// The scalar polynomial in coordinate t (a Poly with stored roots).
  Poly coordinate(std::size_t t) const;
  std::vector<Scalar> coordinate_roots(std::size_t t) const;

 private:
  std::vector<CStarElement> roots_;
  CStarElement lead_;
};

/// Throws DomainError when z.dim() != P.dim().
CStarElement cstar_eval(const CStarPoly& P, const CStarElement& z);
/// lead * Sum_j prod_{i != j} (z - a_i), coordinatewise.
CStarElement cstar_derivative_eval(const CStarPoly& P, const CStarElement& z);

inline constexpr std::uint64_t kCriticalSetCap = 1'000'000;

/// Critical elements are exactly the w with P'(w) = 0, i.e. w_t a root of
/// P_t' for every t; the set is the Cartesian product of the coordinate root
/// sets and is enumerated lazily in odometer order (coordinate 0 fastest).
class CriticalSet {
 public:
  CriticalSet() = default;
  explicit CriticalSet(std::vector<RootSet> per_coordinate);

  const std::vector<RootSet>& per_coordinate() const noexcept { return per_coordinate_; }
  std::uint64_t product_size() const noexcept { return product_size_; }
  std::size_t dim() const noexcept { return per_coordinate_.size(); }

  /// Element for a multi-index (one root index per coordinate).
  CStarElement element(const std::vector<std::size_t>& index) const;

  /// Calls fn(index) for every multi-index; stops early if fn returns false.
  void for_each(const std::function<bool(const std::vector<std::size_t>&)>& fn) const;

 private:
  std::vector<RootSet> per_coordinate_;
  std::uint64_t product_size_ = 0;
};

/// Throws CapacityError when the product size exceeds `cap`.
CriticalSet enumerate_critical_set(const CStarPoly& P, const RootFindConfig& cfg = {},
                                   std::uint64_t cap = kCriticalSetCap);

struct CStarCheckConfig {
  double critical_tol = 1e-10;     ///< relative to the largest coordinate derivative scale
  double coincidence_tol = 1e-12;  ///< minimum sup-distance from z to a critical element
  double verdict_tol = 1e-9;       ///< absolute slack on ratio comparisons
  double strong_tol = 1e-10;       ///< relative slack on the coordinatewise order
  RootFindConfig rootfind;
  std::uint64_t cap = kCriticalSetCap;
};

struct CStarVerdict {
  CStarElement z;
  CStarElement best_witness;   ///< critical element attaining min_ratio
  CStarElement worst_witness;  ///< critical element attaining max_ratio
  double min_ratio = 0.0;      ///< min_w ||P(z)-P(w)|| / (||z-w|| ||P'(z)||)
  double max_ratio = 0.0;
  std::uint64_t critical_count = 0;
  bool weak_pass = false;    ///< min_ratio <= 1
  bool sharp_pass = false;   ///< min_ratio <= (n-1)/n
  bool dual_pass = false;    ///< max_ratio >= 1/n

  bool strong_checked = false;
  bool strong_weak_pass = false;   ///< some w: |dP_t|^2 <= |z_t-w_t|^2 |P'_t|^2 for all t
  bool strong_smale_pass = false;  ///< same with factor ((n-1)/n)^2
  bool strong_dual_pass = false;   ///< some w: |z_t-w_t|^2 |P'_t|^2 / n^2 <= |dP_t|^2 for all t
  double strong_smale_margin = 0.0;  ///< best (smallest) relative excess over w; <= 0 means satisfied
  double strong_dual_margin = 0.0;
};

/// Exhaustive min/max of the normalised Smale quotient over the critical set.
/// Throws PreconditionError for a critical z or one within coincidence_tol of
/// a critical element, and CapacityError from the enumeration.
CStarVerdict check_smale(const CStarPoly& P, const CStarElement& z, const CStarCheckConfig& cfg = {});
CStarVerdict check_smale(const CStarPoly& P, const CriticalSet& crit, const CStarElement& z,
                         const CStarCheckConfig& cfg = {});

/// check_smale plus the operator-order (strong) forms, decided pointwise.
CStarVerdict check_strong_forms(const CStarPoly& P, const CStarElement& z, const CStarCheckConfig& cfg = {});
CStarVerdict check_strong_forms(const CStarPoly& P, const CriticalSet& crit, const CStarElement& z,
                                const CStarCheckConfig& cfg = {});

/// For P = (z-a)(z-b) with c = (a+b)/2: max_t | |P(z)_t - P(c)_t|^2 - |z_t-c_t|^2 |P'(z)_t|^2 / 4 |,
/// divided by max_t |z_t-c_t|^2 |P'(z)_t|^2 / 4 (returned unscaled when that is 0).
/// The same expression is the residual of the dual identity with factor 1/n^2 = 1/4.
double degree2_identity_residual(const CStarElement& a, const CStarElement& b, const CStarElement& z);

/// (||P''(z)|| / 2!) ||P(z) - P(c)|| / ||P'(z)||^2 for P = (z-a)(z-b).
double degree2_higher_order(const CStarElement& a, const CStarElement& b, const CStarElement& z);

struct CStarOrbitEntry {
  CStarElement w;
  double ratio = 0.0;  ///< ||P(w)|| / ||w||
  std::vector<OrbitResult> coordinates;
  bool converged = false;  ///< every coordinate orbit converged to 0
};

struct CStarDynamicsReport {
  bool holds = false;
  std::vector<CStarOrbitEntry> entries;
};

/// For each critical element w with ||w|| > coincidence_tol, records
/// ||P(w)|| / ||w|| and the pointwise orbit of w. `holds` is true when some w
/// has ratio <= 1 and converges. Throws PreconditionError unless P(0) = 0 and
/// P'(0) = 1 within 1e-10.
CStarDynamicsReport cstar_dynamics_check(const CStarPoly& P, const OrbitConfig& cfg = {},
                                         const CStarCheckConfig& check = {});

/// A candidate counterexample: the full trial plus its recomputation in
/// extended precision with compensated summation.
struct Certificate {
  CStarPoly poly;
  CStarElement z;
  CStarVerdict verdict;
  std::vector<std::string> violated;  ///< "sharp_smale", "dual", ...
  double recheck_min_ratio = 0.0;
  double recheck_max_ratio = 0.0;
  bool confirmed = false;  ///< violation survives the recheck with twice the slack
};

/// Recomputes min/max ratios in long double (critical points re-polished by
/// Newton, derivative sums Kahan-compensated) and confirms each violation only
/// if it exceeds 2 * verdict_tol.
Certificate reverify(const CStarPoly& P, const CStarElement& z, const CStarVerdict& verdict,
                     const CStarCheckConfig& cfg = {});

}  // namespace smalelab

#endif  // SMALELAB_CSTAR_HPP_
