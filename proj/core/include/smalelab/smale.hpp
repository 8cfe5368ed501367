#ifndef SMALELAB_SMALE_HPP_
#define SMALELAB_SMALE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smalelab/poly.hpp"
#include "smalelab/rootfind.hpp"

namespace smalelab {

inline constexpr double kCriticalTol = 1e-10;     ///< relative to max |coeff of P'|
inline constexpr double kCoincidenceTol = 1e-12;  ///< minimum |z - w|
inline constexpr double kNormalizationTol = 1e-12;

/// One critical point w and the Smale quotient |P(z) - P(w)| / |z - w| it
/// produces at some z. `ratio` is the quotient divided by |P'(z)|; `index`
/// is w's position in the critical-point list.
struct QuotientWitness {
  Scalar w;
  double quotient = 0.0;
  double ratio = 0.0;
  std::size_t index = 0;
};

/// A polynomial together with its derivative, critical points, and critical
/// values, so that per-point quantities cost O(#critical points).
class CriticalContext {
 public:
  explicit CriticalContext(Poly p, const RootFindConfig& cfg = {});
  /// Uses the supplied critical points (with multiplicity) instead of
  /// locating them; they must be the roots of p'.
  CriticalContext(Poly p, std::vector<Scalar> critical_points);

  const Poly& poly() const noexcept { return p_; }
  const Poly& derivative() const noexcept { return dp_; }
  const std::vector<Scalar>& critical_points() const noexcept { return crit_; }
  const std::vector<Scalar>& critical_values() const noexcept { return crit_values_; }
  int degree() const noexcept { return p_.degree(); }

  /// P(z) - P(w_i), from the Taylor expansion of P about w_i with the linear
  /// term dropped (w_i is taken as an exact critical point). Accurate to
  /// relative rounding error even as z approaches w_i, where the direct
  /// difference cancels.
  Scalar difference(std::size_t i, Scalar z) const noexcept;
  /// |P(z) - P(w_i)| / |z - w_i| from the same expansion.
  double quotient(std::size_t i, Scalar z) const noexcept;
  /// P'(z), expanded about whichever of 0 and the critical points is nearest z.
  Scalar derivative_at(Scalar z) const noexcept;

  /// |P'(z)| > kCriticalTol * max |coeff of P'|.
  bool is_admissible(Scalar z) const noexcept;

  /// 2 * (1 + max root modulus): the radius of the sampling disk.
  double sampling_radius() const noexcept { return sampling_radius_; }

 private:
  Poly p_;
  Poly dp_;
  std::vector<Scalar> crit_;
  std::vector<Scalar> crit_values_;
  std::vector<std::vector<Scalar>> local_;  ///< Taylor coefficients of P about each critical point
  double critical_floor_ = 0.0;
  double sampling_radius_ = 0.0;
};

/// |P(z) - P(w)| / |z - w|. Throws PreconditionError if |z - w| is within
/// `coincidence_tol`.
double smale_quotient(const Poly& p, Scalar z, Scalar w, double coincidence_tol = kCoincidenceTol);

/// Critical point minimising the Smale quotient at z (first index wins ties).
/// Throws PreconditionError at a critical z and DomainError for degree < 2.
QuotientWitness s_at(const CriticalContext& ctx, Scalar z);
QuotientWitness s_at(const Poly& p, Scalar z);

/// As s_at but maximising.
QuotientWitness ds_at(const CriticalContext& ctx, Scalar z);
QuotientWitness ds_at(const Poly& p, Scalar z);

/// Critical point whose critical value is nearest to P(z) (first index wins
/// ties). This is the w for which the higher-order bound is guaranteed, and it
/// also satisfies the ratio bound 4.
QuotientWitness nearest_value_witness(const CriticalContext& ctx, Scalar z);
QuotientWitness nearest_value_witness(const Poly& p, Scalar z);

/// min over critical w of |P(w) / w| for a normalized P. Throws
/// PreconditionError unless P(0) = 0 and P'(0) = 1 within 1e-12.
QuotientWitness s0(const CriticalContext& ctx);
QuotientWitness s0(const Poly& p);

/// max over critical w of |P(w) / w| for a normalized P.
QuotientWitness ds0(const CriticalContext& ctx);
QuotientWitness ds0(const Poly& p);

struct SampleConfig {
  int samples = 1000;
  std::uint64_t seed = 42;
  int refine_starts = 5;
  int refine_max_evals = 200;
};

/// A sampled extremum: `value` is the best ratio found, attained at `z`.
struct Estimate {
  double value = 0.0;
  Scalar z;
  QuotientWitness witness;
  int evaluations = 0;
};

/// Lower bound on S(P) = sup_z s_at(P, z).ratio: seeded uniform samples in the
/// sampling disk, then simplex refinement from the best few samples.
Estimate estimate_S(const CriticalContext& ctx, const SampleConfig& cfg = {});
/// Upper bound on DS(P) = inf_z ds_at(P, z).ratio by the same scheme.
Estimate estimate_DS(const CriticalContext& ctx, const SampleConfig& cfg = {});

/// |P^(k)(z)| / k! * |P(z) - P(w)|^(k-1) / |P'(z)|^k for a critical w.
/// Throws DomainError unless 2 <= k <= deg P, PreconditionError if z is
/// critical or w is not.
double higher_order_quantity(const Poly& p, Scalar z, Scalar w, int k);
/// The same for the i-th critical point of a context, using its local
/// expansions.
double higher_order_quantity(const CriticalContext& ctx, Scalar z, std::size_t i, int k);

// Literature bounds, as functions of the degree n >= 2.
double smale_ceiling();                      // 4
double beardon_minda_ng_bound(int n);        // 4^((n-2)/(n-1))
double fujikawa_sugawa_bound(int n);         // 4 (1 + (n-2) 4^(-1/(n-1))) / (n+1)
double conte_fujikawa_lakic_bound(int n);    // 4 (n-1) / (n+1)
double ng_zhang_floor(int n);                // 4^-n, strict
double dubinin_tan_floor(int n);             // tan(pi / 4n) / n
double dubinin_sugawa_floor(int n);          // 1 / (n 4^n)

enum class Relation { kLessEq, kGreaterEq, kGreater };

struct BoundCheck {
  std::string name;
  double bound = 0.0;
  double observed = 0.0;
  Relation relation = Relation::kLessEq;
  bool pass = false;
};

/// Evaluates `observed relation bound` with an absolute slack of `tol`.
BoundCheck make_check(std::string name, double observed, Relation rel, double bound, double tol = 1e-9);

struct ScalarReport {
  int degree = 0;
  bool normalized = false;
  std::optional<QuotientWitness> s0;
  std::optional<QuotientWitness> ds0;
  Estimate s_estimate;   ///< lower bound estimate of S(P)
  Estimate ds_estimate;  ///< upper bound estimate of DS(P)
  std::vector<QuotientWitness> witnesses;
  std::vector<BoundCheck> bound_checks;

  bool all_pass() const noexcept;
};

/// Estimates S and DS and checks them (and S0/DS0 when P is normalized)
/// against the theorem-level bounds. A failing check is a software defect.
ScalarReport bound_report(const CriticalContext& ctx, const SampleConfig& cfg = {});
ScalarReport bound_report(const Poly& p, const SampleConfig& cfg = {});

}  // namespace smalelab

#endif  // SMALELAB_SMALE_HPP_
