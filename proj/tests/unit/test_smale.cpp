#include <doctest.h>

#include <cmath>
#include <numbers>

#include "smalelab/errors.hpp"
#include "smalelab/rootfind.hpp"
#include "smalelab/smale.hpp"
#include "support.hpp"

using namespace smalelab;
using doctest::Approx;

namespace {

Poly z_minus_cube_third() { return Poly({0.0, 1.0, 0.0, -1.0 / 3.0}); }
Poly z_minus_half_square() { return Poly({0.0, 1.0, -0.5}); }
Poly double_root_cubic() { return Poly({0.0, 1.0, -1.0, 0.25}); }  // z (z - 2)^2 / 4

// z - z^n / n
Poly extremal(int n) {
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1);
  c[1] = 1.0;
  c[static_cast<std::size_t>(n)] = -1.0 / n;
  return Poly(c);
}

Poly random_poly(std::uint64_t seed, std::uint64_t t, int n) {
  CounterRng rng(seed, t);
  std::vector<Scalar> roots(static_cast<std::size_t>(n));
  for (auto& r : roots) r = rng.in_disk(2.0);
  return from_roots(roots);
}

// Brute force over p' roots recomputed independently.
std::pair<double, double> brute_ratios(const Poly& p, Scalar z) {
  const auto crit = expand_multiplicities(find_roots(derivative(p)));
  double lo = INFINITY;
  double hi = 0.0;
  const double dz = std::abs(derivative(p)(z));
  for (const auto& w : crit) {
    const double r = std::abs(p(z) - p(w)) / std::abs(z - w) / dz;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("smale_quotient") {
  CHECK(smale_quotient(Poly({0.0, 0.0, 1.0}), 2.0, 0.0) == Approx(2.0).epsilon(1e-15));
  CHECK(smale_quotient(z_minus_cube_third(), 0.0, 1.0) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(smale_quotient(Poly({0.0, 0.0, 1.0}), 1.0, 1.0), PreconditionError);

  const Scalar a{1.0, 2.0};
  const Scalar b{-0.5, 0.25};
  const Poly q = from_roots(std::vector<Scalar>{a, b});
  const Scalar c = (a + b) / 2.0;
  for (const Scalar z : {Scalar{3.0, -1.0}, Scalar{0.1, 0.2}, Scalar{-4.0, 0.0}}) {
    CHECK(smale_quotient(q, z, c) == Approx(std::abs(z - c)).epsilon(1e-13));
  }
}

TEST_CASE("s_at and ds_at examples") {
  const auto s = s_at(z_minus_cube_third(), 0.0);
  CHECK(s.ratio == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.index == 0);  // both critical points tie; the first wins
  CHECK(ds_at(z_minus_cube_third(), 0.0).ratio == Approx(2.0 / 3.0).epsilon(1e-15));

  const auto sq = s_at(Poly({0.0, 0.0, 1.0}), 1.0);
  CHECK(sq.quotient == Approx(1.0).epsilon(1e-15));
  CHECK(sq.ratio == Approx(0.5).epsilon(1e-15));
  CHECK(ds_at(Poly({0.0, 0.0, 1.0}), 1.0).ratio == Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(s_at(Poly({0.0, 0.0, 1.0}), 0.0), PreconditionError);
  CHECK_THROWS_AS(s_at(Poly({1.0, 1.0}), 0.0), DomainError);
}

TEST_CASE("degree-2 exactness of s_at and ds_at") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Poly p = random_poly(51, t, 2);
    const CriticalContext ctx(p);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      CounterRng rng(52, t * 1000 + i);
      const Scalar z = rng.in_disk(ctx.sampling_radius());
      if (!ctx.is_admissible(z)) continue;
      REQUIRE(std::abs(s_at(ctx, z).ratio - 0.5) <= 1e-9);
      REQUIRE(std::abs(ds_at(ctx, z).ratio - 0.5) <= 1e-9);
    }
  }
}

TEST_CASE("s_at and ds_at against brute force, and the theorem bounds") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(t % 9);
    const Poly p = random_poly(53, t, n);
    const CriticalContext ctx(p);
    CounterRng rng(54, t);
    for (int i = 0; i < 20; ++i) {
      const Scalar z = rng.in_disk(ctx.sampling_radius());
      const auto s = s_at(ctx, z);
      const auto d = ds_at(ctx, z);
      const auto [lo, hi] = brute_ratios(p, z);
      CHECK(s.ratio == Approx(lo).epsilon(1e-8));
      CHECK(d.ratio == Approx(hi).epsilon(1e-8));
      CHECK(s.ratio <= d.ratio);
      CHECK(s.ratio <= smale_ceiling() + 1e-9);
      CHECK(d.ratio >= dubinin_sugawa_floor(n) - 1e-9);
      const auto nv = nearest_value_witness(ctx, z);
      CHECK(nv.ratio <= smale_ceiling() + 1e-9);
      for (int k = 2; k <= n; ++k) {
        const double h = higher_order_quantity(ctx, z, nv.index, k);
        CHECK(h <= std::pow(4.0, k - 1) + 1e-9);
        CHECK(h == Approx(higher_order_quantity(p, z, nv.w, k)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("s0 and ds0") {
  CHECK(s0(z_minus_half_square()).quotient == Approx(0.5).epsilon(1e-15));
  CHECK(ds0(z_minus_half_square()).quotient == Approx(0.5).epsilon(1e-15));
  CHECK(s0(z_minus_cube_third()).quotient == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(ds0(z_minus_cube_third()).quotient == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s0(double_root_cubic()).quotient <= 1e-12);
  // critical points 2/3 and 2: |P(2/3) / (2/3)| = (2/3 - 2)^2 / 4
  CHECK(ds0(double_root_cubic()).quotient == Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(s0(Poly({0.0, 2.0, 1.0})), PreconditionError);
  CHECK_THROWS_AS(ds0(Poly({0.1, 1.0, 1.0})), PreconditionError);
}

TEST_CASE("s0 is invariant under P(z) -> P(lambda z) / lambda") {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng(55, t);
    const int n = 2 + static_cast<int>(t % 7);
    std::vector<Scalar> c(static_cast<std::size_t>(n) + 1);
    c[1] = 1.0;
    for (int j = 2; j <= n; ++j) c[static_cast<std::size_t>(j)] = rng.in_disk(2.0);
    const Scalar lambda = std::polar(0.2 + 3.0 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    std::vector<Scalar> scaled = c;
    for (int j = 2; j <= n; ++j) scaled[static_cast<std::size_t>(j)] *= std::pow(lambda, j - 1);
    CHECK(s0(Poly(scaled)).quotient == Approx(s0(Poly(c)).quotient).epsilon(1e-9));
    CHECK(ds0(Poly(scaled)).quotient == Approx(ds0(Poly(c)).quotient).epsilon(1e-9));
  }
}

TEST_CASE("estimate_S and estimate_DS") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const CriticalContext q(random_poly(56, t, 2));
    CHECK(std::abs(estimate_S(q).value - 0.5) <= 1e-9);
    CHECK(std::abs(estimate_DS(q).value - 0.5) <= 1e-9);
  }
  const CriticalContext cubic(z_minus_cube_third());
  const Estimate s = estimate_S(cubic);
  CHECK(s.value >= 2.0 / 3.0 - 1e-6);
  CHECK(s.value <= conte_fujikawa_lakic_bound(3));
  CHECK(s.value <= 4.0 + 1e-9);
  CHECK(estimate_DS(cubic).value >= std::tan(std::numbers::pi / 12.0) / 3.0 - 1e-6);

  SampleConfig cfg;
  cfg.seed = 9;
  const Estimate a = estimate_S(cubic, cfg);
  const Estimate b = estimate_S(cubic, cfg);
  CHECK(a.value == b.value);
  CHECK(a.z == b.z);
}

TEST_CASE("higher-order bound at the nearest-value witness") {
  // The bound is guaranteed for the critical point with the nearest critical
  // value; the s_at witness can exceed it.
  int exceed = 0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const int n = 3 + static_cast<int>(t % 8);
    const Poly p = random_poly(58, t, n);
    const CriticalContext ctx(p);
    CounterRng rng(59, t);
    const Scalar z = rng.in_disk(ctx.sampling_radius());
    const auto s = s_at(ctx, z);
    const auto nv = nearest_value_witness(ctx, z);
    for (int k = 2; k <= n; ++k) {
      exceed += higher_order_quantity(p, z, s.w, k) > std::pow(4.0, k - 1) + 1e-9;
      REQUIRE(higher_order_quantity(p, z, nv.w, k) <= std::pow(4.0, k - 1) + 1e-9);
    }
  }
  MESSAGE("s_at witnesses above 4^(k-1): " << exceed);
}

TEST_CASE("nearest_value_witness") {
  // z - z^3/3 at z = 0.5: P = 0.4583..., critical values +-2/3
  const auto w = nearest_value_witness(z_minus_cube_third(), 0.5);
  CHECK(std::abs(w.w - 1.0) <= 1e-14);
  CHECK_THROWS_AS(nearest_value_witness(z_minus_cube_third(), 1.0), PreconditionError);
}

TEST_CASE("local expansions stay accurate next to a critical point") {
  // Large critical value: the direct difference P(z) - P(c) loses all digits
  // once |z - c|^2 is below eps |P(c)|.
  const Poly q = from_roots(std::vector<Scalar>{Scalar{3e3, 1.0}, Scalar{-2.0, 5e3}});
  const CriticalContext ctx(q);
  const Scalar c = ctx.critical_points()[0];
  for (double h : {1e-2, 1e-4, 1e-6, 1e-7}) {
    const Scalar z = c + Scalar{h, h / 3};
    if (!ctx.is_admissible(z)) continue;
    CHECK(s_at(ctx, z).ratio == Approx(0.5).epsilon(1e-12));
    CHECK(higher_order_quantity(ctx, z, 0, 2) == Approx(0.25).epsilon(1e-12));
  }
  const Estimate s = estimate_S(ctx);
  const Estimate d = estimate_DS(ctx);
  CHECK(std::abs(s.value - 0.5) <= 1e-9);
  CHECK(std::abs(d.value - 0.5) <= 1e-9);
}

TEST_CASE("higher_order_quantity") {
  const Poly q = from_roots(std::vector<Scalar>{Scalar{1.0, 1.0}, Scalar{-2.0, 0.5}});
  const Scalar c = (Scalar{1.0, 1.0} + Scalar{-2.0, 0.5}) / 2.0;
  for (const Scalar z : {Scalar{3.0, 0.0}, Scalar{0.0, -2.0}}) {
    CHECK(higher_order_quantity(q, z, c, 2) == Approx(0.25).epsilon(1e-14));
  }
  CHECK(higher_order_quantity(z_minus_cube_third(), 0.0, 1.0, 2) == 0.0);
  // |P'''(0)| / 3! = 1/3, |P(0) - P(1)|^2 = 4/9, |P'(0)| = 1
  CHECK(higher_order_quantity(z_minus_cube_third(), 0.0, 1.0, 3) == Approx(4.0 / 27.0).epsilon(1e-14));
  CHECK_THROWS_AS(higher_order_quantity(z_minus_cube_third(), 0.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(higher_order_quantity(z_minus_cube_third(), 0.0, 1.0, 4), DomainError);
  CHECK_THROWS_AS(higher_order_quantity(z_minus_cube_third(), 1.0, -1.0, 2), PreconditionError);
  CHECK_THROWS_AS(higher_order_quantity(z_minus_cube_third(), 0.0, 0.5, 2), PreconditionError);
}

TEST_CASE("literature bounds") {
  CHECK(smale_ceiling() == 4.0);
  CHECK(beardon_minda_ng_bound(2) == Approx(1.0));
  CHECK(beardon_minda_ng_bound(3) == Approx(2.0));
  CHECK(fujikawa_sugawa_bound(2) == Approx(4.0 / 3.0));
  CHECK(conte_fujikawa_lakic_bound(3) == Approx(2.0));
  CHECK(ng_zhang_floor(2) == Approx(1.0 / 16.0));
  CHECK(dubinin_tan_floor(2) == Approx(std::tan(std::numbers::pi / 8.0) / 2.0));
  CHECK(dubinin_sugawa_floor(2) == Approx(1.0 / 32.0));
  // Each improves on Smale's constant for n >= 3.
  for (int n = 3; n <= 12; ++n) {
    CHECK(beardon_minda_ng_bound(n) < 4.0);
    CHECK(fujikawa_sugawa_bound(n) < 4.0);
    CHECK(conte_fujikawa_lakic_bound(n) < 4.0);
  }
}

TEST_CASE("make_check") {
  CHECK(make_check("x", 1.0, Relation::kLessEq, 1.0).pass);
  CHECK(make_check("x", 1.0 + 5e-10, Relation::kLessEq, 1.0).pass);
  CHECK_FALSE(make_check("x", 1.0 + 2e-9, Relation::kLessEq, 1.0).pass);
  CHECK(make_check("x", 1.0, Relation::kGreaterEq, 1.0).pass);
  CHECK_FALSE(make_check("x", 1.0, Relation::kGreater, 1.0, 0.0).pass);
}

TEST_CASE("bound_report") {
  const ScalarReport q = bound_report(z_minus_half_square());
  CHECK(q.normalized);
  CHECK(q.all_pass());
  REQUIRE(q.ds0);
  CHECK(q.ds0->quotient == Approx(0.5));
  CHECK(q.ds0->quotient > ng_zhang_floor(2));

  const ScalarReport c = bound_report(z_minus_cube_third());
  REQUIRE(c.s0);
  CHECK(c.s0->quotient == Approx(2.0 / 3.0));
  CHECK(c.all_pass());

  const ScalarReport ten = bound_report(extremal(10));
  REQUIRE(ten.s0);
  CHECK(ten.s0->quotient == Approx(0.9).epsilon(1e-9));
  CHECK(ten.all_pass());
  bool saw_s0_checks = false;
  for (const auto& chk : ten.bound_checks) saw_s0_checks = saw_s0_checks || chk.name == "beardon_minda_ng_s0";
  CHECK(saw_s0_checks);

  const ScalarReport general = bound_report(random_poly(57, 0, 5));
  CHECK_FALSE(general.normalized);
  CHECK_FALSE(general.s0);
  CHECK(general.all_pass());
}
