#include <doctest.h>

#include <cmath>

#include "smalelab/errors.hpp"
#include "smalelab/poly.hpp"
#include "smalelab/rng.hpp"
#include "support.hpp"

using namespace smalelab;
using test::max_coeff_diff;

namespace {
const Scalar I{0.0, 1.0};

Poly z_minus_cube_third() { return Poly({0.0, 1.0, 0.0, -1.0 / 3.0}); }
}  // namespace

TEST_CASE("from_roots expands linear factors") {
  CHECK(max_coeff_diff(from_roots(std::vector<Scalar>{0.0, 0.0}), {0.0, 0.0, 1.0}) == 0.0);
  CHECK(max_coeff_diff(from_roots(std::vector<Scalar>{1.0, -1.0}), {-1.0, 0.0, 1.0}) == 0.0);
  CHECK(max_coeff_diff(from_roots(std::vector<Scalar>{1.0, 2.0, 3.0}), {-6.0, 11.0, -6.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(from_roots(std::vector<Scalar>{}), DomainError);
}

TEST_CASE("from_roots agrees with the subset-sum expansion") {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng(11, t);
    const int n = 1 + static_cast<int>(t % 10);
    std::vector<Scalar> roots(static_cast<std::size_t>(n));
    for (auto& r : roots) r = rng.in_disk(3.0);
    const Poly p = from_roots(roots);
    const auto expected = test::subset_expansion(roots);
    double scale = 0.0;
    for (const auto& c : expected) scale = std::max(scale, std::abs(c));
    CHECK(max_coeff_diff(p, expected) <= 1e-12 * scale);
    REQUIRE(p.roots());
    CHECK(p.roots()->size() == roots.size());
  }
}

TEST_CASE("from_roots with a leading coefficient") {
  const Poly p = from_roots(std::vector<Scalar>{1.0, -1.0}, Scalar{2.0});
  CHECK(max_coeff_diff(p, {-2.0, 0.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(from_roots(std::vector<Scalar>{1.0}, Scalar{}), DomainError);
}

TEST_CASE("Poly construction") {
  CHECK_THROWS_AS(Poly(std::vector<Scalar>{}), DomainError);
  CHECK_THROWS_AS(Poly({1.0, Scalar{std::nan(""), 0.0}}), DomainError);
  const Poly trimmed({1.0, 2.0, 0.0, 0.0});
  CHECK(trimmed.degree() == 1);
  CHECK(Poly({0.0, 0.0}).is_zero());
  CHECK_THROWS_AS(Poly({-1.0, 0.0, 1.0}, {1.0, 2.0}), DomainError);
  CHECK_NOTHROW(Poly({-1.0, 0.0, 1.0}, {1.0, -1.0}));
  CHECK_THROWS_AS(Poly({-1.0, 0.0, 1.0}, {1.0}), DomainError);
}

TEST_CASE("evaluate") {
  const Poly sq_minus_one({-1.0, 0.0, 1.0});
  CHECK(evaluate(sq_minus_one, 2.0) == Scalar{3.0});
  CHECK(evaluate(from_roots(std::vector<Scalar>{1.0, 2.0, 3.0}), 1.0) == Scalar{0.0});
  CHECK(test::dist(evaluate(sq_minus_one, I), Scalar{-2.0}) == 0.0);
  const auto [v, d] = sq_minus_one.eval_with_derivative(3.0);
  CHECK(v == Scalar{8.0});
  CHECK(d == Scalar{6.0});
}

TEST_CASE("derivative") {
  CHECK(max_coeff_diff(derivative(Poly({-1.0, 0.0, 1.0})), {0.0, 2.0}) == 0.0);
  CHECK(max_coeff_diff(derivative(z_minus_cube_third()), {1.0, 0.0, -1.0}) == 0.0);
  CHECK_THROWS_AS(derivative(Poly::constant(5.0)), DomainError);
}

TEST_CASE("kth_derivative") {
  CHECK(max_coeff_diff(kth_derivative(Poly({0.0, 0.0, 1.0}), 2), {2.0}) == 0.0);
  CHECK(max_coeff_diff(kth_derivative(z_minus_cube_third(), 2), {0.0, -2.0}) == 0.0);
  CHECK(max_coeff_diff(kth_derivative(Poly({-1.0, 0.0, 1.0}), 0), {-1.0, 0.0, 1.0}) == 0.0);
  const Poly beyond = kth_derivative(Poly({-1.0, 0.0, 1.0}), 3);
  CHECK(beyond.degree() == 0);
  CHECK(beyond.is_zero());
  CHECK_THROWS_AS(kth_derivative(Poly({1.0, 1.0}), -1), DomainError);
}

TEST_CASE("antiderivative_zero_at_origin") {
  CHECK(max_coeff_diff(antiderivative_zero_at_origin(Poly({1.0, 0.0, -1.0})), {0.0, 1.0, 0.0, -1.0 / 3.0}) == 0.0);
  CHECK(max_coeff_diff(antiderivative_zero_at_origin(Poly({0.0, 2.0})), {0.0, 0.0, 1.0}) == 0.0);
  CHECK(antiderivative_zero_at_origin(Poly::constant(0.0)).is_zero());
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng(5, t);
    std::vector<Scalar> c(6);
    for (auto& x : c) x = rng.in_disk(10.0);
    CHECK(evaluate(antiderivative_zero_at_origin(Poly(c)), 0.0) == Scalar{0.0});
  }
}

TEST_CASE("renormalize_at") {
  const Poly q = renormalize_at(Poly({0.0, 0.0, 1.0}), 1.0);
  CHECK(max_coeff_diff(q, {0.0, 1.0, 0.5}) <= 1e-15);
  const Poly p = z_minus_cube_third();
  CHECK(max_coeff_diff(renormalize_at(p, 0.0), {0.0, 1.0, 0.0, -1.0 / 3.0}) <= 1e-15);
  CHECK_THROWS_AS(renormalize_at(Poly({0.0, 0.0, 1.0}), 0.0), PreconditionError);
  CHECK_THROWS_AS(renormalize_at(Poly::constant(2.0), 0.0), DomainError);

  for (std::uint64_t t = 0; t < 200; ++t) {
    CounterRng rng(6, t);
    std::vector<Scalar> c(1 + 2 + t % 9);
    for (auto& x : c) x = rng.in_disk(2.0);
    const Poly r = renormalize_at(Poly(c), rng.in_disk(2.0));
    CHECK(r.coeff(0) == Scalar{0.0});
    CHECK(std::abs(r.coeff(1) - 1.0) <= 1e-12);
    CHECK(is_normalized(r));
  }
}

TEST_CASE("taylor_shift re-expands about a point") {
  const Poly p({1.0, -2.0, 0.5, 3.0});
  const Scalar z0{0.3, -1.1};
  const Poly s = taylor_shift(p, z0);
  for (const Scalar h : {Scalar{0.0}, Scalar{1.0, 1.0}, Scalar{-0.7, 0.2}}) {
    CHECK(test::dist(s(h), p(z0 + h)) <= 1e-12);
  }
}

TEST_CASE("root-form derivative matches the coefficient derivative") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    CounterRng rng(21, t);
    const int n = 2 + static_cast<int>(t % 11);
    std::vector<Scalar> roots(static_cast<std::size_t>(n));
    for (auto& r : roots) r = rng.in_disk(2.0);
    const Poly dp = derivative(from_roots(roots));
    const Scalar z = rng.in_disk(3.0);
    const Scalar a = derivative_root_form(roots, z);
    const Scalar b = dp(z);
    CHECK(test::dist(a, b) <= 1e-10 * std::max(1.0, dp.abs_eval(std::abs(z))));
    CHECK(test::dist(eval_root_form(roots, z), from_roots(roots)(z)) <=
          1e-10 * std::max(1.0, from_roots(roots).abs_eval(std::abs(z))));
  }
}

TEST_CASE("is_normalized") {
  CHECK(is_normalized(z_minus_cube_third()));
  CHECK_FALSE(is_normalized(Poly({0.0, 2.0, 1.0})));
  CHECK_FALSE(is_normalized(Poly({1e-6, 1.0, 1.0})));
}
