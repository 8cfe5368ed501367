#include <doctest.h>

#include <cmath>
#include <numbers>

#include "smalelab/errors.hpp"
#include "smalelab/rootfind.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"
#include "support.hpp"

using namespace smalelab;
using doctest::Approx;

TEST_CASE("normalized_from_critical_points") {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng(71, t);
    const auto crit = test::separated_roots(rng, 1 + static_cast<int>(t % 8), 3.0, 1e-2);
    bool near_zero = false;
    for (const auto& c : crit) near_zero = near_zero || std::abs(c) < 1e-2;
    if (near_zero) continue;
    const Poly p = normalized_from_critical_points(crit);
    CHECK(p.degree() == static_cast<int>(crit.size()) + 1);
    CHECK(is_normalized(p));
    CHECK(test::multiset_distance(expand_multiplicities(critical_points(p)), crit) <= 1e-8);
  }
  CHECK_THROWS_AS(normalized_from_critical_points(std::vector<Scalar>{}), DomainError);
  CHECK_THROWS_AS(normalized_from_critical_points(std::vector<Scalar>{1.0, 0.0}), DomainError);
}

TEST_CASE("critical_points_from_params") {
  const std::vector<double> params{0.0, 0.0, std::log(2.0), std::numbers::pi / 2};
  const auto c = critical_points_from_params(params);
  REQUIRE(c.size() == 2);
  CHECK(std::abs(c[0] - 1.0) <= 1e-15);
  CHECK(std::abs(c[1] - Scalar{0.0, 2.0}) <= 1e-15);
  CHECK_THROWS_AS(critical_points_from_params(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("extremal s0 for n = 2, 3, 4") {
  const SearchState two = search_extremal_s0(2);
  CHECK(std::abs(two.objective - 0.5) <= 1e-6);
  const SearchState three = search_extremal_s0(3);
  CHECK(three.objective >= 2.0 / 3.0 - 1e-3);
  CHECK(three.objective <= 2.0 / 3.0 + 1e-6);
  const SearchState four = search_extremal_s0(4);
  CHECK(four.objective >= 0.75 - 1e-3);
  CHECK(four.objective <= 0.75 + 1e-6);
  CHECK(s0(four.best_poly).quotient == Approx(four.objective).epsilon(1e-9));
}

TEST_CASE("search table is monotone") {
  SearchConfig cfg;
  cfg.restarts = 16;
  const SearchState s = search_extremal_s0(5, cfg);
  REQUIRE(s.table.size() == 16);
  CHECK(s.restarts_done == 16);
  for (std::size_t i = 0; i < s.table.size(); ++i) {
    CHECK(s.table[i].restart == static_cast<int>(i));
    CHECK(s.table[i].best_so_far >= s.table[i].objective - 0.0);
    if (i > 0) CHECK(s.table[i].best_so_far >= s.table[i - 1].best_so_far);
  }
  CHECK(s.table.back().best_so_far == s.objective);

  const SearchState d = search_extremal_ds0(4, cfg);
  for (std::size_t i = 1; i < d.table.size(); ++i) CHECK(d.table[i].best_so_far <= d.table[i - 1].best_so_far);
}

TEST_CASE("s0 search never beats the weak form or Beardon-Minda-Ng") {
  SearchConfig cfg;
  cfg.restarts = 6;
  cfg.max_evals = 3000;
  for (int n = 2; n <= 10; ++n) {
    const SearchState s = search_extremal_s0(n, cfg);
    CHECK(s.objective <= std::min(1.0, beardon_minda_ng_bound(n)) + 1e-6);
  }
}

TEST_CASE("extremal ds0") {
  CHECK(std::abs(search_extremal_ds0(2).objective - 0.5) <= 1e-6);
  const SearchState three = search_extremal_ds0(3);
  CHECK(three.objective > ng_zhang_floor(3));
  CHECK(three.objective == Approx(1.0 / 3.0).epsilon(1e-3));
  SearchConfig cfg;
  cfg.restarts = 32;
  CHECK(search_extremal_ds0(6, cfg).objective == Approx(1.0 / 6.0).epsilon(1e-2));
}

TEST_CASE("search argument checks and determinism") {
  CHECK_THROWS_AS(search_extremal_s0(1), DomainError);
  CHECK_THROWS_AS(search_extremal_s0(13), DomainError);
  SearchConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(search_extremal_s0(3, bad), DomainError);

  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 5;
  const SearchState a = search_extremal_s0(4, cfg);
  cfg.jobs = 4;
  const SearchState b = search_extremal_s0(4, cfg);
  CHECK(a.params == b.params);
  CHECK(a.objective == b.objective);
}

TEST_CASE("hunt_cstar: degree 2 is clean in every dimension") {
  for (int k : {1, 2, 3, 5}) {
    const HuntSummary s = hunt_cstar(2, k, 500);
    CHECK(s.certificates.empty());
    CHECK(s.sharp_failures == 0);
    CHECK(s.dual_failures == 0);
    CHECK(s.max_min_ratio == Approx(0.5).epsilon(1e-9));
    CHECK(s.min_max_ratio == Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("hunt_cstar: cubics with k = 1 are clean") {
  const HuntSummary s = hunt_cstar(3, 1, 10000);
  CHECK(s.certificates.empty());
  CHECK(s.max_min_ratio <= 2.0 / 3.0 + 1e-9);
  CHECK(s.min_max_ratio >= 1.0 / 3.0 - 1e-9);
}

TEST_CASE("hunt_cstar: cubics with k = 2 are recorded") {
  HuntConfig cfg;
  cfg.strong = true;
  const HuntSummary s = hunt_cstar(3, 2, 10000, cfg);
  CHECK(s.trials == 10000);
  CHECK(s.strong_implies_sharp_violations == 0);
  CHECK(s.weak_failures == 0);
  for (const auto& c : s.certificates) {
    CHECK(c.confirmed);
    CHECK_FALSE(c.violated.empty());
  }
  MESSAGE("n=3 k=2: max min_ratio " << s.max_min_ratio << ", min max_ratio " << s.min_max_ratio << ", "
                                    << s.certificates.size() << " certificates");
}

TEST_CASE("hunt_cstar determinism and limits") {
  HuntConfig cfg;
  cfg.seed = 3;
  const HuntSummary a = hunt_cstar(4, 2, 300, cfg);
  cfg.jobs = 3;
  const HuntSummary b = hunt_cstar(4, 2, 300, cfg);
  CHECK(a.max_min_ratio == b.max_min_ratio);
  CHECK(a.min_max_ratio == b.min_max_ratio);
  CHECK(a.dual_failures == b.dual_failures);

  CHECK_THROWS_AS(hunt_cstar(4, 13, 1), CapacityError);
  CHECK_THROWS_AS(hunt_cstar(1, 1, 1), DomainError);
  CHECK(hunt_cstar(3, 1, 0).trials == 0);
}

TEST_CASE("random_cstar_trial keeps z off the critical coordinates") {
  HuntConfig cfg;
  for (std::uint64_t t = 0; t < 100; ++t) {
    CriticalSet crit;
    auto [P, z] = random_cstar_trial(4, 3, 72, t, cfg, &crit);
    CHECK(P.degree() == 4);
    CHECK(z.dim() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
      for (const auto& w : crit.per_coordinate()[c].roots) CHECK(std::abs(z[c] - w) >= cfg.z_margin);
    }
  }
}
