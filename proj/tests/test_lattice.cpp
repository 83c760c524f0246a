#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "cca/errors.hpp"
#include "cca/lattice.hpp"

using namespace cca;

TEST_CASE("make_cavity_array validates its inputs") {
  CHECK_THROWS_AS(make_cavity_array(1, {}, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(0, {}, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0}, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0, 2.0, 3.0}, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0, 0.0}, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0, -0.5}, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0, std::numeric_limits<double>::quiet_NaN()}, 1.0),
                  InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0, 2.0}, -0.1), InvalidConfigError);
  CHECK_THROWS_AS(make_cavity_array(3, {1.0, 2.0}, std::numeric_limits<double>::infinity()),
                  InvalidConfigError);

  const CavityArray ok = make_cavity_array(2, {0.5}, 0.0);
  CHECK(ok.n_cavities == 2);
  CHECK(ok.omega == 0.0);
  CHECK(ok.couplings == std::vector<double>{0.5});
}

TEST_CASE("build_uniform repeats one coupling strength") {
  const CavityArray array = build_uniform(4, 0.7, 0.3);
  CHECK(array.n_cavities == 4);
  CHECK(array.omega == doctest::Approx(0.3));
  REQUIRE(array.couplings.size() == 3);
  for (const double j : array.couplings) {
    CHECK(j == doctest::Approx(0.7));
  }
  CHECK_THROWS_AS(build_uniform(4, 0.0, 0.3), InvalidConfigError);
}

TEST_CASE("build_modulated reproduces the engineered profile") {
  const CavityArray array = build_modulated(8, 0, 1.0);
  const std::vector<double> expected = {std::sqrt(7.0),  std::sqrt(12.0), std::sqrt(15.0),
                                        4.0,             std::sqrt(15.0), std::sqrt(12.0),
                                        std::sqrt(7.0)};
  REQUIRE(array.couplings.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(array.couplings[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
  CHECK(is_mirror_symmetric(array));
}

TEST_CASE("build_modulated strengthens odd bonds with the family index") {
  // Bond b (1-based): even bonds keep sqrt(b (n-b)); odd bonds become
  // sqrt((b + 2k)(n - b + 2k)).
  const int n = 8;
  const int k = 1;
  const CavityArray array = build_modulated(n, k, 1.0);
  REQUIRE(array.couplings.size() == 7);
  for (int bond = 1; bond <= 7; ++bond) {
    const double expected =
        (bond % 2 == 0) ? std::sqrt(static_cast<double>(bond) * (n - bond))
                        : std::sqrt(static_cast<double>(bond + 2 * k) * (n - bond + 2 * k));
    CHECK(array.couplings[static_cast<std::size_t>(bond - 1)] ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(array.couplings[0] == doctest::Approx(std::sqrt(27.0)).epsilon(1e-12));
  CHECK(array.couplings[2] == doctest::Approx(std::sqrt(35.0)).epsilon(1e-12));
  CHECK(is_mirror_symmetric(array));
  CHECK_THROWS_AS(build_modulated(8, -1, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(build_modulated(1, 0, 1.0), InvalidConfigError);
}

TEST_CASE("build_ballistic weakens only the boundary bonds") {
  const CavityArray array = build_ballistic(8, 0.3, 1.0, 1.0);
  const std::vector<double> expected = {0.3, 1.0, 1.0, 1.0, 1.0, 1.0, 0.3};
  REQUIRE(array.couplings.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(array.couplings[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
  CHECK(is_mirror_symmetric(array));

  // The end bonds must be strictly weaker than the bulk.
  CHECK_THROWS_AS(build_ballistic(8, 1.0, 1.0, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(build_ballistic(8, 1.5, 1.0, 1.0), InvalidConfigError);
  CHECK_THROWS_AS(build_ballistic(8, 0.0, 1.0, 1.0), InvalidConfigError);

  const CavityArray tiny = build_ballistic(2, 0.3, 1.0, 0.5);
  CHECK(tiny.couplings == std::vector<double>{0.3});
}

TEST_CASE("is_mirror_symmetric compares the coupling pattern to its reverse") {
  CHECK(is_mirror_symmetric(make_cavity_array(4, {1.0, 2.0, 1.0}, 0.0)));
  CHECK(is_mirror_symmetric(make_cavity_array(2, {0.4}, 0.0)));
  CHECK_FALSE(is_mirror_symmetric(make_cavity_array(4, {1.0, 2.0, 1.5}, 0.0)));
  CHECK_FALSE(is_mirror_symmetric(make_cavity_array(5, {0.7, 1.3, 0.5, 1.1}, 0.0)));
}
