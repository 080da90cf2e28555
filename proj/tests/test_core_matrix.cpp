#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "secant/core_matrix.hpp"
#include "support.hpp"

using namespace secant;
using Catch::Approx;

TEST_CASE("cyclic matrix layout", "[core_matrix]") {
  SECTION("unit gains") {
    Eigen::Matrix3d expected;
    // clang-format off
    expected << -1,  0, -1,
                 1, -1,  0,
                 0,  1, -1;
    // clang-format on
    CHECK(build_cyclic_matrix({1, 1, 1}).entries() == Eigen::MatrixXd(expected));
  }
  SECTION("single block closes on itself") {
    const auto a = build_cyclic_matrix({5});
    REQUIRE(a.n() == 1);
    CHECK(a(0, 0) == -6.0);
  }
  SECTION("direct placement") {
    Eigen::Matrix3d expected;
    // clang-format off
    expected << -1,  0, -1,
                 1, -1,  0,
                 0,  8, -1;
    // clang-format on
    CHECK(build_cyclic_matrix({1, 1, 8}).entries() == Eigen::MatrixXd(expected));
  }
  SECTION("matches the literal construction for random gains") {
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto g = oracle::gains_near_boundary(rng, n);
      CHECK(build_cyclic_matrix(GainVector(g)).entries() == oracle::cyclic(g));
    }
  }
}

TEST_CASE("gain validation", "[core_matrix]") {
  CHECK_THROWS_AS(GainVector(std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_WITH(GainVector({-1.0, 2.0}), "gains must be positive");
  CHECK_THROWS_AS(GainVector({1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(GainVector({std::numeric_limits<double>::quiet_NaN()}), InvalidArgument);
  CHECK_THROWS_AS(GainVector({std::numeric_limits<double>::infinity()}), InvalidArgument);
}

TEST_CASE("secant report", "[core_matrix]") {
  SECTION("unit gains pass with margin 1/2") {
    const auto rep = secant_report({1, 1, 1});
    CHECK(rep.n == 3);
    CHECK(rep.product == 1.0);
    CHECK(rep.bound() == Approx(8.0).epsilon(1e-14));
    CHECK(rep.margin == Approx(0.5).epsilon(1e-15));
    CHECK(rep.satisfied);
  }
  SECTION("boundary at n = 3 is not satisfied") {
    const auto rep = secant_report({2, 2, 2});
    CHECK(rep.product == 8.0);
    CHECK(rep.margin == 0.0);
    CHECK_FALSE(rep.satisfied);
  }
  SECTION("boundary at n = 4 is not satisfied") {
    const double s = std::sqrt(2.0);
    const auto rep = secant_report({s, s, s, s});
    CHECK(rep.product == Approx(4.0).epsilon(1e-15));
    CHECK(std::abs(rep.margin) <= 1e-15);
    CHECK_FALSE(rep.satisfied);
  }
  SECTION("single block always passes") {
    const auto rep = secant_report({5});
    CHECK(rep.margin == 6.0);
    CHECK(rep.satisfied);
    CHECK(std::isinf(rep.bound()));
  }
  SECTION("two blocks always pass, even with huge gains") {
    const auto rep = secant_report({1e150, 1e150});
    CHECK(rep.margin == 1.0);
    CHECK(rep.satisfied);
  }
  SECTION("bound form agrees with margin form for n >= 3") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 3; n <= 12; ++n) {
      for (int trial = 0; trial < 50; ++trial) {
        const auto rep = secant_report(GainVector(oracle::gains_near_boundary(rng, n)));
        if (std::abs(rep.margin) < 1e-9) continue;
        CHECK(rep.satisfied == (rep.product < rep.bound()));
      }
    }
  }
}

TEST_CASE("hurwitz margin closed form", "[core_matrix]") {
  CHECK(hurwitz_margin({2, 2, 2}) == 0.0);
  CHECK(hurwitz_margin({1, 1, 1}) == Approx(-0.5).epsilon(1e-15));
  CHECK(hurwitz_margin({5}) == -6.0);
  CHECK(hurwitz_margin({3, 0.5}) == -1.0);

  SECTION("agrees with a dense eigensolver") {
    std::mt19937_64 rng(2024);
    for (std::size_t n = 1; n <= 12; ++n) {
      for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::gains_near_boundary(rng, n);
        const double dense = oracle::max_real_eig(oracle::cyclic(g));
        CHECK(hurwitz_margin(GainVector(g)) == Approx(dense).margin(1e-10));
      }
    }
  }
}

TEST_CASE("secant condition characterizes Hurwitz stability", "[core_matrix][property]") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const GainVector g(oracle::gains_near_boundary(rng, n));
      const auto rep = secant_report(g);
      if (std::abs(rep.margin) < 1e-6) continue;
      CHECK(rep.satisfied == (oracle::max_real_eig(oracle::cyclic(g.vector())) < 0.0));
      CHECK(rep.satisfied == (hurwitz_margin(g) < 0.0));
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("secant report is invariant under cyclic permutation", "[core_matrix][property]") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 10; ++n) {
    auto g = oracle::gains_near_boundary(rng, n);
    const auto base = secant_report(GainVector(g));
    for (std::size_t s = 1; s < n; ++s) {
      std::rotate(g.begin(), g.begin() + 1, g.end());
      const auto rot = secant_report(GainVector(g));
      CHECK(rot.n == base.n);
      CHECK(rot.product == Approx(base.product).epsilon(1e-14));
      CHECK(rot.margin == Approx(base.margin).margin(1e-14));
    }
  }
}

TEST_CASE("cos(pi/n) table matches libm", "[core_matrix]") {
  for (std::size_t n = 1; n <= 40; ++n) {
    CHECK(cos_pi_over(n) == Approx(std::cos(3.14159265358979323846 / static_cast<double>(n))).margin(1e-15));
  }
}
