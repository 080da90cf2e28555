#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "secant/certificate.hpp"
#include "secant/spectral.hpp"
#include "support.hpp"

using namespace secant;
using Catch::Approx;

TEST_CASE("scaling delta", "[certificate]") {
  SECTION("unit gains") {
    const auto d = build_delta({1, 1, 1});
    CHECK(d.r == 1.0);
    CHECK(d.diag == std::vector<double>{1.0, -1.0, 1.0});
  }
  SECTION("gains (4,1,1)") {
    const auto d = build_delta({4, 1, 1});
    const double r = std::cbrt(4.0);
    CHECK(d.r == Approx(1.587401051968199).epsilon(1e-14));
    CHECK(d.diag[0] == 1.0);
    CHECK(d.diag[1] == Approx(-1.0 / r).epsilon(1e-14));
    CHECK(d.diag[1] == Approx(-0.629960524947437).epsilon(1e-12));
    CHECK(d.diag[2] == Approx(0.396850262992050).epsilon(1e-12));
  }
  SECTION("single block") { CHECK(build_delta({3.3}).diag == std::vector<double>{1.0}); }

  SECTION("maps A onto the normalized cyclic matrix with alternating signs") {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto g = oracle::gains_near_boundary(rng, n);
      const auto delta = build_delta(GainVector(g));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::signbit(delta.diag[i]) == (i % 2 == 1));
      const Eigen::MatrixXd dm = delta.matrix();
      const Eigen::MatrixXd transformed = -dm.inverse() * oracle::cyclic(g) * dm;
      const Eigen::MatrixXd structure = normalized_cyclic_matrix(delta.r, n);
      CHECK((transformed - structure).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("diagonal certificate construction", "[certificate]") {
  SECTION("unit gains give D = I") {
    const auto c = build_certificate({1, 1, 1});
    CHECK(c.d == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(c.negativity_margin == Approx(1.0).epsilon(1e-13));
    CHECK(c.epsilon() == Approx(0.5).epsilon(1e-13));
  }
  SECTION("gains (4,1,1)") {
    const auto c = build_certificate({4, 1, 1});
    CHECK(c.d[0] == 1.0);
    CHECK(c.d[1] == Approx(2.519842099789746).epsilon(1e-12));
    CHECK(c.d[2] == Approx(6.349604207872798).epsilon(1e-12));
    // Frozen from an independent dense symmetric eigensolve of -(DA + A^T D).
    CHECK(c.negativity_margin == Approx(0.5288813112275542).epsilon(1e-12));
    // Removing the Delta^{-1} congruence factors recovers twice the
    // symmetric-part margin of the normalized matrix, 2(1 - r cos(pi/3)).
    const auto a = oracle::cyclic({4, 1, 1});
    const Eigen::MatrixXd dd = Eigen::Map<const Eigen::VectorXd>(c.d.data(), 3).asDiagonal();
    const Eigen::MatrixXd neg = -(dd * a + a.transpose() * dd);
    const Eigen::MatrixXd undistorted = c.delta.matrix() * neg * c.delta.matrix();
    CHECK(oracle::min_sym_eig(undistorted) == Approx(0.412598948031801).epsilon(1e-12));
    CHECK(oracle::min_sym_eig(undistorted) == Approx(2.0 * symmetric_part_min_eig(c.delta.r, 3)).epsilon(1e-12));
  }
  SECTION("boundary gains are rejected with the report") {
    try {
      (void)build_certificate({2, 2, 2});
      FAIL("expected SecantViolated");
    } catch (const SecantViolated& e) {
      CHECK(e.name() == "SecantViolated");
      CHECK(e.report().product == 8.0);
      CHECK_FALSE(e.report().satisfied);
    }
  }
  SECTION("a tolerance above the margin is a verification failure") {
    CHECK_THROWS_AS(build_certificate({1, 1, 1}, 10.0), VerificationFailed);
  }
  SECTION("single block") {
    const auto c = build_certificate({5});
    CHECK(c.d == std::vector<double>{1.0});
    CHECK(c.negativity_margin == 12.0);
  }
}

TEST_CASE("independent certificate verification", "[certificate]") {
  const auto a = build_cyclic_matrix({1, 1, 1});
  CHECK(verify_certificate(a, std::vector<double>{1, 1, 1}) == Approx(1.0).epsilon(1e-13));
  CHECK(verify_certificate(a, std::vector<double>{1, 100, 1}) < 0.0);
  Eigen::MatrixXd scalar(1, 1);
  scalar << -2.0;
  CHECK(verify_certificate(scalar, std::vector<double>{3.0}) == 12.0);

  CHECK_THROWS_AS(verify_certificate(a, std::vector<double>{1, 1}), DimensionMismatch);
  CHECK_THROWS_AS(verify_certificate(a, std::vector<double>{1, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(verify_certificate(Eigen::MatrixXd::Ones(2, 3), std::vector<double>{1, 1}), DimensionMismatch);
}

TEST_CASE("IFP shortage threshold", "[certificate]") {
  CHECK(ifp_threshold({1, 1}) == 0.125);
  CHECK(ifp_threshold({1}) == 0.0);
  CHECK(ifp_threshold({2, 2, 2}) == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("IFP certificate", "[certificate]") {
  SECTION("single block, delta = 1") {
    const auto rep = ifp_certificate({1}, 1.0);
    CHECK(rep.d_tilde == std::vector<double>{1.0, 1.0});
    CHECK(rep.negativity_margin == Approx(2.0).epsilon(1e-13));
  }
  SECTION("gains (1,1), delta = 0.2") {
    const auto rep = ifp_certificate({1, 1}, 0.2);
    CHECK(rep.delta_threshold == 0.125);
    CHECK(rep.d_tilde.size() == 3);
    CHECK(rep.d_tilde[0] == 0.2);
    CHECK(rep.negativity_margin > 0.0);
    CHECK(rep.epsilon == Approx(0.5 * rep.negativity_margin));
    CHECK(secant_report(ifp_augmented_gains({1, 1}, 0.2)).product == Approx(5.0).epsilon(1e-15));
    CHECK(rep.storage_weights() == std::vector<double>(rep.d_tilde.begin() + 1, rep.d_tilde.end()));
    // The reported weights certify the augmented matrix on their own.
    CHECK(oracle::min_sym_eig([&] {
            const auto at = oracle::cyclic({5.0, 1.0, 1.0});
            const Eigen::MatrixXd dd = Eigen::Map<const Eigen::VectorXd>(rep.d_tilde.data(), 3).asDiagonal();
            return Eigen::MatrixXd(-(dd * at + at.transpose() * dd));
          }()) == Approx(rep.negativity_margin).epsilon(1e-10));
  }
  SECTION("below the threshold") {
    try {
      (void)ifp_certificate({1, 1}, 0.1);
      FAIL("expected ThresholdViolated");
    } catch (const ThresholdViolated& e) {
      CHECK(e.threshold() == 0.125);
      CHECK(e.delta() == 0.1);
    }
    CHECK_THROWS_AS(ifp_certificate({1, 1}, 0.125), ThresholdViolated);
  }
  SECTION("threshold matches the augmented secant boundary") {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 8; ++n) {
      const GainVector g(oracle::gains_near_boundary(rng, n));
      const double t = ifp_threshold(g);
      CHECK_NOTHROW(ifp_certificate(g, t * 1.05 + 1e-12));
      if (t > 0.0) CHECK_FALSE(secant_report(ifp_augmented_gains(g, t * 0.95)).satisfied);
    }
  }
}

TEST_CASE("popov gain composition", "[certificate]") {
  const auto g = popov_gains({1, 1, 2}, 3.0);
  CHECK(g.vector() == std::vector<double>{1, 1, 6});
  CHECK(secant_report(g).satisfied);
  CHECK_FALSE(secant_report(popov_conservative_gains({1, 1, 2}, 3.0)).satisfied);
  CHECK(popov_gains({1}, 1.0).vector() == std::vector<double>{1});
  const auto two = popov_gains({2, 2}, 2.0);
  CHECK(two.vector() == std::vector<double>{2, 4});
  CHECK(secant_report(two).margin == 1.0);
  CHECK_THROWS_AS(popov_gains({1, 1}, 0.0), InvalidArgument);

  SECTION("relaxed condition is kappa gamma_1...gamma_n < sec(pi/n)^n") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> kd(0.2, 5.0);
    for (std::size_t n = 3; n <= 10; ++n) {
      for (int trial = 0; trial < 30; ++trial) {
        const GainVector base(oracle::gains_near_boundary(rng, n));
        const double kappa = kd(rng);
        const double lhs = kappa * base.product();
        const double rhs = std::pow(1.0 / std::cos(M_PI / static_cast<double>(n)), static_cast<double>(n));
        if (std::abs(lhs / rhs - 1.0) < 1e-9) continue;
        CHECK(secant_report(popov_gains(base, kappa)).satisfied == (lhs < rhs));
      }
    }
  }
}

TEST_CASE("certificate properties on random gains", "[certificate][property]") {
  std::mt19937_64 rng(1234);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = oracle::gains_near_boundary(rng, n);
      const GainVector gv(g);
      const auto rep = secant_report(gv);
      if (rep.margin > 1e-3) {
        const auto c = build_certificate(gv);
        CHECK(c.negativity_margin > 0.0);
        for (double d : c.d) CHECK(d > 0.0);

        // Congruence identity.
        const auto a = oracle::cyclic(g);
        const Eigen::MatrixXd dm = c.delta.matrix();
        const Eigen::MatrixXd dinv = dm.inverse();
        const Eigen::MatrixXd dd = Eigen::Map<const Eigen::VectorXd>(c.d.data(), static_cast<Eigen::Index>(n)).asDiagonal();
        const Eigen::MatrixXd lhs = dd * a + a.transpose() * dd;
        const Eigen::MatrixXd rhs = dinv * (dinv * a * dm + dm * a.transpose() * dinv) * dinv;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);

        // Undistorted margin equals twice the closed-form symmetric-part margin.
        CHECK(oracle::min_sym_eig(-(dm * lhs * dm)) == Approx(2.0 * symmetric_part_min_eig(rep.r, n)).margin(1e-10));

        // Row scaling by 1/tau keeps diagonal stability, certified by D T^{-1}.
        std::uniform_real_distribution<double> tau(0.1, 10.0);
        std::vector<double> taus(n);
        for (auto& t : taus) t = tau(rng);
        const Eigen::MatrixXd ta = time_constant_matrix(gv, taus);
        const auto w = time_constant_weights(c.d, taus);
        CHECK(verify_certificate(ta, w) == Approx(c.negativity_margin).epsilon(1e-9));
      } else if (rep.margin < -1e-3) {
        CHECK_THROWS_AS(build_certificate(gv), SecantViolated);
        CHECK(hurwitz_margin(gv) > 0.0);
        CHECK(oracle::max_real_eig(oracle::cyclic(g)) > 0.0);
      }
    }
  }
}
