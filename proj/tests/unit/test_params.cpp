#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "icrt/params.hpp"

using namespace icrt;

TEST_SUITE("params") {
  TEST_CASE("brownian has no atoms") {
    const auto t = make_theta(ThetaFamily::brownian(), 0);
    CHECK(t.theta0 == 1.0);
    CHECK(t.size() == 0);
    CHECK(t.residual_square_mass == 0.0);
    CHECK(validate(t, ThetaFamily::brownian()).ok());
  }

  TEST_CASE("harmonic weights and residual") {
    const auto f = ThetaFamily::harmonic();
    const double c = std::sqrt(6.0) / std::numbers::pi;
    CHECK(f.normalization() == doctest::Approx(c).epsilon(1e-15));
    CHECK(f.normalization() == doctest::Approx(0.779697).epsilon(1e-6));
    const auto t = make_theta(f, 3);
    REQUIRE(t.size() == 3);
    CHECK(t.theta0 == 0.0);
    for (int i = 1; i <= 3; ++i) CHECK(t.weights[i - 1] == doctest::Approx(c / i).epsilon(1e-15));
    // residual square mass against 1 - c^2 (1 + 1/4 + 1/9)
    const double residual = 1.0 - c * c * (1.0 + 0.25 + 1.0 / 9.0);
    CHECK(std::abs(t.residual_square_mass - residual) < 1e-12);
    CHECK(t.residual_linear_mass == TailKind::divergent);
    const auto v = validate(t, f);
    CHECK(v.ok());
    CHECK(v.item("theta0_or_divergent") == Status::pass);
  }

  TEST_CASE("power law normalization against zeta") {
    for (double alpha : {0.55, 2.0 / 3.0, 0.8, 0.95}) {
      const auto f = ThetaFamily::power_law(alpha);
      const double c = 1.0 / std::sqrt(boost::math::zeta(2.0 * alpha));
      CHECK(std::abs(f.normalization() - c) < 1e-12);
    }
    CHECK_THROWS_AS(ThetaFamily::power_law(0.5), std::invalid_argument);
    CHECK_THROWS_AS(ThetaFamily::power_law(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ThetaFamily::power_law(0.3), std::invalid_argument);
  }

  TEST_CASE("zeta tail against boost") {
    for (double s : {4.0 / 3.0, 2.0, 1.1, 1.9}) {
      for (std::size_t start : {1u, 2u, 4u, 100u, 100000u}) {
        double head = 0.0;
        for (std::size_t i = start - 1; i >= 1; --i) head += std::pow(static_cast<double>(i), -s);
        const double expect = boost::math::zeta(s) - head;
        CHECK(std::abs(zeta_tail(s, start) - expect) < 1e-10 * std::max(1.0, expect));
      }
    }
  }

  TEST_CASE("explicit family") {
    const double h = std::sqrt(0.5);
    const auto f = ThetaFamily::explicit_weights(h, {h});
    const auto t = make_theta(f, 1);
    CHECK(t.theta0 == h);
    REQUIRE(t.size() == 1);
    CHECK(t.weights[0] == h);
    CHECK(t.residual_square_mass == 0.0);
    CHECK(validate(t, f).ok());

    CHECK_THROWS_AS(ThetaFamily::explicit_weights(0.5, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(ThetaFamily::explicit_weights(0.5, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ThetaFamily::explicit_weights(0.0, {1.0, 0.0}), std::invalid_argument);
  }

  TEST_CASE("explicit list with theta0 = 0 fails the divergence condition") {
    const auto f = ThetaFamily::explicit_weights(0.0, {1.0});
    const auto v = validate(make_theta(f, 1), f);
    CHECK_FALSE(v.ok());
    CHECK(v.item("theta0_or_divergent") == Status::fail);
    CHECK(v.item("linear_tail") == Status::unknown);
  }

  TEST_CASE("square mass identity and ordering for every K") {
    for (const auto& f : {ThetaFamily::harmonic(), ThetaFamily::power_law(0.55), ThetaFamily::power_law(2.0 / 3.0),
                          ThetaFamily::power_law(0.95)}) {
      for (std::size_t K : {0u, 1u, 2u, 10u, 1000u, 100000u}) {
        const auto t = make_theta(f, K);
        double sq = t.theta0 * t.theta0 + t.residual_square_mass;
        for (std::size_t i = 0; i < t.size(); ++i) {
          sq += t.weights[i] * t.weights[i];
          CHECK(t.weights[i] > 0.0);
          if (i > 0) CHECK(t.weights[i] <= t.weights[i - 1]);
        }
        CHECK(std::abs(sq - 1.0) < 1e-9);
        CHECK(validate(t, f).ok());
      }
    }
  }

  TEST_CASE("make_theta is deterministic to the bit") {
    const auto a = make_theta(ThetaFamily::power_law(0.7), 5000);
    const auto b = make_theta(ThetaFamily::power_law(0.7), 5000);
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.weights.data(), b.weights.data(), a.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(&a.residual_square_mass, &b.residual_square_mass, sizeof(double)) == 0);
  }
}
