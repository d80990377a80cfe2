#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "icrt/measure.hpp"
#include "oracles/series_oracle.hpp"

using namespace icrt;

namespace {

struct Frozen {
  double l, mass, psi;
};

// 40-digit reference values, computed with an independent multiprecision
// evaluation and frozen here.
const Frozen kHarmonic[] = {
    {0.5, 0.43638941372352550018, 0.11409827171845522193},
    {10.0, 2.5014311751700621625, 17.717008710729198055},
    {1000.0, 6.0920334429140648799, 5312.836641680388772},
};
const Frozen kPower23[] = {
    {0.5, 0.47185673906287229513, 0.1202311025676588071},
    {10.0, 5.1426817252072980527, 30.48559886166493565},
    {1000.0, 63.035873708890824451, 41594.475694375099178},
};
constexpr double kHarmonicX4 = 68.34839918736909106;
constexpr double kPower23X4 = 6.7642820371128589196;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("measure") {
  TEST_CASE("brownian closed forms") {
    const auto f = ThetaFamily::brownian();
    for (double l : {0.0, 0.1, 1.0, 7.5, 1e6}) {
      CHECK(expected_mass(f, l) == doctest::Approx(l).epsilon(1e-15));
      CHECK(psi(f, l) == doctest::Approx(l * l / 2).epsilon(1e-15));
    }
    CHECK(inverse_expected_mass(f, 4.0) == 4.0);
  }

  TEST_CASE("frozen reference values") {
    for (const auto& r : kHarmonic) {
      CHECK(rel(expected_mass(ThetaFamily::harmonic(), r.l), r.mass) < 1e-9);
      CHECK(rel(psi(ThetaFamily::harmonic(), r.l), r.psi) < 1e-9);
    }
    for (const auto& r : kPower23) {
      CHECK(rel(expected_mass(ThetaFamily::power_law(2.0 / 3.0), r.l), r.mass) < 1e-9);
      CHECK(rel(psi(ThetaFamily::power_law(2.0 / 3.0), r.l), r.psi) < 1e-9);
    }
    CHECK(rel(inverse_expected_mass(ThetaFamily::harmonic(), 4.0), kHarmonicX4) < 1e-9);
    CHECK(rel(inverse_expected_mass(ThetaFamily::power_law(2.0 / 3.0), 4.0), kPower23X4) < 1e-9);
  }

  TEST_CASE("series against brute-force brackets") {
    for (long double alpha : {1.0L, 0.6L, 0.9L}) {
      const auto f = alpha == 1.0L ? ThetaFamily::harmonic() : ThetaFamily::power_law(static_cast<double>(alpha));
      for (double l : {0.01, 1.0, 37.0}) {
        for (auto what : {oracle::Series::mass, oracle::Series::psi}) {
          const auto b = oracle::series(alpha, l, what, 10000000);
          const double got = what == oracle::Series::mass ? expected_mass(f, l) : psi(f, l);
          const double slack = 1e-10 * std::abs(b.mid());
          CAPTURE(alpha);
          CAPTURE(l);
          CHECK(b.width() < 1e-8 * std::abs(b.mid()));
          CHECK(got >= static_cast<double>(b.lo) - slack);
          CHECK(got <= static_cast<double>(b.hi) + slack);
        }
      }
    }
  }

  TEST_CASE("inverse against bisection") {
    for (double m : {0.5, 4.0, 8.0}) {
      const double ref = oracle::inverse_by_bisection(0.75L, m, 1000000);
      CHECK(rel(inverse_expected_mass(ThetaFamily::power_law(0.75), m), ref) < 1e-8);
    }
  }

  TEST_CASE("inverse round trip and monotonicity") {
    for (const auto& f : {ThetaFamily::harmonic(), ThetaFamily::power_law(0.55), ThetaFamily::power_law(0.95),
                          ThetaFamily::explicit_weights(std::sqrt(0.5), {std::sqrt(0.5)})}) {
      double prev = 0.0;
      for (double m : {0.25, 1.0, 3.0, 10.0, 30.0}) {
        const double x = inverse_expected_mass(f, m);
        CHECK(x > prev);
        CHECK(x >= m);
        CHECK(rel(expected_mass(f, x), m) < 1e-8);
        prev = x;
      }
    }
    // harmonic X_{2^n} overflows a double quickly but its logarithm does not
    const double u = log_inverse_expected_mass(ThetaFamily::harmonic(), 1024.0);
    CHECK(std::isfinite(u));
    CHECK(u > 700.0);
    CHECK_THROWS_AS(inverse_expected_mass(ThetaFamily::harmonic(), 1024.0), std::runtime_error);
    CHECK_THROWS_AS(inverse_expected_mass(ThetaFamily::harmonic(), -1.0), std::invalid_argument);
  }

  TEST_CASE("sandwich psi <= l E <= 2 psi") {
    for (const auto& f : {ThetaFamily::harmonic(), ThetaFamily::power_law(2.0 / 3.0), ThetaFamily::brownian()}) {
      for (double l : {1e-3, 0.3, 3.0, 300.0, 3e5}) {
        const double p = psi(f, l), e = l * expected_mass(f, l);
        CHECK(p <= e * (1 + 1e-12));
        CHECK(e <= 2 * p * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("compactness criterion") {
    const auto b = compactness_criterion(ThetaFamily::brownian(), 16);
    CHECK(b.verdict == Verdict::compact);
    CHECK(b.sandwich_ok);
    CHECK(b.quadrature_consistent);
    const auto p = compactness_criterion(ThetaFamily::power_law(2.0 / 3.0), 16);
    CHECK(p.verdict == Verdict::compact);
    CHECK(p.sandwich_ok);
    CHECK(p.quadrature_consistent);
    // harmonic terms grow like 2^n / c / 2^n: the ratio tends to 1
    const auto h = compactness_criterion(ThetaFamily::harmonic(), 16);
    CHECK(h.verdict == Verdict::noncompact);
    CHECK(h.sandwich_ok);
    REQUIRE(h.terms.size() == 16);
    CHECK(h.partial_sum > 16.0);
    CHECK_THROWS_AS(compactness_criterion(ThetaFamily::brownian(), 4), std::invalid_argument);
  }

  TEST_CASE("mu realization queries") {
    MuRealization mu(0.5, {3.0, 1.0, 2.0}, {0.1, 0.3, 0.2}, 10.0);
    CHECK(mu.atoms() == 3);
    CHECK(mu.positions() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(mu.mass(0.0) == 0.0);
    CHECK(mu.mass(1.0) == doctest::Approx(0.8));
    CHECK(mu.mass(2.5) == doctest::Approx(1.75));
    CHECK(mu.mass_between(1.0, 2.0) == doctest::Approx(0.7));
    CHECK(mu.atoms_upto(2.0) == 2);
    CHECK(mu.atoms_below(2.0) == 1);
    CHECK_THROWS_AS(mu.mass(11.0), std::out_of_range);
    CHECK_THROWS_AS(mu.mass(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(MuRealization(-1.0, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(MuRealization(0.0, {1.0}, {0.0}), std::invalid_argument);
  }

  TEST_CASE("sampled mass matches its expectation") {
    const auto f = ThetaFamily::power_law(2.0 / 3.0);
    const auto theta = make_theta(f, 200000);
    const double l = 20.0;
    const int R = 2000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < R; ++r) {
      Rng rng = Rng::stream(11, "mu-test", r);
      const double m = sample_mu(theta, rng, l).mass(l);
      sum += m;
      sum2 += m * m;
    }
    const double mean = sum / R, sd = std::sqrt((sum2 / R - mean * mean) / R);
    // expectation of the K sampled atoms; the residual tail carries about l * residual_square_mass
    double truncated = 0.0;
    for (double w : theta.weights) truncated += -w * std::expm1(-w * l);
    CHECK(std::abs(mean - truncated) < 5 * sd);
    CHECK(expected_mass(f, l) - truncated == doctest::Approx(l * theta.residual_square_mass).epsilon(0.05));
  }

  TEST_CASE("horizon sampling agrees with full sampling in law") {
    const auto theta = make_theta(ThetaFamily::harmonic(), 5000);
    const double L = 8.0;
    const int R = 4000;
    std::vector<double> counts_h(R), counts_f(R);
    for (int r = 0; r < R; ++r) {
      Rng a = Rng::stream(3, "h", r), b = Rng::stream(3, "f", r);
      counts_h[r] = static_cast<double>(sample_mu(theta, a, L).atoms());
      const auto full = sample_mu(theta, b);
      counts_f[r] = static_cast<double>(full.atoms_upto(L));
    }
    double ex = 0.0;
    for (double w : theta.weights) ex += -std::expm1(-w * L);
    double mh = 0, mf = 0;
    for (int r = 0; r < R; ++r) {
      mh += counts_h[r];
      mf += counts_f[r];
    }
    mh /= R;
    mf /= R;
    const double se = std::sqrt(ex / R);
    CHECK(std::abs(mh - ex) < 5 * se);
    CHECK(std::abs(mf - ex) < 5 * se);
  }

  TEST_CASE("sampling is reproducible") {
    const auto theta = make_theta(ThetaFamily::power_law(0.8), 10000);
    Rng a(99), b(99);
    const auto x = sample_mu(theta, a, 50.0), y = sample_mu(theta, b, 50.0);
    CHECK(x.positions() == y.positions());
    CHECK(x.weights() == y.weights());
  }
}
