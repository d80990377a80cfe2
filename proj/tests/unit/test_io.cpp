#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "icrt/io.hpp"
#include "json.hpp"

using namespace icrt;

TEST_SUITE("io") {
  TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1e300) == "1e+300");
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
      const double v = std::ldexp(rng.uniform(), static_cast<int>(rng.below(200)) - 100);
      CHECK(std::stod(format_double(v)) == v);
    }
  }

  TEST_CASE("cuts csv round trip") {
    const auto theta = make_theta(ThetaFamily::power_law(0.7), 2000);
    Rng mr(1), cr(2);
    const auto mu = sample_mu(theta, mr);
    const auto cuts = sample_cuts_new(mu, StopRule::cuts(200), cr);
    std::stringstream ss;
    write_cuts_csv(ss, cuts);
    const std::string text = ss.str();
    CHECK(text.rfind("#schema_version=1\ni,Y,Z,l,m,M\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    const auto back = read_cuts_csv(ss);
    CHECK(back.cuts == cuts.cuts);
    CHECK(back.glue == cuts.glue);
    CHECK(back.seg_weight == cuts.seg_weight);
    CHECK(back.cum_weight == cuts.cum_weight);
    std::stringstream again;
    write_cuts_csv(again, back);
    CHECK(again.str() == text);
  }

  TEST_CASE("csv without weights and malformed files") {
    std::stringstream ok("#schema_version=1\ni,Y,Z,l,m,M\n1,1,0,1,,\n2,2.5,0.5,1.5,,\n");
    const auto c = read_cuts_csv(ok);
    CHECK(c.size() == 2);
    CHECK(c.seg_weight.empty());

    std::stringstream no_schema("i,Y,Z,l,m,M\n");
    CHECK_THROWS_AS(read_cuts_csv(no_schema), std::runtime_error);
    std::stringstream bad_version("#schema_version=7\ni,Y,Z,l,m,M\n");
    CHECK_THROWS_AS(read_cuts_csv(bad_version), std::runtime_error);
    std::stringstream bad_number("#schema_version=1\ni,Y,Z,l,m,M\n1,x,0,1,,\n");
    CHECK_THROWS_AS(read_cuts_csv(bad_number), std::runtime_error);
    std::stringstream bad_order("#schema_version=1\ni,Y,Z,l,m,M\n1,2,0,2,,\n2,1,0,1,,\n");
    CHECK_THROWS_AS(read_cuts_csv(bad_order), CutInvariantError);
  }

  TEST_CASE("sidecar rebuilds mu and the family") {
    for (const auto& f : {ThetaFamily::harmonic(), ThetaFamily::power_law(0.6), ThetaFamily::brownian(),
                          ThetaFamily::explicit_weights(0.6, {0.8})}) {
      const auto theta = make_theta(f, 500);
      Rng mr(3), cr(4);
      const auto mu = sample_mu(theta, mr);
      const auto cuts = sample_cuts_new(mu, StopRule::cuts(50), cr);
      const std::string js = cuts_sidecar_json(cuts, f, theta, mu);
      const auto j = nlohmann::json::parse(js);
      CHECK(j.at("theta_digest").get<std::string>() == theta_digest(theta));
      CHECK(j.at("cuts").get<std::size_t>() == 50);
      const auto mu2 = mu_from_sidecar(js);
      for (double y : cuts.cuts) CHECK(mu2.mass(y) == mu.mass(y));
      const auto f2 = family_from_sidecar(js);
      CHECK(f2.kind == f.kind);
      CHECK(f2.name() == f.name());
      CHECK(f2.alpha == f.alpha);
    }
  }

  TEST_CASE("theta digest") {
    const auto a = make_theta(ThetaFamily::harmonic(), 100);
    auto b = a;
    CHECK(theta_digest(a) == theta_digest(b));
    CHECK(theta_digest(a).size() == 16);
    b.weights[50] = std::nextafter(b.weights[50], 1.0);
    CHECK(theta_digest(a) != theta_digest(b));
  }

  TEST_CASE("dimension report json") {
    const auto r = theoretical_dimensions(ThetaFamily::harmonic(), 30);
    const auto j = nlohmann::json::parse(dimension_report_json(r));
    CHECK(j.at("unbounded").get<bool>());
    CHECK(j.at("upper").get<std::string>() == "inf");
    CHECK(j.contains("decay_limit"));
  }
}
