#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ringex/json_io.hpp"
#include "ringex/ring_spec.hpp"

using namespace ringex;

TEST_CASE("make_uniform_ring fills every bond and no disorder") {
  const RingSpec spec = make_uniform_ring(6, 0.0, 1.0);
  REQUIRE(spec.n_sites == 6);
  REQUIRE(spec.site_energy == 0.0);
  REQUIRE(spec.couplings == std::vector<double>(6, 1.0));
  REQUIRE(spec.site_disorder == std::vector<double>(6, 0.0));
  REQUIRE(spec.is_uniform());

  REQUIRE(make_uniform_ring(3, 0.0, 1.0).n_sites == 3);
  REQUIRE_THROWS_AS(make_uniform_ring(2, 0.0, 1.0), invalid_spec_error);
}

TEST_CASE("make_uniform_ring always yields a uniform spec") {
  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 3 + static_cast<int>(eng() % 20);
    const double omega = static_cast<double>(eng() % 1000) / 100.0 - 5.0;
    const double s = static_cast<double>(eng() % 1000) / 250.0 - 2.0;
    REQUIRE(make_uniform_ring(N, omega, s).is_uniform());
  }
}

TEST_CASE("validate reports every violation") {
  REQUIRE(validate(make_uniform_ring(6, 0.0, 1.0)).empty());

  RingSpec bad = make_uniform_ring(6, 0.0, 1.0);
  bad.couplings.pop_back();
  const auto problems = validate(bad);
  REQUIRE(problems.size() == 1);
  REQUIRE(problems.front().find("couplings") != std::string::npos);

  // non-uniform is legal; only analytic operations reject it
  RingSpec arbitrary;
  arbitrary.n_sites = 3;
  arbitrary.couplings = {1.0, 2.0, 0.5};
  arbitrary.site_disorder = {0.0, 0.1, -0.1};
  REQUIRE(validate(arbitrary).empty());
  REQUIRE_FALSE(arbitrary.is_uniform());

  RingSpec tiny;
  tiny.n_sites = 2;
  tiny.couplings = {1.0, 1.0};
  tiny.site_disorder = {0.0, 0.0};
  REQUIRE(validate(tiny).size() == 1);
}

TEST_CASE("spec JSON round-trip is field identical") {
  std::mt19937_64 eng(13);
  const auto rnd = [&] { return static_cast<double>(eng()) / 1.8e19 - 0.5; };
  for (int trial = 0; trial < 30; ++trial) {
    RingSpec spec;
    spec.n_sites = 3 + static_cast<int>(eng() % 12);
    spec.site_energy = rnd();
    for (int j = 0; j < spec.n_sites; ++j) {
      spec.couplings.push_back(rnd());
      spec.site_disorder.push_back(rnd());
    }
    const ojson j = spec_to_json(spec);
    const RingSpec back = spec_from_json(ojson::parse(j.dump()));
    REQUIRE(back.n_sites == spec.n_sites);
    REQUIRE(back.site_energy == spec.site_energy);
    REQUIRE(back.couplings == spec.couplings);
    REQUIRE(back.site_disorder == spec.site_disorder);
  }
}

TEST_CASE("spec JSON parsing validates") {
  REQUIRE_THROWS_AS(spec_from_json(ojson::parse(R"({"n_sites": 2})")), invalid_spec_error);
  REQUIRE_THROWS_AS(
      spec_from_json(ojson::parse(R"({"n_sites": 4, "couplings": [1.0, 1.0]})")),
      invalid_spec_error);
  const RingSpec spec = spec_from_json(ojson::parse(R"({"n_sites": 4})"));
  REQUIRE(spec.is_uniform());
  REQUIRE(spec.couplings == std::vector<double>(4, 1.0));
}
