#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "ringex/analytic.hpp"
#include "ringex/optics.hpp"
#include "ringex/ring_spec.hpp"

using namespace ringex;

namespace {
// frozen from the brute-force dipole oracle
const double kGamma_0_39 = 0.66666666666666663;
const double kGamma_0_57 = 0.047864513149660531;
const double kGamma_0_111 = 9.2854688201836755;
}  // namespace

TEST_CASE("selection rule verdicts and windings") {
  const std::vector<int> bright{0};
  const std::vector<int> pair39{3, 9};
  auto v = selection_rule(bright, pair39, 6);
  REQUIRE(v.allowed);
  REQUIRE(v.winding == -1);

  const std::vector<int> from2{2};
  const std::vector<int> pair17{1, 7};
  v = selection_rule(from2, pair17, 6);
  REQUIRE_FALSE(v.allowed);
  REQUIRE_FALSE(v.winding.has_value());

  const std::vector<int> from8{8};
  v = selection_rule(from8, pair17, 6);
  REQUIRE(v.allowed);
  REQUIRE(v.winding == 0);
}

TEST_CASE("selection rule rejects malformed manifold pairs") {
  const std::vector<int> evens{0};
  const std::vector<int> also_evens{2, 4};   // n=2 labels must be odd
  REQUIRE_THROWS_AS(selection_rule(evens, also_evens, 6), invalid_manifold_error);
  const std::vector<int> odd1{1};            // n=1 labels must be even
  const std::vector<int> odds{3, 9};
  REQUIRE_THROWS_AS(selection_rule(odd1, odds, 6), invalid_manifold_error);
  const std::vector<int> two{1, 3};
  const std::vector<int> fourmore{0, 2, 4, 6};  // not adjacent manifolds
  REQUIRE_THROWS_AS(selection_rule(two, fourmore, 6), invalid_manifold_error);
  const std::vector<int> dup{3, 3, 5};
  REQUIRE_THROWS_AS(selection_rule(two, dup, 6), invalid_manifold_error);
}

TEST_CASE("dipole oracle against frozen values") {
  const RingSpec spec = make_uniform_ring(6, 0.0, 1.0);
  const auto bright = make_manifold_state(spec, {0});
  const auto s57 = make_manifold_state(spec, {5, 7});
  REQUIRE(std::abs(dipole_oracle(spec, bright, s57) - kGamma_0_57) <= 1e-12);

  const auto from2 = make_manifold_state(spec, {2});
  const auto s17 = make_manifold_state(spec, {1, 7});
  REQUIRE(dipole_oracle(spec, from2, s17) <= 1e-10);

  // ground -> bright carries the full oscillator strength N
  for (int N = 3; N <= 12; ++N) {
    const RingSpec ring = make_uniform_ring(N, 0.0, 1.0);
    const auto ground = make_manifold_state(ring, {});
    const auto psi0 = make_manifold_state(ring, {0});
    REQUIRE(std::abs(dipole_oracle(ring, ground, psi0) - N) <= 1e-10);
  }
}

TEST_CASE("closed-form gamma12 equals the oracle") {
  REQUIRE(std::abs(gamma12_closed_form(6, 0, 3, 9) - 2.0 / 3.0) <= 1e-12);
  REQUIRE(std::abs(gamma12_closed_form(6, 0, 3, 9) - kGamma_0_39) <= 1e-12);
  REQUIRE(std::abs(gamma12_closed_form(6, 0, 5, 7) - kGamma_0_57) <= 1e-12);
  REQUIRE(std::abs(gamma12_closed_form(6, 0, 1, 11) - kGamma_0_111) <= 1e-12);

  // symmetric under s1 <-> s2
  REQUIRE(std::abs(gamma12_closed_form(6, 0, 9, 3) - gamma12_closed_form(6, 0, 3, 9)) <= 1e-13);

  REQUIRE_THROWS_AS(gamma12_closed_form(6, 0, 1, 7), selection_rule_error);
  REQUIRE_THROWS_AS(gamma12_closed_form(6, 0, 3, 3), invalid_label_error);
  REQUIRE_THROWS_AS(gamma12_closed_form(6, 1, 3, 9), invalid_label_error);
}

TEST_CASE("double-excitation categories") {
  const RingSpec spec = make_uniform_ring(6, 0.0, 1.0);
  REQUIRE(classify_double(spec, make_manifold_state(spec, {3, 9})) == Category::BrightCoupled);
  REQUIRE(classify_double(spec, make_manifold_state(spec, {1, 5})) == Category::DarkCoupled);
  REQUIRE(classify_double(spec, make_manifold_state(spec, {1, 11})) == Category::BrightCoupled);
  REQUIRE_THROWS_AS(classify_double(spec, make_manifold_state(spec, {0})),
                    invalid_manifold_error);
}

TEST_CASE("bright-coupled means equal component energies (N <= 12)") {
  for (int N = 3; N <= 12; ++N) {
    const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
    for (const auto& state : manifold_states(spec, 2)) {
      const bool equal = std::abs(component_energy(spec, state.labels[0]) -
                                  component_energy(spec, state.labels[1])) <= 1e-12;
      REQUIRE(equal == (classify_double(spec, state) == Category::BrightCoupled));
    }
  }
}

TEST_CASE("transition table N=6 n=1") {
  const RingSpec spec = make_uniform_ring(6, 0.0, 1.0);
  const auto table = transition_table(spec, 1);
  REQUIRE(table.size() == 90);
  std::size_t allowed = 0;
  for (const auto& rec : table) {
    REQUIRE(rec.allowed == (rec.dipole_oracle > 1e-10));
    if (rec.allowed) {
      ++allowed;
      REQUIRE(rec.dipole_closed_form.has_value());
      REQUIRE(std::abs(*rec.dipole_closed_form - rec.dipole_oracle) <=
              1e-10 * std::max(1.0, rec.dipole_oracle));
    } else {
      REQUIRE_FALSE(rec.dipole_closed_form.has_value());
    }
  }
  REQUIRE(allowed == 15);
}

TEST_CASE("transition table N=4 n=2 matches rule and oracle") {
  const RingSpec spec = make_uniform_ring(4, 0.0, 1.0);
  const auto table = transition_table(spec, 2);
  REQUIRE(table.size() == 24);  // C(4,2) * C(4,3)
  for (const auto& rec : table) {
    REQUIRE(rec.allowed == (rec.dipole_oracle > 1e-10));
    REQUIRE_FALSE(rec.dipole_closed_form.has_value());  // closed form is n=1 only
  }
}

TEST_CASE("transitions into the fully occupied sector") {
  const RingSpec spec = make_uniform_ring(3, 0.0, 1.0);
  const auto table = transition_table(spec, 2);
  REQUIRE(table.size() == 3);  // C(3,2) states into the single {0,2,4} state
  std::size_t allowed = 0;
  for (const auto& rec : table) {
    REQUIRE(rec.to_labels == std::vector<int>{0, 2, 4});
    REQUIRE(rec.allowed == (rec.dipole_oracle > 1e-10));
    if (rec.allowed) {
      ++allowed;
      REQUIRE(rec.from_labels == std::vector<int>{1, 5});  // sum 6 matches sum 6
    }
  }
  REQUIRE(allowed == 1);
}

TEST_CASE("N=3 bright state couples exactly to the zero-sum pair") {
  const RingSpec spec = make_uniform_ring(3, 0.0, 1.0);
  for (const auto& rec : transition_table(spec, 1)) {
    if (rec.from_labels != std::vector<int>{0}) continue;
    const bool is_15 = rec.to_labels == std::vector<int>{1, 5};
    REQUIRE(rec.allowed == is_15);
  }
}

TEST_CASE("rule-oracle equivalence across small rings") {
  for (int N = 3; N <= 8; ++N) {
    const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
    for (int n = 1; n <= 2 && n + 1 <= N; ++n)
      for (const auto& rec : transition_table(spec, n))
        REQUIRE(rec.allowed == (rec.dipole_oracle > 1e-10));
  }
}

TEST_CASE("dipole oracle validates manifold adjacency and uniformity") {
  const RingSpec spec = make_uniform_ring(6, 0.0, 1.0);
  const auto s1 = make_manifold_state(spec, {0});
  const auto s3 = make_manifold_state(spec, {0, 2, 4});
  REQUIRE_THROWS_AS(dipole_oracle(spec, s1, s3), invalid_manifold_error);
  REQUIRE_THROWS_AS(transition_table(spec, 6), invalid_excitation_error);
}
