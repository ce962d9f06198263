#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringex/analytic.hpp"
#include "ringex/errors.hpp"
#include "ringex/fock.hpp"
#include "ringex/ring_spec.hpp"

namespace ringex {

// First category: coupled to the bright single-excitation state only.
// Second category: coupled to dark states only.
enum class Category { BrightCoupled, DarkCoupled };

inline const char* to_string(Category c) {
  return c == Category::BrightCoupled ? "bright-coupled" : "dark-coupled";
}

struct SelectionVerdict {
  bool allowed = false;
  std::optional<long long> winding;  // m in  sum(from) - sum(to) = 2 m N
};

namespace detail {

inline void check_label_set(std::span<const int> labels, int n_sites, const char* which) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw invalid_manifold_error(std::string(which) + " label set is empty");
  const ManifoldParity parity = manifold_parity(n);
  std::vector<int> seen;
  for (int q : labels) {
    require_label_range(q, n_sites);
    if (!label_fits_parity(q, parity))
      throw invalid_manifold_error(std::string(which) + " labels are in the wrong parity sector for n=" +
                                   std::to_string(n));
    seen.push_back(q);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw invalid_manifold_error(std::string(which) + " labels must be distinct");
}

}  // namespace detail

// Phase-matching selection rule between adjacent manifolds: the transition is
// allowed iff the label-sum difference is an integer multiple of 2N. The
// winding m reported satisfies sum(from) - sum(to) = 2 m N.
inline SelectionVerdict selection_rule(std::span<const int> from_labels,
                                       std::span<const int> to_labels, int n_sites) {
  detail::check_label_set(from_labels, n_sites, "from");
  detail::check_label_set(to_labels, n_sites, "to");
  if (to_labels.size() != from_labels.size() + 1)
    throw invalid_manifold_error("selection rule needs adjacent manifolds (|to| = |from| + 1)");
  long long diff = 0;
  for (int q : from_labels) diff += q;
  for (int q : to_labels) diff -= q;
  const long long period = 2LL * n_sites;
  SelectionVerdict verdict;
  verdict.allowed = (diff % period) == 0;
  if (verdict.allowed) verdict.winding = diff / period;
  return verdict;
}

// |<to| J+ |from>|^2 computed in the occupation basis. Reported as a squared
// magnitude so the result is free of amplitude phase conventions.
inline double dipole_oracle(const RingSpec& spec, const ManifoldState& from,
                            const ManifoldState& to) {
  require_uniform(spec);
  if (to.n_excitations() != from.n_excitations() + 1)
    throw invalid_manifold_error("dipole requires adjacent manifolds (n and n+1)");
  if (to.n_excitations() > spec.n_sites)
    throw invalid_excitation_error("target manifold exceeds the ring");
  const RaisingMatrix R = raising_matrix(spec.n_sites, from.n_excitations());
  const FockVector raised = R.apply(to_fock_vector(from, spec.n_sites));
  const cplx overlap = inner_product(to_fock_vector(to, spec.n_sites), raised);
  return std::norm(overlap);
}

// Closed-form single-to-double dipole on the allowed stratum
// k - (s1 + s2) = 2 l N:
//   Gamma_12 = (1/N) * (cot(-s2 pi / 2N) + cot((k - s2) pi / 2N))^2
// Symmetric under s1 <-> s2 because cot is pi-periodic. The cot arguments
// never hit a pole: s2 is odd and k - s2 is odd, so neither is 0 mod 2N.
inline double gamma12_closed_form(int n_sites, int k, int s1, int s2) {
  require_label_range(k, n_sites);
  require_label_range(s1, n_sites);
  require_label_range(s2, n_sites);
  if (k % 2 != 0) throw invalid_label_error("k must be an even (single-excitation) label");
  if (s1 % 2 == 0 || s2 % 2 == 0)
    throw invalid_label_error("s1, s2 must be odd (component) labels");
  if (s1 == s2) throw invalid_label_error("component labels must be distinct");
  const long long diff = static_cast<long long>(k) - s1 - s2;
  if (diff % (2LL * n_sites) != 0)
    throw selection_rule_error("closed form applies only when k - (s1 + s2) = 2lN");
  const auto cot = [](double x) { return std::cos(x) / std::sin(x); };
  const double half = std::numbers::pi / (2.0 * n_sites);
  const double sum = cot(-s2 * half) + cot((k - s2) * half);
  return sum * sum / n_sites;
}

// A double-excitation state is bright-coupled iff it phase-matches the
// bright state {0}: s1 + s2 = 0 (mod 2N). Equivalently (tested, not assumed
// here) its two component energies are equal.
inline Category classify_double(const RingSpec& spec, const ManifoldState& state) {
  require_uniform(spec);
  if (state.n_excitations() != 2)
    throw invalid_manifold_error("category classification is defined for n = 2 states");
  const int sum = state.label_sum();
  return (sum % (2 * spec.n_sites) == 0) ? Category::BrightCoupled : Category::DarkCoupled;
}

struct TransitionRecord {
  std::vector<int> from_labels;
  std::vector<int> to_labels;
  bool allowed = false;
  std::optional<long long> winding;
  double dipole_oracle = 0.0;
  std::optional<double> dipole_closed_form;  // only for n=1 -> n=2, allowed rows
};

// Every (n-state, (n+1)-state) pair with rule verdict, brute-force dipole and
// (for n = 1) the closed form. Rows are lexicographic in (from, to) labels.
inline std::vector<TransitionRecord> transition_table(const RingSpec& spec, int n_excitations) {
  require_uniform(spec);
  if (n_excitations < 1 || n_excitations + 1 > spec.n_sites)
    throw invalid_excitation_error("transition table needs 1 <= n and n+1 <= N");
  const auto from_states = manifold_states(spec, n_excitations);
  const auto to_states = manifold_states(spec, n_excitations + 1);
  const RaisingMatrix R = raising_matrix(spec.n_sites, n_excitations);

  std::vector<FockVector> raised;
  raised.reserve(from_states.size());
  for (const auto& f : from_states) raised.push_back(R.apply(to_fock_vector(f, spec.n_sites)));
  std::vector<FockVector> to_vectors;
  to_vectors.reserve(to_states.size());
  for (const auto& t : to_states) to_vectors.push_back(to_fock_vector(t, spec.n_sites));

  std::vector<TransitionRecord> table;
  table.reserve(from_states.size() * to_states.size());
  for (std::size_t fi = 0; fi < from_states.size(); ++fi) {
    for (std::size_t ti = 0; ti < to_states.size(); ++ti) {
      TransitionRecord rec;
      rec.from_labels = from_states[fi].labels;
      rec.to_labels = to_states[ti].labels;
      const auto verdict = selection_rule(rec.from_labels, rec.to_labels, spec.n_sites);
      rec.allowed = verdict.allowed;
      rec.winding = verdict.winding;
      rec.dipole_oracle = std::norm(inner_product(to_vectors[ti], raised[fi]));
      if (n_excitations == 1 && rec.allowed)
        rec.dipole_closed_form = gamma12_closed_form(spec.n_sites, rec.from_labels[0],
                                                     rec.to_labels[0], rec.to_labels[1]);
      table.push_back(std::move(rec));
    }
  }
  return table;
}

}  // namespace ringex
