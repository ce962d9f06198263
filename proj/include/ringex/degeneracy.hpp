#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ringex/analytic.hpp"
#include "ringex/errors.hpp"
#include "ringex/fock.hpp"
#include "ringex/optics.hpp"
#include "ringex/ring_spec.hpp"

namespace ringex {

// A group of states sharing one energy. The analytic path carries the member
// states (and, for n = 2, their category composition); the oracle path only
// counts eigenvalues.
struct EnergyLevel {
  double energy = 0.0;
  std::size_t degeneracy = 0;
  std::vector<ManifoldState> states;  // empty on the oracle path
  std::size_t bright_count = 0;       // n = 2 analytic levels only
  std::size_t dark_count = 0;

  bool mixed() const { return bright_count > 0 && dark_count > 0; }
};

enum class LadderMethod { Analytic, Oracle };

// Adjacent energies closer than this belong to one level. Genuine gaps at
// these ring sizes are larger by many orders of magnitude.
inline double grouping_tolerance(const RingSpec& spec) {
  return 1e-9 * std::max(1.0, 2.0 * spec.max_abs_coupling());
}

namespace detail {

inline std::vector<EnergyLevel> group_energies(const std::vector<double>& sorted_energies,
                                               double tol) {
  std::vector<EnergyLevel> levels;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted_energies.size(); ++i) {
    if (i == sorted_energies.size() || sorted_energies[i] - sorted_energies[i - 1] > tol) {
      EnergyLevel level;
      level.degeneracy = i - start;
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += sorted_energies[j];
      level.energy = sum / static_cast<double>(level.degeneracy);
      levels.push_back(std::move(level));
      start = i;
    }
  }
  return levels;
}

}  // namespace detail

inline std::vector<EnergyLevel> energy_ladder(const RingSpec& spec, int n_excitations,
                                              LadderMethod method = LadderMethod::Analytic) {
  const double tol = grouping_tolerance(spec);
  if (method == LadderMethod::Oracle) {
    const auto sys = eig_hermitian(build_hamiltonian(spec, n_excitations));
    return detail::group_energies(sys.eigenvalues, tol);
  }

  auto states = manifold_states(spec, n_excitations);  // checks uniformity
  std::stable_sort(states.begin(), states.end(), [](const ManifoldState& a, const ManifoldState& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.labels < b.labels;
  });

  std::vector<EnergyLevel> levels;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= states.size(); ++i) {
    if (i == states.size() || states[i].energy - states[i - 1].energy > tol) {
      EnergyLevel level;
      level.degeneracy = i - start;
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) {
        sum += states[j].energy;
        level.states.push_back(states[j]);
      }
      level.energy = sum / static_cast<double>(level.degeneracy);
      std::sort(level.states.begin(), level.states.end(),
                [](const ManifoldState& a, const ManifoldState& b) { return a.labels < b.labels; });
      if (n_excitations == 2) {
        for (const auto& s : level.states) {
          if (classify_double(spec, s) == Category::BrightCoupled)
            ++level.bright_count;
          else
            ++level.dark_count;
        }
      }
      levels.push_back(std::move(level));
      start = i;
    }
  }
  return levels;
}

// Double-excitation levels holding states of both categories. Non-empty
// exactly when the ring admits the accidental bright/dark degeneracy.
inline std::vector<EnergyLevel> find_accidental(const RingSpec& spec) {
  require_uniform(spec);
  std::vector<EnergyLevel> mixed;
  for (auto& level : energy_ladder(spec, 2, LadderMethod::Analytic))
    if (level.mixed()) mixed.push_back(std::move(level));
  return mixed;
}

inline bool predicts_accidental(int n_sites) {
  if (n_sites < 3) throw invalid_spec_error("ring size must be at least 3");
  return n_sites % 4 == 2 && n_sites >= 6;
}

// Exploratory generalization beyond n = 2: a state belongs to the bright
// cascade when its label sum is 0 mod 2N. Levels holding both classes are
// reported; only n = 2 carries the optical category meaning, so these levels
// have no acceptance weight.
struct PhaseMixedLevel {
  double energy = 0.0;
  std::size_t matched = 0;  // label sum = 0 mod 2N
  std::size_t unmatched = 0;
};

inline std::vector<PhaseMixedLevel> phase_mixed_levels(const RingSpec& spec, int n_excitations) {
  std::vector<PhaseMixedLevel> out;
  for (const auto& level : energy_ladder(spec, n_excitations)) {
    PhaseMixedLevel pm;
    pm.energy = level.energy;
    for (const auto& s : level.states) {
      if (s.label_sum() % (2 * spec.n_sites) == 0)
        ++pm.matched;
      else
        ++pm.unmatched;
    }
    if (pm.matched > 0 && pm.unmatched > 0) out.push_back(pm);
  }
  return out;
}

struct EvenTriple {
  int m1 = 0, m2 = 0, m3 = 0;
  bool condition_holds = false;
};

struct TripleReport {
  int n_sites = 0;
  std::vector<EvenTriple> triples;
};

// Exhaustive scan for evenly spaced triples of the component energy function
// f(m) = cos((2m+1) pi / N) with f(m1) > f(m2) > f(m3). condition_holds tests
// the classification: midpoint angle pi/2 or 3pi/2, and index symmetry
// m1 - m2 = m2 - m3 on the principal branch (m and N-1-m alias the same f
// value, so indices are folded to min(m, N-1-m) before comparing).
inline TripleReport evenly_spaced_triples(int n_sites) {
  if (n_sites <= 2) throw invalid_spec_error("triple scan needs N > 2");
  const int N = n_sites;
  TripleReport report;
  report.n_sites = N;
  std::vector<double> f(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m)
    f[static_cast<std::size_t>(m)] = cos_q_pi_over_n(2 * m + 1, N);
  const auto fold = [N](int m) { return std::min(m, N - 1 - m); };
  for (int m1 = 0; m1 < N; ++m1) {
    for (int m2 = 0; m2 < N; ++m2) {
      if (!(f[static_cast<std::size_t>(m1)] > f[static_cast<std::size_t>(m2)])) continue;
      const double gap = f[static_cast<std::size_t>(m1)] - f[static_cast<std::size_t>(m2)];
      for (int m3 = 0; m3 < N; ++m3) {
        if (!(f[static_cast<std::size_t>(m2)] > f[static_cast<std::size_t>(m3)])) continue;
        if (std::abs(gap - (f[static_cast<std::size_t>(m2)] - f[static_cast<std::size_t>(m3)])) > 1e-12)
          continue;
        EvenTriple t;
        t.m1 = m1;
        t.m2 = m2;
        t.m3 = m3;
        const int mid = 2 * m2 + 1;
        const bool zero_mid = (2 * mid == N) || (2 * mid == 3 * N);
        t.condition_holds = zero_mid && (fold(m1) - fold(m2) == fold(m2) - fold(m3));
        report.triples.push_back(t);
      }
    }
  }
  return report;
}

struct DiagramPoint {
  int label = 0;
  double re = 0.0;
  double im = 0.0;
};

struct StateDiagram {
  int n_sites = 0;
  std::vector<DiagramPoint> single_excitation;  // e^{i q pi / N}, q even
  std::vector<DiagramPoint> component;          // e^{i q pi / N}, q odd
};

// Both manifolds as points on the unit circle; the x coordinate is the state
// energy in units of 2S. The component set is the single-excitation set
// rotated by pi/N.
inline StateDiagram state_diagram(int n_sites) {
  if (n_sites < 3) throw invalid_spec_error("state diagram needs N >= 3");
  StateDiagram diagram;
  diagram.n_sites = n_sites;
  for (int q = 0; q < 2 * n_sites; ++q) {
    DiagramPoint p;
    p.label = q;
    p.re = cos_q_pi_over_n(q, n_sites);
    p.im = (q == 0 || q == n_sites) ? 0.0 : std::sin(std::numbers::pi * q / n_sites);
    if (q % 2 == 0)
      diagram.single_excitation.push_back(p);
    else
      diagram.component.push_back(p);
  }
  return diagram;
}

}  // namespace ringex
