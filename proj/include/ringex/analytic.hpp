#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ringex/errors.hpp"
#include "ringex/fock.hpp"
#include "ringex/ring_spec.hpp"

namespace ringex {

// Parity of the excitation number a momentum label serves. Odd manifolds use
// even exponent integers q, even manifolds odd ones; q runs over [0, 2N).
enum class ManifoldParity { Odd, Even };

inline ManifoldParity manifold_parity(int n_excitations) {
  return (n_excitations % 2 != 0) ? ManifoldParity::Odd : ManifoldParity::Even;
}

struct MomentumLabel {
  int q = 0;
  ManifoldParity manifold = ManifoldParity::Odd;
};

inline bool label_fits_parity(int q, ManifoldParity parity) {
  return (parity == ManifoldParity::Odd) ? (q % 2 == 0) : (q % 2 != 0);
}

inline std::vector<MomentumLabel> momentum_labels(int n_sites, int n_excitations) {
  if (n_sites < 3) throw invalid_spec_error("momentum labels need N >= 3");
  if (n_excitations < 1) throw invalid_excitation_error("excitation count must be >= 1");
  const ManifoldParity parity = manifold_parity(n_excitations);
  std::vector<MomentumLabel> labels;
  labels.reserve(static_cast<std::size_t>(n_sites));
  const int first = (parity == ManifoldParity::Odd) ? 0 : 1;
  for (int q = first; q < 2 * n_sites; q += 2) labels.push_back({q, parity});
  return labels;
}

// cos(q*pi/N) with the symmetry-forced zeros (q*pi/N = pi/2 or 3pi/2) taken
// exactly; level grouping and the zero-membership tests rely on them.
inline double cos_q_pi_over_n(int q, int n_sites) {
  if (2 * q == n_sites || 2 * q == 3 * n_sites) return 0.0;
  return std::cos(std::numbers::pi * q / n_sites);
}

inline void require_label_range(int q, int n_sites) {
  if (q < 0 || q >= 2 * n_sites)
    throw invalid_label_error("momentum label " + std::to_string(q) + " outside [0, 2N)");
}

inline double component_energy(const RingSpec& spec, int q) {
  require_uniform(spec);
  require_label_range(q, spec.n_sites);
  return spec.site_energy + 2.0 * spec.uniform_coupling() * cos_q_pi_over_n(q, spec.n_sites);
}

inline double component_energy(const RingSpec& spec, const MomentumLabel& label) {
  return component_energy(spec, label.q);
}

// An n-excitation eigenstate of the uniform ring: n distinct momentum labels
// of one parity sector plus the summed component energy. Label order is the
// determinant row order; the canonical enumeration uses ascending labels, and
// permutations change the state only by the permutation sign.
struct ManifoldState {
  std::vector<int> labels;
  double energy = 0.0;

  int n_excitations() const { return static_cast<int>(labels.size()); }

  std::vector<int> sorted_labels() const {
    std::vector<int> s = labels;
    std::sort(s.begin(), s.end());
    return s;
  }

  int label_sum() const {
    int s = 0;
    for (int q : labels) s += q;
    return s;
  }
};

// Validates labels (range, distinctness, parity sector consistent with the
// excitation count) and computes the energy. An empty label list is the
// ground state. Labels are kept in the given order.
inline ManifoldState make_manifold_state(const RingSpec& spec, std::vector<int> labels) {
  require_uniform(spec);
  const int n = static_cast<int>(labels.size());
  if (n > spec.n_sites)
    throw invalid_excitation_error("more labels than ring sites");
  ManifoldState state;
  if (n == 0) return state;  // ground state: no components, zero energy
  const ManifoldParity parity = manifold_parity(n);
  double energy = 0.0;
  for (int q : labels) {
    require_label_range(q, spec.n_sites);
    if (!label_fits_parity(q, parity))
      throw invalid_label_error("label " + std::to_string(q) +
                                " has the wrong parity for an n=" + std::to_string(n) +
                                " manifold");
    energy += component_energy(spec, q);
  }
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw invalid_label_error("momentum labels must be pairwise distinct");
  state.labels = std::move(labels);
  state.energy = energy;
  return state;
}

// All C(N,n) eigenstates of the n-excitation manifold, label sets enumerated
// in lexicographic order.
inline std::vector<ManifoldState> manifold_states(const RingSpec& spec, int n_excitations) {
  require_uniform(spec);
  if (n_excitations < 1 || n_excitations > spec.n_sites)
    throw invalid_excitation_error("excitation count " + std::to_string(n_excitations) +
                                   " outside [1, N]");
  const auto labels = momentum_labels(spec.n_sites, n_excitations);
  const int N = spec.n_sites;
  const int n = n_excitations;
  std::vector<ManifoldState> states;
  states.reserve(static_cast<std::size_t>(binomial(N, n)));
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<int> qs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) qs[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].q;
    states.push_back(make_manifold_state(spec, std::move(qs)));
    int i = n - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == N - (n - i)) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return states;
}

namespace detail {

inline cplx det_destructive(std::vector<cplx>& m, int n) {
  cplx det{1.0, 0.0};
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(m[static_cast<std::size_t>(col * n + col)]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(m[static_cast<std::size_t>(r * n + col)]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (piv != col) {
      for (int c = 0; c < n; ++c)
        std::swap(m[static_cast<std::size_t>(piv * n + c)], m[static_cast<std::size_t>(col * n + c)]);
      det = -det;
    }
    const cplx pivot = m[static_cast<std::size_t>(col * n + col)];
    det *= pivot;
    for (int r = col + 1; r < n; ++r) {
      const cplx f = m[static_cast<std::size_t>(r * n + col)] / pivot;
      if (f == cplx{0.0, 0.0}) continue;
      for (int c = col + 1; c < n; ++c)
        m[static_cast<std::size_t>(r * n + c)] -= f * m[static_cast<std::size_t>(col * n + c)];
    }
  }
  return det;
}

}  // namespace detail

// Occupation-basis amplitude of a manifold state on the ascending site tuple
// (j_1 < ... < j_n):  N^(-n/2) * det M,  M_ab = exp(i q_a pi j_b / N).
// The determinant's alternating signs carry the fermionic permutation
// structure of the underlying Jordan-Wigner solution.
inline cplx amplitude(const ManifoldState& state, std::span<const int> sites, int n_sites) {
  const int n = state.n_excitations();
  if (static_cast<int>(sites.size()) != n)
    throw invalid_occupation_error("site tuple size must match the excitation count");
  int prev = 0;
  for (int j : sites) {
    if (j <= prev || j > n_sites)
      throw invalid_occupation_error("sites must be strictly ascending values in [1, N]");
    prev = j;
  }
  if (n == 0) return {1.0, 0.0};
  std::vector<cplx> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m[static_cast<std::size_t>(a * n + b)] = std::polar(
          1.0, std::numbers::pi * state.labels[static_cast<std::size_t>(a)] *
                   sites[static_cast<std::size_t>(b)] / n_sites);
  const cplx det = detail::det_destructive(m, n);
  return det * std::pow(static_cast<double>(n_sites), -0.5 * n);
}

inline FockVector to_fock_vector(const ManifoldState& state, int n_sites) {
  const FockBasis basis(n_sites, state.n_excitations());
  FockVector v;
  v.n_sites = n_sites;
  v.n_excitations = state.n_excitations();
  v.amplitudes.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    v.amplitudes.push_back(amplitude(state, basis.state(i), n_sites));
  return v;
}

}  // namespace ringex
