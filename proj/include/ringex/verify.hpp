#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ringex/analytic.hpp"
#include "ringex/degeneracy.hpp"
#include "ringex/disorder.hpp"
#include "ringex/fock.hpp"
#include "ringex/optics.hpp"
#include "ringex/ring_spec.hpp"

namespace ringex {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int n_max = 8;            // largest ring size scanned
  bool inject_fault = false;  // self-test hook: corrupts one Hamiltonian bond
};

namespace detail {

inline std::string fmt_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

}  // namespace detail

// Cross-checks every closed-form statement against the brute-force sector
// Hamiltonian. Each property reports its worst observed deviation.
inline std::vector<PropertyResult> run_verification(const VerifyOptions& options = {}) {
  std::vector<PropertyResult> results;
  const int n_lo = 3;
  const int n_hi = std::max(3, options.n_max);

  // eigenstate residuals against the sector Hamiltonian
  {
    double worst = 0.0;
    for (int N = n_lo; N <= n_hi; ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      for (int n = 1; n <= N; ++n) {
        HermitianMatrix H = build_hamiltonian(spec, n);
        if (options.inject_fault && N == n_lo && n == 1) {
          H.at(0, 1) = -H.at(0, 1);
          H.at(1, 0) = -H.at(1, 0);
        }
        for (const auto& state : manifold_states(spec, n))
          worst = std::max(worst, residual(H, to_fock_vector(state, N), state.energy));
      }
    }
    results.push_back({"analytic-residuals", worst <= 1e-10,
                       "max residual " + detail::fmt_sci(worst) + " (bound 1e-10)"});
  }

  // the C(N,n) analytic vectors form an orthonormal family
  {
    double worst = 0.0;
    for (int N = n_lo; N <= n_hi; ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      for (int n = 1; n <= N; ++n) {
        std::vector<FockVector> vs;
        for (const auto& state : manifold_states(spec, n))
          vs.push_back(to_fock_vector(state, N));
        for (std::size_t i = 0; i < vs.size(); ++i)
          for (std::size_t j = i; j < vs.size(); ++j) {
            const double g = std::abs(inner_product(vs[i], vs[j]) - (i == j ? 1.0 : 0.0));
            worst = std::max(worst, g);
          }
      }
    }
    results.push_back({"state-orthonormality", worst <= 1e-10,
                       "max Gram deviation " + detail::fmt_sci(worst) + " (bound 1e-10)"});
  }

  // sorted analytic energies match the dense eigensolver, multiplicities included
  {
    double worst = 0.0;
    for (int N = n_lo; N <= n_hi; ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      for (int n = 1; n <= N; ++n) {
        auto states = manifold_states(spec, n);
        std::vector<double> analytic;
        for (const auto& s : states) analytic.push_back(s.energy);
        std::sort(analytic.begin(), analytic.end());
        const auto sys = eig_hermitian(build_hamiltonian(spec, n));
        for (std::size_t i = 0; i < analytic.size(); ++i)
          worst = std::max(worst, std::abs(analytic[i] - sys.eigenvalues[i]));
      }
    }
    results.push_back({"spectrum-equality", worst <= 1e-10,
                       "max eigenvalue gap " + detail::fmt_sci(worst) + " (bound 1e-10)"});
  }

  // phase-matching rule == nonzero brute-force dipole, n = 1,2
  {
    std::size_t checked = 0, mismatches = 0;
    for (int N = n_lo; N <= std::min(n_hi, 10); ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      for (int n = 1; n <= 2 && n + 1 <= N; ++n) {
        for (const auto& rec : transition_table(spec, n)) {
          ++checked;
          if (rec.allowed != (rec.dipole_oracle > 1e-10)) ++mismatches;
        }
      }
    }
    results.push_back({"rule-oracle-equivalence", mismatches == 0,
                       std::to_string(mismatches) + " mismatches in " + std::to_string(checked) +
                           " transitions"});
  }

  // closed-form single-to-double dipole equals the brute-force value
  {
    double worst = 0.0;
    for (int N = n_lo; N <= std::min(n_hi, 10); ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      for (const auto& rec : transition_table(spec, 1)) {
        if (!rec.dipole_closed_form) continue;
        const double rel = std::abs(*rec.dipole_closed_form - rec.dipole_oracle) /
                           std::max(1.0, rec.dipole_oracle);
        worst = std::max(worst, rel);
      }
    }
    results.push_back({"closed-form-gamma12", worst <= 1e-10,
                       "max relative gap " + detail::fmt_sci(worst) + " (bound 1e-10)"});
  }

  // |<psi_q|J+|0>|^2 = N exactly for q = 0 and 0 otherwise
  {
    double worst = 0.0;
    for (int N = n_lo; N <= n_hi; ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      const ManifoldState ground = make_manifold_state(spec, {});
      for (const auto& label : momentum_labels(N, 1)) {
        const auto single = make_manifold_state(spec, {label.q});
        const double g = dipole_oracle(spec, ground, single);
        worst = std::max(worst, label.q == 0 ? std::abs(g - N) : g);
      }
    }
    results.push_back({"brightness-dichotomy", worst <= 1e-10,
                       "max deviation from N*delta_q0 " + detail::fmt_sci(worst) +
                           " (bound 1e-10)"});
  }

  // bright-coupled <=> equal component energies
  {
    std::size_t mismatches = 0, checked = 0;
    for (int N = n_lo; N <= n_hi; ++N) {
      const RingSpec spec = make_uniform_ring(N, 0.0, 1.0);
      for (const auto& state : manifold_states(spec, 2)) {
        ++checked;
        const bool equal_energy = std::abs(component_energy(spec, state.labels[0]) -
                                           component_energy(spec, state.labels[1])) <= 1e-12;
        const bool bright = classify_double(spec, state) == Category::BrightCoupled;
        if (equal_energy != bright) ++mismatches;
      }
    }
    results.push_back({"category-energy-equivalence", mismatches == 0,
                       std::to_string(mismatches) + " mismatches in " + std::to_string(checked) +
                           " double-excitation states"});
  }

  return results;
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace ringex
