#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ringex/degeneracy.hpp"
#include "ringex/errors.hpp"
#include "ringex/fock.hpp"
#include "ringex/ring_spec.hpp"

namespace ringex {

// Reproducible uniform draws: mt19937_64 (sequence fixed by the standard)
// with the upper 53 bits mapped to [0,1). No library distribution is used,
// so runs are bit-identical across platforms.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : eng_(seed) {}

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform on [-half_width, half_width]
  double symmetric(double half_width) { return half_width * (2.0 * unit() - 1.0); }

 private:
  std::mt19937_64 eng_;
};

struct PtCoefficients {
  double alpha = 0.0;  // (1/N) sum delta_j
  cplx beta{0.0, 0.0}; // (1/N) sum delta_j e^{i 2 pi j / N}
  double gamma = 0.0;  // (1/N) sum delta_j (-1)^j
};

inline PtCoefficients pt_coefficients(const RingSpec& spec) {
  require_valid(spec);
  const int N = spec.n_sites;
  PtCoefficients c;
  for (int j = 1; j <= N; ++j) {
    const double d = spec.site_disorder[static_cast<std::size_t>(j - 1)];
    c.alpha += d;
    c.beta += d * std::polar(1.0, 2.0 * std::numbers::pi * j / N);
    c.gamma += (j % 2 == 0) ? d : -d;
  }
  c.alpha /= N;
  c.beta /= static_cast<double>(N);
  c.gamma /= N;
  return c;
}

// Common first-order correction 2*alpha of the accidental-level states under
// site disorder. Defined only where the accidental level exists and on top of
// uniform couplings (the perturbation theory is built on the uniform states).
inline double first_order_level_correction(const RingSpec& spec) {
  require_valid(spec);
  if (!predicts_accidental(spec.n_sites))
    throw no_accidental_level_error("no accidental level: N = " + std::to_string(spec.n_sites) +
                                    " is not of the form 4l + 2");
  for (double s : spec.couplings)
    if (s != spec.couplings.front())
      throw not_uniform_error("first-order correction requires uniform couplings");
  return 2.0 * pt_coefficients(spec).alpha;
}

struct DisorderReport {
  std::uint64_t seed = 0;
  double eta = 0.0;
  double alpha = 0.0;
  cplx beta{0.0, 0.0};
  double gamma = 0.0;
  double predicted_first_order = 0.0;  // 2 alpha
  double predicted_center = 0.0;       // 2 omega + 2 alpha
  double cluster_center = 0.0;
  double observed_splitting = 0.0;     // max - min inside the tracked cluster
  std::vector<double> cluster;         // tracked eigenvalues, ascending
};

// Draws delta_j uniform on [-eta, eta], diagonalizes the perturbed n = 2
// sector, and tracks the N-1 eigenvalues nearest the predicted center. The
// guard refuses to report when the cluster is not separated from its
// neighbours by at least five times its own width (eta too large to track).
inline DisorderReport site_disorder_splitting(const RingSpec& base, double eta,
                                              std::uint64_t seed) {
  require_uniform(base);
  if (!predicts_accidental(base.n_sites))
    throw no_accidental_level_error("no accidental level to track for N = " +
                                    std::to_string(base.n_sites));
  if (eta < 0.0) throw invalid_spec_error("disorder magnitude eta must be nonnegative");

  const int N = base.n_sites;
  RingSpec perturbed = base;
  UniformSampler rng(seed);
  for (int j = 0; j < N; ++j)
    perturbed.site_disorder[static_cast<std::size_t>(j)] = rng.symmetric(eta);

  DisorderReport report;
  report.seed = seed;
  report.eta = eta;
  const PtCoefficients c = pt_coefficients(perturbed);
  report.alpha = c.alpha;
  report.beta = c.beta;
  report.gamma = c.gamma;
  report.predicted_first_order = 2.0 * c.alpha;
  report.predicted_center = 2.0 * base.site_energy + 2.0 * c.alpha;

  const auto sys = eig_hermitian(build_hamiltonian(perturbed, 2));
  const std::size_t m = static_cast<std::size_t>(N - 1);

  std::vector<std::size_t> order(sys.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(sys.eigenvalues[x] - report.predicted_center) <
           std::abs(sys.eigenvalues[y] - report.predicted_center);
  });

  std::vector<char> in_cluster(sys.eigenvalues.size(), 0);
  for (std::size_t i = 0; i < m; ++i) in_cluster[order[i]] = 1;
  report.cluster.reserve(m);
  for (std::size_t i = 0; i < sys.eigenvalues.size(); ++i)
    if (in_cluster[i]) report.cluster.push_back(sys.eigenvalues[i]);

  const double lo = report.cluster.front();
  const double hi = report.cluster.back();
  const double width = hi - lo;
  double separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sys.eigenvalues.size(); ++i) {
    if (in_cluster[i]) continue;
    const double e = sys.eigenvalues[i];
    separation = std::min(separation, e < lo ? lo - e : (e > hi ? e - hi : 0.0));
  }
  if (separation < 5.0 * width)
    throw tracking_ambiguous_error(
        "accidental-level cluster is not separated from neighbours (eta too large): width " +
        std::to_string(width) + ", separation " + std::to_string(separation));

  double sum = 0.0;
  for (double e : report.cluster) sum += e;
  report.cluster_center = sum / static_cast<double>(m);
  report.observed_splitting = width;
  return report;
}

struct CouplingDisorderResult {
  std::uint64_t seed = 0;
  double spread = 0.0;
  bool preserved = false;              // zero level kept the uniform multiplicity
  std::size_t expected_multiplicity = 0;
  EnergyLevel zero_level;              // eigenvalues within 1e-9 of zero
  std::vector<double> couplings;
};

// Random per-bond couplings S_j in [1 - spread, 1 + spread] (omega = 0, no
// site disorder); reports whether the zero-energy n = 2 level kept the
// multiplicity of the uniform accidental level.
inline CouplingDisorderResult coupling_disorder_check(int n_sites, std::uint64_t seed,
                                                      double spread) {
  if (!predicts_accidental(n_sites))
    throw no_accidental_level_error("coupling-disorder check is defined for N = 4l + 2");
  if (spread <= 0.0 || spread >= 1.0)
    throw invalid_spec_error("spread must lie in (0, 1) to keep couplings positive");

  CouplingDisorderResult result;
  result.seed = seed;
  result.spread = spread;
  result.expected_multiplicity = static_cast<std::size_t>(n_sites - 1);

  RingSpec spec = make_uniform_ring(n_sites, 0.0, 1.0);
  UniformSampler rng(seed);
  for (int j = 0; j < n_sites; ++j)
    spec.couplings[static_cast<std::size_t>(j)] = 1.0 + rng.symmetric(spread);
  result.couplings = spec.couplings;

  const auto sys = eig_hermitian(build_hamiltonian(spec, 2));
  EnergyLevel level;
  double sum = 0.0;
  for (double e : sys.eigenvalues) {
    if (std::abs(e) <= 1e-9) {
      ++level.degeneracy;
      sum += e;
    }
  }
  level.energy = level.degeneracy > 0 ? sum / static_cast<double>(level.degeneracy) : 0.0;
  result.zero_level = std::move(level);
  result.preserved = result.zero_level.degeneracy == result.expected_multiplicity;
  return result;
}

}  // namespace ringex
