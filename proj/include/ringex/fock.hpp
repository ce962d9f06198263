#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ringex/errors.hpp"
#include "ringex/ring_spec.hpp"

namespace ringex {

using cplx = std::complex<double>;

inline std::uint64_t binomial(int n, int k) {
  // Pascal table up to n = 64; C(64,32) still fits in 64 bits.
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(65);
    for (int i = 0; i <= 64; ++i) {
      t[i].assign(static_cast<std::size_t>(i) + 1, 1);
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > 64) throw invalid_excitation_error("basis size limited to 64 sites");
  return table[n][k];
}

// Occupation basis of the n-excitation sector: all strictly ascending
// n-subsets of {1..N} in lexicographic order. index_of is the exact inverse
// of the enumeration (combinatorial ranking).
class FockBasis {
 public:
  FockBasis(int n_sites, int n_excitations)
      : n_sites_(n_sites), n_excitations_(n_excitations) {
    if (n_sites < 3) throw invalid_spec_error("basis needs at least 3 sites");
    if (n_excitations < 0 || n_excitations > n_sites)
      throw invalid_excitation_error("excitation count " + std::to_string(n_excitations) +
                                     " outside [0, " + std::to_string(n_sites) + "]");
    const std::uint64_t dim = binomial(n_sites, n_excitations);
    if (dim > 2'000'000)
      throw invalid_excitation_error("sector dimension " + std::to_string(dim) +
                                     " is too large to enumerate");
    states_.reserve(static_cast<std::size_t>(dim));
    std::vector<int> occ(static_cast<std::size_t>(n_excitations));
    std::iota(occ.begin(), occ.end(), 1);
    while (true) {
      states_.push_back(occ);
      int i = n_excitations - 1;
      while (i >= 0 && occ[static_cast<std::size_t>(i)] == n_sites - (n_excitations - 1 - i)) --i;
      if (i < 0) break;
      ++occ[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n_excitations; ++j)
        occ[static_cast<std::size_t>(j)] = occ[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  int n_sites() const { return n_sites_; }
  int n_excitations() const { return n_excitations_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<int>& state(std::size_t i) const { return states_[i]; }
  const std::vector<std::vector<int>>& states() const { return states_; }

  std::size_t index_of(std::span<const int> occ) const {
    if (static_cast<int>(occ.size()) != n_excitations_)
      throw invalid_occupation_error("occupation has wrong size");
    std::uint64_t rank = 0;
    int prev = 0;
    for (int i = 0; i < n_excitations_; ++i) {
      const int c = occ[static_cast<std::size_t>(i)];
      if (c <= prev || c > n_sites_)
        throw invalid_occupation_error("occupation must be strictly ascending sites in [1,N]");
      for (int v = prev + 1; v < c; ++v)
        rank += binomial(n_sites_ - v, n_excitations_ - 1 - i);
      prev = c;
    }
    return static_cast<std::size_t>(rank);
  }

 private:
  int n_sites_;
  int n_excitations_;
  std::vector<std::vector<int>> states_;
};

// Complex amplitude vector over the occupation basis of one sector. The basis
// is identified by (n_sites, n_excitations): enumeration is canonical, so the
// pair is a complete basis reference.
struct FockVector {
  int n_sites = 0;
  int n_excitations = 0;
  std::vector<cplx> amplitudes;

  double norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }
};

inline cplx inner_product(const FockVector& a, const FockVector& b) {
  if (a.n_sites != b.n_sites || a.n_excitations != b.n_excitations ||
      a.amplitudes.size() != b.amplitudes.size())
    throw dimension_mismatch_error("inner product between different sectors");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{0.0, 0.0}) {}

  std::size_t dim() const { return dim_; }
  cplx& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
  const std::vector<cplx>& entries() const { return a_; }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  double hermiticity_violation() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r; c < dim_; ++c)
        worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }

  std::vector<cplx> apply(std::span<const cplx> v) const {
    if (v.size() != dim_) throw dimension_mismatch_error("matrix-vector size mismatch");
    std::vector<cplx> out(dim_, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dim_; ++r) {
      cplx s{0.0, 0.0};
      const cplx* row = a_.data() + r * dim_;
      for (std::size_t c = 0; c < dim_; ++c) s += row[c] * v[c];
      out[r] = s;
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<cplx> a_;
};

// Ring Hamiltonian restricted to the n-excitation sector, built directly in
// the occupation basis: diagonal sum of (omega + delta_j) over occupied sites,
// bond coupling S_j between occupations that differ by moving one excitation
// across the bond (j, j+1). Hardcore exclusion is structural (basis = subsets),
// and no fermionic boundary sign enters.
inline HermitianMatrix build_hamiltonian(const RingSpec& spec, int n_excitations) {
  require_valid(spec);
  if (n_excitations >= 0 && binomial(spec.n_sites, n_excitations) > 4096)
    throw invalid_excitation_error("sector dimension exceeds dense storage (limit 4096)");
  const FockBasis basis(spec.n_sites, n_excitations);
  const int N = spec.n_sites;
  HermitianMatrix H(basis.size());

  std::vector<char> occupied(static_cast<std::size_t>(N) + 1, 0);
  std::vector<int> moved;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& occ = basis.state(col);
    double diag = 0.0;
    std::fill(occupied.begin(), occupied.end(), 0);
    for (int j : occ) {
      diag += spec.site_energy + spec.site_disorder[static_cast<std::size_t>(j - 1)];
      occupied[static_cast<std::size_t>(j)] = 1;
    }
    H.at(col, col) = diag;
    for (int bond = 1; bond <= N; ++bond) {
      const int j = bond;
      const int jp = bond % N + 1;
      const double s = spec.couplings[static_cast<std::size_t>(bond - 1)];
      // hop j -> jp and jp -> j; both directions fill the Hermitian pair
      for (auto [from, to] : {std::pair{j, jp}, std::pair{jp, j}}) {
        if (!occupied[static_cast<std::size_t>(from)] || occupied[static_cast<std::size_t>(to)])
          continue;
        moved.assign(occ.begin(), occ.end());
        std::replace(moved.begin(), moved.end(), from, to);
        std::sort(moved.begin(), moved.end());
        H.at(basis.index_of(moved), col) += s;
      }
    }
  }
  return H;
}

// ||Hv - Ev||_2 / max(1, ||v||_2)
inline double residual(const HermitianMatrix& H, const FockVector& v, double energy) {
  if (v.amplitudes.size() != H.dim())
    throw dimension_mismatch_error("residual: vector length does not match matrix dimension");
  const auto hv = H.apply(v.amplitudes);
  double s = 0.0;
  for (std::size_t i = 0; i < hv.size(); ++i) s += std::norm(hv[i] - energy * v.amplitudes[i]);
  return std::sqrt(s) / std::max(1.0, v.norm());
}

struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<cplx> vectors;        // column-major; column j = eigenvector of eigenvalues[j]

  std::span<const cplx> eigenvector(std::size_t j) const {
    return {vectors.data() + j * dim, dim};
  }
};

// Dense complex-Hermitian eigensolver: cyclic Jacobi with complex rotations.
//
// Each rotation zeroes one off-diagonal pair. Writing A_pq = |b| e^{i phi},
// the 2x2 problem reduces to the real symmetric case with rotation
//   t = sign(theta) / (|theta| + sqrt(theta^2 + 1)),  theta = (A_qq - A_pp) / (2|b|)
// and the complex rotation carries the phase: s = t*c * e^{i phi}. Sweeps run
// until the off-diagonal Frobenius norm drops below 1e-12 of the matrix norm;
// a hard sweep cap turns non-convergence into an error instead of a silently
// inaccurate result. Eigenvectors stay orthonormal under degeneracy because
// the accumulated transform is unitary by construction.
inline EigenSystem eig_hermitian(const HermitianMatrix& H) {
  const std::size_t d = H.dim();
  const double scale = H.max_abs();
  if (H.hermiticity_violation() > 1e-14 * std::max(1.0, scale))
    throw eig_error("matrix is not Hermitian within tolerance");

  EigenSystem sys;
  sys.dim = d;
  if (d == 0) return sys;
  if (d > 2048)
    throw eig_error("dimension " + std::to_string(d) + " exceeds the dense solver limit (2048)");

  std::vector<cplx> a(H.entries());
  // work on the exact Hermitian average of the input
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c) {
      const cplx m = 0.5 * (a[r * d + c] + std::conj(a[c * d + r]));
      a[r * d + c] = m;
      a[c * d + r] = std::conj(m);
    }

  std::vector<cplx> v(d * d, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;

  double frob = 0.0;
  for (const cplx& x : a) frob += std::norm(x);
  frob = std::sqrt(frob);
  const double target = 1e-12 * std::max(frob, 1e-300);

  const int max_sweeps = 64;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = r + 1; c < d; ++c) off += 2.0 * std::norm(a[r * d + c]);
    off = std::sqrt(off);
    if (off <= target) break;

    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const cplx b = a[p * d + q];
        const double babs = std::abs(b);
        if (babs == 0.0) continue;
        const cplx phase = b / babs;
        const double app = a[p * d + p].real();
        const double aqq = a[q * d + q].real();
        const double theta = (aqq - app) / (2.0 * babs);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sigma = t * c;
        const cplx s = sigma * phase;
        const cplx sconj = std::conj(s);

        for (std::size_t i = 0; i < d; ++i) {
          if (i == p || i == q) continue;
          const cplx aip = a[i * d + p];
          const cplx aiq = a[i * d + q];
          a[i * d + p] = c * aip - sconj * aiq;
          a[i * d + q] = s * aip + c * aiq;
          a[p * d + i] = std::conj(a[i * d + p]);
          a[q * d + i] = std::conj(a[i * d + q]);
        }
        a[p * d + p] = app * c * c + aqq * sigma * sigma - 2.0 * c * sigma * babs;
        a[q * d + q] = app * sigma * sigma + aqq * c * c + 2.0 * c * sigma * babs;
        a[p * d + q] = a[q * d + p] = cplx{0.0, 0.0};

        // row k of v accumulates eigenvector k
        for (std::size_t i = 0; i < d; ++i) {
          const cplx vip = v[p * d + i];
          const cplx viq = v[q * d + i];
          v[p * d + i] = c * vip - sconj * viq;
          v[q * d + i] = s * vip + c * viq;
        }
      }
    }
  }
  if (sweep >= max_sweeps) throw eig_error("Jacobi sweeps did not converge");

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * d + x].real() < a[y * d + y].real();
  });

  sys.eigenvalues.resize(d);
  sys.vectors.resize(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t src = order[j];
    sys.eigenvalues[j] = a[src * d + src].real();
    for (std::size_t i = 0; i < d; ++i) sys.vectors[j * d + i] = v[src * d + i];
  }
  return sys;
}

// Matrix of the optical raising operator J+ = sum_j sigma_j^+ from the
// n-sector to the (n+1)-sector: entry 1 between B and B + {j} for every
// unoccupied site j, zero otherwise.
struct RaisingMatrix {
  int n_sites = 0;
  int n_from = 0;
  std::size_t rows = 0;  // dim of (n+1)-sector
  std::size_t cols = 0;  // dim of n-sector
  std::vector<double> entries;  // row-major

  double at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  FockVector apply(const FockVector& v) const {
    if (v.n_sites != n_sites || v.n_excitations != n_from || v.amplitudes.size() != cols)
      throw dimension_mismatch_error("raising operator applied to wrong sector");
    FockVector out;
    out.n_sites = n_sites;
    out.n_excitations = n_from + 1;
    out.amplitudes.assign(rows, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < rows; ++r) {
      cplx s{0.0, 0.0};
      const double* row = entries.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c)
        if (row[c] != 0.0) s += row[c] * v.amplitudes[c];
      out.amplitudes[r] = s;
    }
    return out;
  }
};

inline RaisingMatrix raising_matrix(int n_sites, int n_from) {
  if (n_from < 0 || n_from + 1 > n_sites)
    throw invalid_excitation_error("raising operator overflows the ladder: n+1 > N");
  const FockBasis from(n_sites, n_from);
  const FockBasis to(n_sites, n_from + 1);
  RaisingMatrix R;
  R.n_sites = n_sites;
  R.n_from = n_from;
  R.rows = to.size();
  R.cols = from.size();
  R.entries.assign(R.rows * R.cols, 0.0);
  std::vector<int> raised;
  for (std::size_t c = 0; c < from.size(); ++c) {
    const auto& occ = from.state(c);
    for (int j = 1; j <= n_sites; ++j) {
      if (std::binary_search(occ.begin(), occ.end(), j)) continue;
      raised = occ;
      raised.insert(std::upper_bound(raised.begin(), raised.end(), j), j);
      R.entries[to.index_of(raised) * R.cols + c] = 1.0;
    }
  }
  return R;
}

}  // namespace ringex
