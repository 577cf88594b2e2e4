#pragma once

// Brute-force photon-number-basis path used to cross-check the closed-form
// coherent-state algebra. Nothing here is used by the analytic pipeline.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "catbreed/coherent.hpp"
#include "catbreed/coupler.hpp"

namespace catbreed::fock {

/// Tail mass allowed in the top five Fock levels.
inline constexpr double kAdequacyBound = 1e-10;

inline int default_cutoff(double max_amp) {
  return static_cast<int>(std::ceil(max_amp * max_amp + 10.0 * max_amp + 20.0));
}

struct FockVector {
  int cutoff = 0;
  Eigen::VectorXcd amps;

  double norm_sq() const { return amps.squaredNorm(); }
};

struct TwoModeFock {
  int cutoff_a = 0;
  int cutoff_b = 0;
  /// amps(n1, n2) = <n1, n2|psi>
  Eigen::MatrixXcd amps;
};

namespace detail {

// e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..cutoff, by recursion.
inline Eigen::VectorXcd coherent_column(complex alpha, int cutoff) {
  Eigen::VectorXcd v(cutoff + 1);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

inline double tail_mass(const Eigen::VectorXd& probs, int cutoff) {
  double tail = 0.0;
  for (int n = std::max(1, cutoff - 4); n <= cutoff; ++n) tail += probs(n);
  return tail;
}

inline void check_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("fock: cutoff must be >= 1");
}

}  // namespace detail

/// Expands a coherent superposition in the number basis up to `cutoff` and
/// renormalizes. Throws AdequacyError when the top levels hold too much weight.
inline FockVector to_fock(const ModeState& state, int cutoff) {
  detail::check_cutoff(cutoff);
  if (state.is_zero()) throw ZeroStateError(state.norm_sq());
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(cutoff + 1);
  for (const auto& t : state.terms()) amps += t.coeff * detail::coherent_column(t.alpha, cutoff);
  const double captured = amps.squaredNorm();
  const double missing = std::max(0.0, state.norm_sq() - captured) / state.norm_sq();
  const double tail = detail::tail_mass(amps.cwiseAbs2(), cutoff) / state.norm_sq() + missing;
  if (tail >= kAdequacyBound) {
    throw AdequacyError("to_fock: cutoff " + std::to_string(cutoff) + " too small", tail);
  }
  amps /= std::sqrt(captured);
  return {cutoff, amps};
}

inline FockVector to_fock(const ModeState& state) {
  return to_fock(state, default_cutoff(state.max_amplitude()));
}

inline TwoModeFock to_fock(const TwoModeState& state, int cutoff_a, int cutoff_b) {
  detail::check_cutoff(cutoff_a);
  detail::check_cutoff(cutoff_b);
  if (state.norm_sq() <= kZeroThreshold) throw ZeroStateError(state.norm_sq());
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(cutoff_a + 1, cutoff_b + 1);
  for (const auto& t : state.terms()) {
    amps += t.coeff * detail::coherent_column(t.alpha_a, cutoff_a) *
            detail::coherent_column(t.alpha_b, cutoff_b).transpose();
  }
  const double captured = amps.squaredNorm();
  const Eigen::MatrixXd probs = amps.cwiseAbs2();
  const double missing = std::max(0.0, state.norm_sq() - captured) / state.norm_sq();
  const double tail = std::max(detail::tail_mass(probs.rowwise().sum(), cutoff_a),
                               detail::tail_mass(probs.colwise().sum().transpose(), cutoff_b)) /
                          state.norm_sq() +
                      missing;
  if (tail >= kAdequacyBound) throw AdequacyError("to_fock: two-mode cutoff too small", tail);
  amps /= std::sqrt(captured);
  return {cutoff_a, cutoff_b, amps};
}

/// Weight of each total photon number n1 + n2.
inline std::vector<double> total_number_distribution(const TwoModeFock& s) {
  std::vector<double> dist(static_cast<std::size_t>(s.cutoff_a + s.cutoff_b) + 1, 0.0);
  for (int i = 0; i <= s.cutoff_a; ++i) {
    for (int j = 0; j <= s.cutoff_b; ++j) dist[static_cast<std::size_t>(i + j)] += std::norm(s.amps(i, j));
  }
  return dist;
}

/// Applies exp(-i mu z (a1^dag a2 + a2^dag a1)).
///
/// The generator conserves n1 + n2, so it is block diagonal; each block
/// {|k, n-k>} is a real symmetric tridiagonal matrix that is diagonalized and
/// exponentiated exactly. Blocks clipped by the cutoffs are only approximations;
/// their weight must stay below kAdequacyBound.
inline TwoModeFock evolve_fock(const TwoModeFock& state, const CouplerParams& params) {
  params.validate();
  const int na = state.cutoff_a;
  const int nb = state.cutoff_b;
  const double theta = params.angle();
  TwoModeFock out{na, nb, Eigen::MatrixXcd::Zero(na + 1, nb + 1)};

  double clipped_weight = 0.0;
  for (int n = 0; n <= na + nb; ++n) {
    const int k_lo = std::max(0, n - nb);
    const int k_hi = std::min(n, na);
    const int dim = k_hi - k_lo + 1;
    Eigen::VectorXcd v(dim);
    for (int k = k_lo; k <= k_hi; ++k) v(k - k_lo) = state.amps(k, n - k);
    if (k_lo > 0 || k_hi < n) clipped_weight += v.squaredNorm();
    if (v.squaredNorm() == 0.0) continue;

    // a1^dag a2 |k, n-k> = sqrt((k+1)(n-k)) |k+1, n-k-1>
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = k_lo; k < k_hi; ++k) {
      const double g = std::sqrt(static_cast<double>(k + 1) * static_cast<double>(n - k));
      gen(k - k_lo + 1, k - k_lo) = g;
      gen(k - k_lo, k - k_lo + 1) = g;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gen);
    const Eigen::MatrixXd& vecs = eig.eigenvectors();
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i) phases(i) = std::polar(1.0, -theta * eig.eigenvalues()(i));
    const Eigen::VectorXcd rotated =
        vecs.cast<complex>() * (phases.asDiagonal() * (vecs.transpose().cast<complex>() * v));
    for (int k = k_lo; k <= k_hi; ++k) out.amps(k, n - k) = rotated(k - k_lo);
  }
  if (clipped_weight >= kAdequacyBound) {
    throw AdequacyError("evolve_fock: weight in cutoff-clipped photon-number blocks", clipped_weight);
  }
  return out;
}

struct Projection {
  FockVector state;
  double probability = 0.0;
};

/// Projects mode 2 on |m>; returns the renormalized mode-1 slice.
inline Projection project_mode2(const TwoModeFock& state, int m) {
  if (m < 0 || m > state.cutoff_b) throw InvalidArgument("project_mode2: m outside [0, cutoff_b]");
  Eigen::VectorXcd slice = state.amps.col(m);
  const double p = slice.squaredNorm() / state.amps.squaredNorm();
  if (p < kZeroThreshold) throw ZeroProbabilityError(m, p);
  slice /= slice.norm();
  return {{state.cutoff_a, slice}, p};
}

struct Expectations {
  double mean_photons = 0.0;
  double parity = 0.0;
};

inline Expectations expectations(const FockVector& v) {
  Expectations e;
  for (int n = 0; n <= v.cutoff; ++n) {
    const double p = std::norm(v.amps(n));
    e.mean_photons += n * p;
    e.parity += (n % 2 == 0 ? p : -p);
  }
  return e;
}

/// |<a|b>| for vectors of possibly different cutoffs.
inline double fidelity(const FockVector& a, const FockVector& b) {
  const int n = std::min(a.cutoff, b.cutoff);
  return std::abs(a.amps.head(n + 1).dot(b.amps.head(n + 1)));
}

}  // namespace catbreed::fock
