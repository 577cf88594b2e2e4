#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "catbreed/error.hpp"

namespace catbreed {

using complex = std::complex<double>;

/// Amplitudes closer than this are treated as the same coherent state.
inline constexpr double kMergeTolerance = 1e-12;
/// States with norm_sq at or below this are the zero vector.
inline constexpr double kZeroThreshold = 1e-24;
/// A state counts as normalized when |norm_sq - 1| is within this bound.
inline constexpr double kNormTolerance = 1e-10;

enum class Parity { Even, Odd };

/// Relative phase between |a> and |-a> in a cat of this parity: 0 or pi.
inline double parity_phase(Parity p) { return p == Parity::Even ? 0.0 : std::numbers::pi; }
inline double parity_sign(Parity p) { return p == Parity::Even ? 1.0 : -1.0; }
inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

inline bool is_finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
inline complex coherent_overlap(complex a, complex b) {
  if (!is_finite(a) || !is_finite(b)) {
    throw InvalidArgument("coherent_overlap: non-finite amplitude");
  }
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

struct CoherentTerm {
  complex coeff;
  complex alpha;
};

/// Pure single-mode state held exactly as a finite sum of weighted coherent states.
///
/// Construction merges terms whose amplitudes agree within kMergeTolerance and
/// caches <psi|psi>. Instances are immutable.
class ModeState {
 public:
  ModeState() = default;

  static ModeState from_terms(std::span<const CoherentTerm> terms) {
    ModeState s;
    s.terms_.reserve(terms.size());
    for (const auto& t : terms) {
      if (!is_finite(t.coeff) || !is_finite(t.alpha)) {
        throw InvalidArgument("ModeState: non-finite term");
      }
      s.accumulate(t);
    }
    s.norm_sq_ = gram_norm(s.terms_);
    return s;
  }
  static ModeState from_terms(std::initializer_list<CoherentTerm> terms) {
    return from_terms(std::span<const CoherentTerm>(terms.begin(), terms.size()));
  }

  static ModeState coherent(complex alpha) { return from_terms({{1.0, alpha}}); }
  static ModeState vacuum() { return coherent(0.0); }

  const std::vector<CoherentTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  double norm_sq() const noexcept { return norm_sq_; }
  bool is_normalized() const noexcept { return std::abs(norm_sq_ - 1.0) <= kNormTolerance; }
  bool is_zero() const noexcept { return norm_sq_ <= kZeroThreshold; }

  /// Largest |alpha| among the terms (0 for an empty state).
  double max_amplitude() const noexcept {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.alpha));
    return m;
  }

 private:
  void accumulate(const CoherentTerm& t) {
    for (auto& existing : terms_) {
      if (std::abs(existing.alpha - t.alpha) <= kMergeTolerance) {
        existing.coeff += t.coeff;
        return;
      }
    }
    terms_.push_back(t);
  }

  static double gram_norm(const std::vector<CoherentTerm>& terms) {
    complex acc = 0.0;
    for (const auto& a : terms) {
      for (const auto& b : terms) {
        acc += std::conj(a.coeff) * b.coeff * coherent_overlap(a.alpha, b.alpha);
      }
    }
    // Hermitian Gram form: the imaginary part is rounding residue.
    return std::max(0.0, acc.real());
  }

  std::vector<CoherentTerm> terms_;
  double norm_sq_ = 0.0;
};

/// <a|b> for unnormalized states, via the coherent Gram expansion.
inline complex inner_product(const ModeState& a, const ModeState& b) {
  complex acc = 0.0;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      acc += std::conj(s.coeff) * t.coeff * coherent_overlap(s.alpha, t.alpha);
    }
  }
  return acc;
}

/// Multiplies every coefficient by `factor`; amplitudes untouched.
inline ModeState scaled(const ModeState& s, complex factor) {
  std::vector<CoherentTerm> terms = s.terms();
  for (auto& t : terms) t.coeff *= factor;
  return ModeState::from_terms(terms);
}

inline ModeState normalize(const ModeState& s) {
  if (s.norm_sq() <= kZeroThreshold) throw ZeroStateError(s.norm_sq());
  return scaled(s, 1.0 / std::sqrt(s.norm_sq()));
}

/// Rotates the global phase so the first nonzero coefficient is real and positive.
inline ModeState with_canonical_phase(const ModeState& s) {
  for (const auto& t : s.terms()) {
    if (std::abs(t.coeff) > 0.0) return scaled(s, std::conj(t.coeff) / std::abs(t.coeff));
  }
  return s;
}

/// Normalized linear combination sum_k c_k |s_k>.
inline ModeState superpose(std::span<const std::pair<complex, ModeState>> parts) {
  if (parts.empty()) throw InvalidArgument("superpose: no states");
  std::vector<CoherentTerm> terms;
  for (const auto& [c, s] : parts) {
    for (const auto& t : s.terms()) terms.push_back({c * t.coeff, t.alpha});
  }
  return normalize(ModeState::from_terms(terms));
}
inline ModeState superpose(std::initializer_list<std::pair<complex, ModeState>> parts) {
  return superpose(std::span<const std::pair<complex, ModeState>>(parts.begin(), parts.size()));
}

struct CatSpec {
  double alpha0 = 0.0;
  double phi = 0.0;
};

/// N(|a> + e^{i phi} |-a>) for an arbitrary complex amplitude a.
inline ModeState make_cat(complex amplitude, double phi) {
  if (!is_finite(amplitude) || !std::isfinite(phi)) throw InvalidArgument("make_cat: non-finite input");
  return normalize(ModeState::from_terms({{1.0, amplitude}, {std::polar(1.0, phi), -amplitude}}));
}

inline ModeState make_cat(const CatSpec& spec) {
  if (!(spec.alpha0 >= 0.0) || !(spec.phi >= 0.0) || !(spec.phi < 2.0 * std::numbers::pi)) {
    throw InvalidArgument("make_cat: need alpha0 >= 0 and phi in [0, 2pi)");
  }
  return make_cat(complex(spec.alpha0, 0.0), spec.phi);
}

/// Parity cats use an exact +-1 relative sign rather than e^{i pi}.
inline ModeState make_cat(complex amplitude, Parity parity) {
  if (!is_finite(amplitude)) throw InvalidArgument("make_cat: non-finite input");
  return normalize(ModeState::from_terms({{1.0, amplitude}, {parity_sign(parity), -amplitude}}));
}

}  // namespace catbreed
