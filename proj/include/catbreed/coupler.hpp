#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "catbreed/coherent.hpp"

namespace catbreed {

/// Two evanescently coupled waveguides acting as a beam splitter with mixing
/// angle mu * z. hbar = 1.
struct CouplerParams {
  double mu = 1.0;
  double z = 0.0;

  void validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu) || !(z >= 0.0) || !std::isfinite(z)) {
      throw InvalidArgument("CouplerParams: need mu > 0 and z >= 0, both finite");
    }
  }
  double angle() const { return mu * z; }
  double t() const { return std::cos(angle()); }
  double r() const { return std::sin(angle()); }
};

struct TwoModeTerm {
  complex coeff;
  complex alpha_a;
  complex alpha_b;
};

/// Pure two-mode state as a finite sum of weighted coherent products |a>|b>.
class TwoModeState {
 public:
  TwoModeState() = default;

  static TwoModeState from_terms(std::span<const TwoModeTerm> terms) {
    TwoModeState s;
    s.terms_.reserve(terms.size());
    for (const auto& t : terms) {
      if (!is_finite(t.coeff) || !is_finite(t.alpha_a) || !is_finite(t.alpha_b)) {
        throw InvalidArgument("TwoModeState: non-finite term");
      }
      s.accumulate(t);
    }
    complex acc = 0.0;
    for (const auto& x : s.terms_) {
      for (const auto& y : s.terms_) {
        acc += std::conj(x.coeff) * y.coeff * coherent_overlap(x.alpha_a, y.alpha_a) *
               coherent_overlap(x.alpha_b, y.alpha_b);
      }
    }
    s.norm_sq_ = std::max(0.0, acc.real());
    return s;
  }
  static TwoModeState from_terms(std::initializer_list<TwoModeTerm> terms) {
    return from_terms(std::span<const TwoModeTerm>(terms.begin(), terms.size()));
  }

  const std::vector<TwoModeTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  double norm_sq() const noexcept { return norm_sq_; }
  bool is_normalized() const noexcept { return std::abs(norm_sq_ - 1.0) <= kNormTolerance; }

  double max_amplitude_a() const noexcept {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.alpha_a));
    return m;
  }
  double max_amplitude_b() const noexcept {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.alpha_b));
    return m;
  }

 private:
  void accumulate(const TwoModeTerm& t) {
    for (auto& e : terms_) {
      if (std::abs(e.alpha_a - t.alpha_a) <= kMergeTolerance &&
          std::abs(e.alpha_b - t.alpha_b) <= kMergeTolerance) {
        e.coeff += t.coeff;
        return;
      }
    }
    terms_.push_back(t);
  }

  std::vector<TwoModeTerm> terms_;
  double norm_sq_ = 0.0;
};

inline TwoModeState normalize(const TwoModeState& s) {
  if (s.norm_sq() <= kZeroThreshold) throw ZeroStateError(s.norm_sq());
  std::vector<TwoModeTerm> terms = s.terms();
  const double k = 1.0 / std::sqrt(s.norm_sq());
  for (auto& t : terms) t.coeff *= k;
  return TwoModeState::from_terms(terms);
}

inline TwoModeState product_state(const ModeState& a, const ModeState& b) {
  if (!a.is_normalized() || !b.is_normalized()) {
    throw ContractViolation("product_state: inputs must be normalized");
  }
  std::vector<TwoModeTerm> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) terms.push_back({x.coeff * y.coeff, x.alpha, y.alpha});
  }
  return normalize(TwoModeState::from_terms(terms));
}

/// Coherent amplitudes transform by the transmission matrix
///   [ t   -ir ]
///   [ -ir   t ]
/// so (alpha0, i beta0) lands on (t alpha0 + r beta0, i (t beta0 - r alpha0)).
/// Exposed with raw (t, r) so callers can probe the opposite sign convention.
inline TwoModeState evolve_amplitudes(const TwoModeState& state, double t, double r) {
  const complex ir(0.0, r);
  std::vector<TwoModeTerm> terms;
  terms.reserve(state.size());
  for (const auto& x : state.terms()) {
    terms.push_back({x.coeff, t * x.alpha_a - ir * x.alpha_b, -ir * x.alpha_a + t * x.alpha_b});
  }
  return TwoModeState::from_terms(terms);
}

inline TwoModeState evolve(const TwoModeState& state, const CouplerParams& params) {
  params.validate();
  if (!state.is_normalized()) throw ContractViolation("evolve: state must be normalized");
  return evolve_amplitudes(state, params.t(), params.r());
}

/// <m|beta> = exp(-|beta|^2/2) beta^m / sqrt(m!)
inline complex number_amplitude(complex beta, int m) {
  if (m < 0) throw InvalidArgument("number_amplitude: m must be >= 0");
  const double mag = std::abs(beta);
  if (m == 0) return std::exp(-0.5 * mag * mag);
  if (mag == 0.0) return 0.0;
  const double log_mag = -0.5 * mag * mag + m * std::log(mag) - 0.5 * std::lgamma(m + 1.0);
  return std::polar(std::exp(log_mag), m * std::arg(beta));
}

struct HeraldOutcome {
  int m = 0;
  ModeState state;
  double probability = 0.0;
};

/// Unnormalized mode-1 state left after projecting mode 2 on |m>; its norm_sq
/// is the outcome probability.
inline ModeState project_mode_b(const TwoModeState& state, int m) {
  std::vector<CoherentTerm> terms;
  terms.reserve(state.size());
  for (const auto& x : state.terms()) {
    terms.push_back({x.coeff * number_amplitude(x.alpha_b, m), x.alpha_a});
  }
  return ModeState::from_terms(terms);
}

/// Photon-number-resolved detection of m photons on mode 2. The global phase
/// (i^m for imaginary mode-2 amplitudes) is discarded.
inline HeraldOutcome herald(const TwoModeState& state, int m) {
  if (m < 0) throw InvalidArgument("herald: m must be >= 0");
  if (!state.is_normalized()) throw ContractViolation("herald: state must be normalized");
  const ModeState projected = project_mode_b(state, m);
  const double p = projected.norm_sq();
  if (p < kZeroThreshold) throw ZeroProbabilityError(m, p);
  return {m, with_canonical_phase(normalize(projected)), std::min(1.0, p)};
}

/// Photon-count cutoff leaving < 1e-12 Poisson tail mass for amplitudes up to `amp`.
inline int default_m_max(double amp) {
  return static_cast<int>(std::ceil(amp * amp + 10.0 * amp + 20.0));
}

/// P(0), ..., P(m_max) for detection on mode 2.
inline std::vector<double> herald_distribution(const TwoModeState& state, int m_max) {
  if (m_max < 0) throw InvalidArgument("herald_distribution: m_max must be >= 0");
  if (!state.is_normalized()) throw ContractViolation("herald_distribution: state must be normalized");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) p.push_back(project_mode_b(state, m).norm_sq());
  return p;
}

inline std::vector<double> herald_distribution(const TwoModeState& state) {
  return herald_distribution(state, default_m_max(state.max_amplitude_b()));
}

/// The heralded mode-1 state written as c1 (|a1> +- |-a1>) + c2 (|a2> +- |-a2>)
/// with real c1, c2 and a1, a2 >= 0.
struct ScenarioCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  Parity parity = Parity::Even;
  /// t alpha0 +- r beta0 vanished: one component collapsed to the vacuum.
  bool degenerate = false;
};

/// Closed-form heralding of SC(alpha0, p1) (x) SC(i beta0, p2) through the
/// coupler with m photons detected on mode 2, in the two-cat form above.
///
/// With A = t alpha0 + r beta0, B = t alpha0 - r beta0 the unnormalized output is
///   w1 [|A> + s|-A>] + g w2 [|B> + s|-B>],
///   w1 = <m|t beta0 - r alpha0>, w2 = <m|t beta0 + r alpha0>  (real, i^m dropped),
///   s  = (-1)^m sign(p1) sign(p2),  g = (-1)^m sign(p2).
/// Negative A or B is folded into the coefficient (sign(.) for odd cats). For
/// r >= 0, alpha1 = |A|; for r < 0 the labels swap and the pair is rescaled by g
/// so that c1 keeps the bracket without the e^{i phi2} factor. At m = 0 this is
/// exactly the familiar piecewise table for the four parity pairs.
inline ScenarioCoefficients scenario_coefficients(Parity p1, Parity p2, double alpha0, double beta0,
                                                  const CouplerParams& params, int m = 0) {
  if (!(alpha0 > 0.0) || !(beta0 > 0.0)) throw InvalidArgument("scenario_coefficients: amplitudes must be > 0");
  if (m < 0) throw InvalidArgument("scenario_coefficients: m must be >= 0");
  params.validate();
  const double t = params.t();
  const double r = params.r();
  const double a = t * alpha0 + r * beta0;
  const double b = t * alpha0 - r * beta0;
  const double w1 = number_amplitude(t * beta0 - r * alpha0, m).real();
  const double w2 = number_amplitude(t * beta0 + r * alpha0, m).real();
  const double odd_m = (m % 2 == 0) ? 1.0 : -1.0;
  const double s = odd_m * parity_sign(p1) * parity_sign(p2);
  const double g = odd_m * parity_sign(p2);

  auto fold = [s](double x) {
    if (s > 0.0) return 1.0;
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  };

  ScenarioCoefficients out;
  out.parity = s > 0.0 ? Parity::Even : Parity::Odd;
  out.degenerate = std::abs(a) <= kMergeTolerance || std::abs(b) <= kMergeTolerance;
  if (r >= 0.0) {
    out.c1 = w1 * fold(a);
    out.c2 = g * w2 * fold(b);
    out.alpha1 = std::abs(a);
    out.alpha2 = std::abs(b);
  } else {
    out.c1 = w2 * fold(b);
    out.c2 = g * w1 * fold(a);
    out.alpha1 = std::abs(b);
    out.alpha2 = std::abs(a);
  }
  return out;
}

/// Normalized c1 (|a1> +- |-a1>) + c2 (|a2> +- |-a2>).
inline ModeState scenario_state(const ScenarioCoefficients& sc) {
  const double s = parity_sign(sc.parity);
  return normalize(ModeState::from_terms({{sc.c1, sc.alpha1},
                                          {s * sc.c1, -sc.alpha1},
                                          {sc.c2, sc.alpha2},
                                          {s * sc.c2, -sc.alpha2}}));
}

/// |c1 / c2| = exp(2 t r alpha0 beta0) for the heralded two-cat superposition.
inline double coefficient_ratio(double alpha0, double beta0, const CouplerParams& params) {
  params.validate();
  return std::exp(2.0 * params.t() * params.r() * alpha0 * beta0);
}

}  // namespace catbreed
