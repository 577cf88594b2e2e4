#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string_view>

#include "catbreed/coherent.hpp"
#include "catbreed/optimize.hpp"

namespace catbreed {

/// F = |<a|b>| for normalized states.
inline double fidelity(const ModeState& a, const ModeState& b) {
  if (!a.is_normalized() || !b.is_normalized()) {
    throw ContractViolation("fidelity: both states must be normalized");
  }
  return std::clamp(std::abs(inner_product(a, b)), 0.0, 1.0);
}

/// Best-fit ideal cat (or coherent state) for a given state.
struct CatFit {
  double alpha3 = 0.0;
  /// 0 for even cats and coherent fits, pi for odd cats.
  double phi_fit = 0.0;
  double fidelity = 0.0;
  /// The maximizing amplitude sat on search_hi; widen the search.
  bool at_boundary = false;
};

inline constexpr std::size_t kFitScanPoints = 1001;
inline constexpr double kFitTolerance = 1e-9;

namespace detail {

// |<SC(a, parity)|psi>| without building the cat; 0 where the odd cat vanishes.
inline double cat_fidelity(const ModeState& psi, double a, Parity parity) {
  const double s = parity_sign(parity);
  const double cat_norm_sq = 2.0 + 2.0 * s * std::exp(-2.0 * a * a);
  if (cat_norm_sq <= kZeroThreshold) return 0.0;
  complex acc = 0.0;
  for (const auto& t : psi.terms()) {
    acc += t.coeff * (coherent_overlap(a, t.alpha) + s * coherent_overlap(-a, t.alpha));
  }
  return std::min(1.0, std::abs(acc) / std::sqrt(cat_norm_sq));
}

}  // namespace detail

inline CatFit fit_cat(const ModeState& state, Parity parity, double search_hi) {
  if (!state.is_normalized()) throw ContractViolation("fit_cat: state must be normalized");
  if (!(search_hi > 0.0)) throw InvalidArgument("fit_cat: search_hi must be > 0");
  auto f = [&](double a) { return detail::cat_fidelity(state, a, parity); };
  const auto best = opt::scan_maximize(f, 0.0, search_hi, kFitScanPoints, kFitTolerance);
  return {best.x, parity_phase(parity), std::clamp(best.value, 0.0, 1.0), best.at_upper};
}

inline CatFit fit_coherent(const ModeState& state, double search_hi) {
  if (!state.is_normalized()) throw ContractViolation("fit_coherent: state must be normalized");
  if (!(search_hi > 0.0)) throw InvalidArgument("fit_coherent: search_hi must be > 0");
  auto f = [&](double a) {
    complex acc = 0.0;
    for (const auto& t : state.terms()) acc += t.coeff * coherent_overlap(a, t.alpha);
    return std::abs(acc);
  };
  const auto best = opt::scan_maximize(f, 0.0, search_hi, kFitScanPoints, kFitTolerance);
  return {best.x, 0.0, std::clamp(best.value, 0.0, 1.0), best.at_upper};
}

/// Size relation of N(c1|a1> + c2|a2>) (a1 > a2 > 0) to its components:
/// I amplifies, II shrinks, III lands in between.
enum class CaseLabel { I, II, III, NonCat };

inline std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I: return "I";
    case CaseLabel::II: return "II";
    case CaseLabel::III: return "III";
    case CaseLabel::NonCat: return "non-cat";
  }
  return "?";
}

inline CaseLabel classify_case(double c1, double c2) {
  if (!std::isfinite(c1) || !std::isfinite(c2)) throw InvalidArgument("classify_case: non-finite coefficient");
  if (c1 == 0.0 && c2 == 0.0) throw InvalidArgument("classify_case: both coefficients are zero");
  if (c1 == 0.0 || c2 == 0.0) return CaseLabel::NonCat;
  if (c1 * c2 > 0.0) return CaseLabel::III;
  const double m1 = std::abs(c1);
  const double m2 = std::abs(c2);
  if (std::abs(m1 - m2) < 1e-12 * std::max(m1, m2)) return CaseLabel::NonCat;
  return m1 > m2 ? CaseLabel::I : CaseLabel::II;
}

/// Largest output-cat amplitude reachable when only one heralded cat is kept:
/// sqrt(alpha0^2 + beta0^2).
inline double previous_limit(double alpha0, double beta0) {
  if (!(alpha0 >= 0.0) || !(beta0 >= 0.0)) throw InvalidArgument("previous_limit: amplitudes must be >= 0");
  return std::hypot(alpha0, beta0);
}

}  // namespace catbreed
