#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "catbreed/sweep.hpp"

namespace catbreed::reproduce {

/// Parameters behind the four coupler figures.
struct FigureSetup {
  std::string_view name;
  Scenario scenario;
};

inline std::vector<FigureSetup> coupler_figures() {
  return {
      {"fig4", {Parity::Odd, Parity::Odd, 1.7, 0.8, 1.0, 0}},
      {"fig5", {Parity::Even, Parity::Even, 1.7, 0.8, 1.0, 0}},
      {"fig6", {Parity::Even, Parity::Odd, 1.7, 0.8, 1.0, 0}},
      {"fig7", {Parity::Odd, Parity::Even, 0.8, 1.7, 1.0, 0}},
  };
}

inline const FigureSetup* find_figure(std::string_view name) {
  static const auto figures = coupler_figures();
  for (const auto& f : figures) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

/// Figure sweeps cover z in [0.01 pi, 0.49 pi] in steps of 0.002 pi, so the
/// hand-picked working point 0.14 pi lies on the grid. z = 0 itself is skipped:
/// the odd/odd herald has zero probability there.
inline constexpr double kFigureZMin = 0.01 * std::numbers::pi;
inline constexpr double kFigureZMax = 0.49 * std::numbers::pi;
inline constexpr int kFigureSteps = 241;

inline std::vector<SweepRow> figure_sweep(const FigureSetup& fig) {
  return run_sweep(fig.scenario, kFigureZMin / fig.scenario.mu, kFigureZMax / fig.scenario.mu, kFigureSteps);
}

/// Two-coherent-state superposition N(c1|a1> + c2|a2>) studied for the size
/// relation between the components and the result.
struct SuperpositionCase {
  double c1 = 0.2;
  double c2 = 0.0;
  double alpha1 = 1.7;
  double alpha2 = 1.4;

  ModeState state() const { return normalize(ModeState::from_terms({{c1, alpha1}, {c2, alpha2}})); }
};

/// Coherent-fit fidelity below this marks a profile that is not coherent-like.
inline constexpr double kCoherentLikeFidelity = 0.9;
/// Search range on the X axis for W(X, 0) and the coherent fit.
inline constexpr double kProfileXMax = 4.0;

struct SuperpositionResult {
  SuperpositionCase input;
  CaseLabel label = CaseLabel::NonCat;
  double peak_x = 0.0;
  CatFit coherent;
  bool coherent_like = false;
};

inline SuperpositionResult analyze(const SuperpositionCase& c) {
  const ModeState s = c.state();
  SuperpositionResult r{c, classify_case(c.c1, c.c2), wigner_peak_x(s, 0.0, kProfileXMax),
                        fit_coherent(s, kProfileXMax), false};
  r.coherent_like = r.coherent.fidelity >= kCoherentLikeFidelity;
  return r;
}

inline const std::vector<double>& superposition_c2_values() {
  static const std::vector<double> v{-0.4, -0.3, -0.2, -0.1, -0.05, 0.1, 0.2};
  return v;
}

/// W(X, 0) profiles: columns c2, x, w.
inline void write_profiles(std::ostream& os, const std::vector<double>& c2_values, std::size_t points = 401) {
  csv::Writer out(os);
  out.header({"c2", "x", "w"});
  for (double c2 : c2_values) {
    const auto samples = wigner_cross_section(SuperpositionCase{0.2, c2}.state(), 0.0, 0.0, kProfileXMax, points);
    for (const auto& s : samples) out.field(c2).field(s.x).field(s.w).end_row();
  }
}

inline void write_fits(std::ostream& os, const std::vector<double>& c2_values) {
  csv::Writer out(os);
  out.header({"c2", "case", "peak_x", "coherent_alpha3", "coherent_fidelity", "coherent_like"});
  for (double c2 : c2_values) {
    const auto r = analyze(SuperpositionCase{0.2, c2});
    out.field(c2)
        .field(to_string(r.label))
        .field(r.peak_x)
        .field(r.coherent.alpha3)
        .field(r.coherent.fidelity)
        .field(r.coherent_like ? 1 : 0)
        .end_row();
  }
}

/// Amplitude / fidelity of the coherent-like state as c2 runs over [-0.4, 0.2]
/// in steps of 0.005.
inline void write_amplitude_curve(std::ostream& os) {
  csv::Writer out(os);
  out.header({"c2", "case", "coherent_alpha3", "coherent_fidelity", "peak_x"});
  for (int i = -80; i <= 40; ++i) {
    const double c2 = 0.005 * i;
    const SuperpositionCase c{0.2, c2};
    const ModeState s = c.state();
    const CatFit fit = fit_coherent(s, kProfileXMax);
    out.field(c2)
        .field(to_string(classify_case(c.c1, c2)))
        .field(fit.alpha3)
        .field(fit.fidelity)
        .field(wigner_peak_x(s, 0.0, kProfileXMax))
        .end_row();
  }
}

}  // namespace catbreed::reproduce
