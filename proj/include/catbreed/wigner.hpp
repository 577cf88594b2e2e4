#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <vector>

#include "catbreed/coherent.hpp"
#include "catbreed/csv.hpp"
#include "catbreed/optimize.hpp"

namespace catbreed {

inline constexpr double kWignerBound = 2.0 / std::numbers::pi;

/// X = Re(alpha), P = Im(alpha).
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

namespace detail {

inline void require_normalized(const ModeState& s, const char* who) {
  if (!s.is_normalized()) {
    throw ContractViolation(std::string(who) + ": state is not normalized (norm_sq = " +
                            std::to_string(s.norm_sq()) + ")");
  }
}

}  // namespace detail

/// Wigner function of the dyad |a><b| at gamma:
///   (2/pi) <b|a> exp(-2 (gamma - a)(conj(gamma) - conj(b))).
/// Valid for arbitrary complex a, b; the overlap is folded into one exponent.
inline complex wigner_dyad(complex a, complex b, complex gamma) {
  const complex exponent = -0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(b) * a -
                           2.0 * (gamma - a) * (std::conj(gamma) - std::conj(b));
  return kWignerBound * std::exp(exponent);
}

/// Raw dyad sum before the imaginary residue is discarded.
inline complex wigner_point_complex(const ModeState& state, PhasePoint at) {
  const complex gamma(at.x, at.p);
  complex acc = 0.0;
  for (const auto& i : state.terms()) {
    for (const auto& j : state.terms()) {
      acc += i.coeff * std::conj(j.coeff) * wigner_dyad(i.alpha, j.alpha, gamma);
    }
  }
  return acc;
}

inline double wigner_point(const ModeState& state, PhasePoint at) {
  detail::require_normalized(state, "wigner_point");
  return wigner_point_complex(state, at).real();
}

struct CrossSample {
  double x;
  double w;
};

/// W(x, p) sampled at n evenly spaced x in [x_min, x_max].
inline std::vector<CrossSample> wigner_cross_section(const ModeState& state, double p, double x_min,
                                                     double x_max, std::size_t n) {
  if (n < 2 || !(x_max > x_min)) throw InvalidArgument("wigner_cross_section: need n >= 2 and x_max > x_min");
  detail::require_normalized(state, "wigner_cross_section");
  std::vector<CrossSample> out;
  out.reserve(n);
  const double step = (x_max - x_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_min + step * static_cast<double>(i);
    out.push_back({x, wigner_point_complex(state, {x, p}).real()});
  }
  return out;
}

inline constexpr std::size_t kPeakScanPoints = 2001;

/// Abscissa of the global maximum of W(X, 0) on [lo, hi].
inline double wigner_peak_x(const ModeState& state, double lo, double hi) {
  detail::require_normalized(state, "wigner_peak_x");
  if (!(hi > lo)) throw InvalidArgument("wigner_peak_x: need hi > lo");
  auto w = [&](double x) { return wigner_point_complex(state, {x, 0.0}).real(); };
  double w_min = w(lo);
  double w_max = w_min;
  const double step = (hi - lo) / static_cast<double>(kPeakScanPoints - 1);
  for (std::size_t i = 1; i < kPeakScanPoints; ++i) {
    const double v = w(lo + step * static_cast<double>(i));
    w_min = std::min(w_min, v);
    w_max = std::max(w_max, v);
  }
  if (w_max - w_min < 1e-14) throw NoPeakError("wigner_peak_x: flat profile on search interval");
  return opt::scan_maximize(w, lo, hi, kPeakScanPoints, 1e-10).x;
}

struct GridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  std::size_t x_count = 161;
  double p_min = -4.0;
  double p_max = 4.0;
  std::size_t p_count = 161;

  void validate() const {
    if (x_count < 2 || p_count < 2 || !(x_max > x_min) || !(p_max > p_min)) {
      throw InvalidArgument("GridSpec: counts must be >= 2 and max > min on both axes");
    }
  }
  double dx() const { return (x_max - x_min) / static_cast<double>(x_count - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(p_count - 1); }
  double x_at(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
  double p_at(std::size_t j) const { return p_min + dp() * static_cast<double>(j); }
};

/// Square grid spanning +-(max|alpha| + 4) on both axes.
inline GridSpec default_grid(const ModeState& state, std::size_t count = 161) {
  const double half = state.max_amplitude() + 4.0;
  return {-half, half, count, -half, half, count};
}

struct WignerGrid {
  GridSpec spec;
  /// Row-major, x varying fastest: values[j * x_count + i] = W(x_i, p_j).
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[j * spec.x_count + i]; }

  /// Riemann sum of W dx dp.
  double integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * spec.dx() * spec.dp();
  }
};

inline WignerGrid wigner_grid(const ModeState& state, const GridSpec& spec) {
  spec.validate();
  detail::require_normalized(state, "wigner_grid");
  WignerGrid grid{spec, std::vector<double>(spec.x_count * spec.p_count)};
  for (std::size_t j = 0; j < spec.p_count; ++j) {
    const double p = spec.p_at(j);
    for (std::size_t i = 0; i < spec.x_count; ++i) {
      grid.values[j * spec.x_count + i] = wigner_point_complex(state, {spec.x_at(i), p}).real();
    }
  }
  return grid;
}

/// CSV with header `x,p,w`, p-major rows.
inline void write_grid_csv(std::ostream& os, const WignerGrid& grid) {
  csv::Writer out(os);
  out.header({"x", "p", "w"});
  for (std::size_t j = 0; j < grid.spec.p_count; ++j) {
    for (std::size_t i = 0; i < grid.spec.x_count; ++i) {
      out.field(grid.spec.x_at(i)).field(grid.spec.p_at(j)).field(grid.at(i, j)).end_row();
    }
  }
}

}  // namespace catbreed
