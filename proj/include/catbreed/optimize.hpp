#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "catbreed/error.hpp"

namespace catbreed::opt {

struct Maximum {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  /// Coarse argmax sat on the first / last sample of the scan.
  bool at_lower = false;
  bool at_upper = false;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
template <typename F>
Maximum golden_maximize(F&& f, double a, double b, double tol, int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && (b - a) > tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), false, false};
}

/// Uniform scan of `points` samples on [lo, hi], then golden refinement inside
/// the two cells around the best sample.
template <typename F>
Maximum scan_maximize(F&& f, double lo, double hi, std::size_t points, double tol) {
  if (!(hi > lo) || points < 3) throw InvalidArgument("scan_maximize: need hi > lo and >= 3 points");
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double v = f(lo + step * static_cast<double>(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  const double b = lo + step * static_cast<double>(best + 1 >= points ? points - 1 : best + 1);
  Maximum refined = golden_maximize(f, a, b, tol);
  if (refined.value < best_value) refined = {lo + step * static_cast<double>(best), best_value, false, false};
  refined.at_lower = (best == 0);
  refined.at_upper = (best == points - 1);
  return refined;
}

}  // namespace catbreed::opt
