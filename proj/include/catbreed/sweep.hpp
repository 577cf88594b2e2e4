#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "catbreed/coupler.hpp"
#include "catbreed/csv.hpp"
#include "catbreed/metrics.hpp"
#include "catbreed/wigner.hpp"

namespace catbreed {

/// Input cats SC(alpha0, parity1) on waveguide 1 and SC(i beta0, parity2) on
/// waveguide 2, coupling strength mu, m photons heralded on waveguide 2.
struct Scenario {
  Parity parity1 = Parity::Odd;
  Parity parity2 = Parity::Odd;
  double alpha0 = 1.7;
  double beta0 = 0.8;
  double mu = 1.0;
  int m = 0;

  void validate() const {
    if (!(alpha0 > 0.0) || !(beta0 > 0.0) || !std::isfinite(alpha0) || !std::isfinite(beta0)) {
      throw InvalidArgument("scenario: alpha0 and beta0 must be positive");
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("scenario: mu must be positive");
    if (m < 0) throw InvalidArgument("scenario: m must be >= 0");
  }

  ModeState input_a() const { return make_cat(complex(alpha0, 0.0), parity1); }
  ModeState input_b() const { return make_cat(complex(0.0, beta0), parity2); }
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One coupling length's worth of results. Fit fields are NaN when the herald
/// has zero probability.
struct SweepRow {
  double z = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double ratio = 0.0;
  double alpha3 = kNaN;
  double fidelity = kNaN;
  double probability = 0.0;
  CaseLabel case_label = CaseLabel::NonCat;
  double peak_x = kNaN;
  bool heralded = false;
  bool fit_at_boundary = false;
};

/// Half-width of the window around the fitted amplitude searched for the
/// Wigner lobe; keeps the central interference fringe out of the search.
inline constexpr double kPeakWindow = 0.75;

/// Analytic pipeline at one coupling length: product -> evolve -> herald -> fit.
inline SweepRow breed(const Scenario& sc, double z) {
  sc.validate();
  const CouplerParams params{sc.mu, z};
  params.validate();

  SweepRow row;
  row.z = z;
  const auto coeffs = scenario_coefficients(sc.parity1, sc.parity2, sc.alpha0, sc.beta0, params, sc.m);
  row.alpha1 = coeffs.alpha1;
  row.alpha2 = coeffs.alpha2;
  row.c1 = coeffs.c1;
  row.c2 = coeffs.c2;
  row.ratio = coefficient_ratio(sc.alpha0, sc.beta0, params);
  if (coeffs.c1 != 0.0 || coeffs.c2 != 0.0) row.case_label = classify_case(coeffs.c1, coeffs.c2);

  const TwoModeState evolved = evolve(product_state(sc.input_a(), sc.input_b()), params);
  try {
    const HeraldOutcome out = herald(evolved, sc.m);
    row.probability = out.probability;
    const CatFit fit = fit_cat(out.state, coeffs.parity, coeffs.alpha1 + coeffs.alpha2 + 1.0);
    row.alpha3 = fit.alpha3;
    row.fidelity = fit.fidelity;
    row.fit_at_boundary = fit.at_boundary;
    row.heralded = true;
    try {
      row.peak_x = wigner_peak_x(out.state, std::max(0.0, fit.alpha3 - kPeakWindow), fit.alpha3 + kPeakWindow);
    } catch (const NoPeakError&) {
      row.peak_x = kNaN;
    }
  } catch (const ZeroProbabilityError&) {
    row.probability = 0.0;
  }
  return row;
}

/// Worker count: hardware concurrency, capped by CATBREEDER_THREADS when set.
inline unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CATBREEDER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// `steps` evenly spaced z values on [z_min, z_max], endpoints included.
inline std::vector<double> z_grid(double z_min, double z_max, int steps) {
  if (!(z_min >= 0.0) || !(z_max > z_min) || steps < 2) {
    throw InvalidArgument("sweep: need 0 <= z_min < z_max and steps >= 2");
  }
  std::vector<double> zs(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) zs[static_cast<std::size_t>(i)] = z_min + (z_max - z_min) * i / (steps - 1);
  return zs;
}

/// Rows come back in z order regardless of thread count.
inline std::vector<SweepRow> run_sweep(const Scenario& sc, double z_min, double z_max, int steps,
                                       unsigned threads = 0) {
  sc.validate();
  const auto zs = z_grid(z_min, z_max, steps);
  std::vector<SweepRow> rows(zs.size());
  if (threads == 0) threads = sweep_threads();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(zs.size()));

  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < zs.size(); i += threads) rows[i] = breed(sc, zs[i]);
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  return rows;
}

enum class ObjectiveKind { MaxAmplitude, MaxProbability, AmplitudeThreshold };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::MaxAmplitude;
  /// Minimum fitted alpha3 for AmplitudeThreshold.
  double threshold = 2.0;
  /// Minimum fit fidelity for AmplitudeThreshold.
  double min_fidelity = 0.98;
};

/// Best sweep row for the objective. Throws InfeasibleError (carrying the best
/// reachable alpha3) when no row qualifies.
inline SweepRow find_optimum(const Scenario& sc, double z_min, double z_max, int steps, const Objective& obj) {
  const auto rows = run_sweep(sc, z_min, z_max, steps);
  const SweepRow* best = nullptr;
  double best_alpha3 = -1.0;
  for (const auto& row : rows) {
    if (!row.heralded) continue;
    best_alpha3 = std::max(best_alpha3, row.alpha3);
    switch (obj.kind) {
      case ObjectiveKind::MaxAmplitude:
        if (!best || row.alpha3 > best->alpha3) best = &row;
        break;
      case ObjectiveKind::MaxProbability:
        if (!best || row.probability > best->probability) best = &row;
        break;
      case ObjectiveKind::AmplitudeThreshold:
        if (row.alpha3 >= obj.threshold && row.fidelity >= obj.min_fidelity &&
            (!best || row.probability > best->probability)) {
          best = &row;
        }
        break;
    }
  }
  if (!best) {
    throw InfeasibleError("no z satisfies the objective; best reachable alpha3 = " + csv::format_double(best_alpha3),
                          best_alpha3);
  }
  return *best;
}

inline void write_row_header(csv::Writer& out) {
  out.header({"z", "z_over_pi", "alpha1", "alpha2", "c1", "c2", "ratio", "alpha3", "fidelity", "probability",
              "case", "peak_x"});
}

inline void write_row(csv::Writer& out, const SweepRow& row) {
  auto opt_field = [&](double v) -> csv::Writer& {
    return std::isnan(v) ? out.field(std::string_view{}) : out.field(v);
  };
  out.field(row.z).field(row.z / std::numbers::pi).field(row.alpha1).field(row.alpha2).field(row.c1).field(row.c2).field(
      row.ratio);
  opt_field(row.alpha3);
  opt_field(row.fidelity);
  out.field(row.probability).field(to_string(row.case_label));
  opt_field(row.peak_x);
  out.end_row();
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  csv::Writer out(os);
  write_row_header(out);
  for (const auto& row : rows) write_row(out, row);
}

}  // namespace catbreed
