#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "catbreed/fock.hpp"
#include "catbreed/reproduce.hpp"

namespace catbreed::verify {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct Report {
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
  void add(std::string name, double residual, double tolerance) {
    checks.push_back({std::move(name), residual <= tolerance, residual, tolerance});
  }
};

struct Options {
  /// Number of random coupling lengths per parity scenario.
  int samples = 10;
  unsigned seed = 20240607;
  /// Debug negative control: run the analytic coupler with r -> -r.
  bool flip_r = false;
};

inline constexpr double kOracleTolerance = 1e-8;
inline constexpr double kTermTolerance = 1e-12;
inline constexpr double kReconstructionTolerance = 1e-10;

namespace detail {

inline TwoModeState analytic_evolve(const TwoModeState& in, const CouplerParams& p, bool flip_r) {
  return evolve_amplitudes(in, p.t(), flip_r ? -p.r() : p.r());
}

inline std::string label(const reproduce::FigureSetup& fig, double z) {
  return std::string(fig.name) + " " + to_string(fig.scenario.parity1) + "/" + to_string(fig.scenario.parity2) +
         " z=" + csv::format_double(z / std::numbers::pi) + "pi";
}

}  // namespace detail

/// Cross-checks the closed-form coupler and herald against the truncated Fock
/// oracle for the four parity scenarios at random coupling lengths in (0, pi/2).
inline Report run(const Options& opt = {}) {
  Report report;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> angle(0.01 * std::numbers::pi, 0.49 * std::numbers::pi);

  for (const auto& fig : reproduce::coupler_figures()) {
    const Scenario& sc = fig.scenario;
    const TwoModeState input = product_state(sc.input_a(), sc.input_b());
    const int cutoff = fock::default_cutoff(std::hypot(sc.alpha0, sc.beta0));
    const fock::TwoModeFock input_fock = fock::to_fock(input, cutoff, cutoff);

    for (int i = 0; i < opt.samples; ++i) {
      const CouplerParams params{sc.mu, angle(rng) / sc.mu};
      const std::string tag = detail::label(fig, params.z);
      const double t = params.t();
      const double r = params.r();
      const TwoModeState evolved = detail::analytic_evolve(input, params, opt.flip_r);

      // First product term |alpha0>|i beta0> must land on
      // |t alpha0 + r beta0>|i (t beta0 - r alpha0)>, whose vacuum weight is c1.
      const auto& first = evolved.terms().front();
      const double expected_c1 = std::exp(-0.5 * std::pow(t * sc.beta0 - r * sc.alpha0, 2));
      report.add("term map / c1 branch  " + tag,
                 std::abs(first.alpha_a - complex(t * sc.alpha0 + r * sc.beta0, 0.0)) +
                     std::abs(number_amplitude(first.alpha_b, 0) - expected_c1),
                 kTermTolerance);

      const fock::TwoModeFock evolved_fock = fock::evolve_fock(input_fock, params);
      const fock::TwoModeFock analytic_fock = fock::to_fock(evolved, cutoff, cutoff);
      const double two_mode_overlap = std::abs((analytic_fock.amps.conjugate().cwiseProduct(evolved_fock.amps)).sum());
      report.add("two-mode oracle       " + tag, 1.0 - two_mode_overlap, kOracleTolerance);

      const HeraldOutcome out = herald(evolved, sc.m);
      const fock::Projection proj = fock::project_mode2(evolved_fock, sc.m);
      report.add("herald fidelity       " + tag,
                 1.0 - fock::fidelity(fock::to_fock(out.state, cutoff), proj.state), kOracleTolerance);
      report.add("herald probability    " + tag, std::abs(out.probability - proj.probability), kOracleTolerance);

      const auto coeffs = scenario_coefficients(sc.parity1, sc.parity2, sc.alpha0, sc.beta0, params, sc.m);
      report.add("closed-form state     " + tag, 1.0 - fidelity(scenario_state(coeffs), out.state),
                 kReconstructionTolerance);

      double total = 0.0;
      for (double p : herald_distribution(evolved)) total += p;
      report.add("herald completeness   " + tag, std::abs(total - 1.0), kReconstructionTolerance);
    }
  }

  // Odd cats on both inputs and no coupling: mode 2 holds no vacuum component.
  {
    const Scenario sc{Parity::Odd, Parity::Odd, 1.7, 0.8, 1.0, 0};
    const TwoModeState evolved =
        detail::analytic_evolve(product_state(sc.input_a(), sc.input_b()), {1.0, 0.0}, opt.flip_r);
    double p = 1.0;
    try {
      p = herald(evolved, 0).probability;
    } catch (const ZeroProbabilityError& e) {
      p = e.probability();
    }
    report.add("zero-probability herald odd/odd z=0", p, kZeroThreshold);
  }
  return report;
}

inline void print(std::ostream& os, const Report& report) {
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  residual=" << csv::format_double(c.residual)
       << "  tol=" << csv::format_double(c.tolerance) << '\n';
  }
  os << (report.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace catbreed::verify
