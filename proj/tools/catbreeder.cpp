// catbreeder: command-line front end for cat-state breeding in coupled waveguides.
//
// Exit codes: 0 success, 1 runtime / I-O error, 2 usage error, 3 verification failure.

#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catbreed/catbreed.hpp"

namespace {

namespace cb = catbreed;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every scenario flag is kept as text so config-file values and command-line
// values go through the same conversion.
struct Flags {
  std::map<std::string, std::string> values{
      {"parity1", "odd"},  {"parity2", "odd"}, {"alpha0", "1.7"}, {"beta0", "0.8"},
      {"mu", "1"},         {"z", "0.14"},      {"z-min", "0.01"}, {"z-max", "0.49"},
      {"steps", "200"},    {"m", "0"},         {"objective", "threshold"},
      {"threshold", "2.0"}, {"min-fidelity", "0.98"}, {"grid-count", "161"},
  };
  std::string out;
  std::string config;
  std::string state;
  std::string figure;
  int samples = 10;
  unsigned seed = 20240607;
  bool flip_r = false;
};

int parse_int(const std::string& s) {
  const double v = cb::config::parse_double(s);
  if (v != static_cast<double>(static_cast<long>(v))) throw cb::InvalidArgument("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

cb::Scenario scenario_from(const Flags& f) {
  cb::Scenario sc;
  sc.parity1 = cb::config::parse_parity(f.values.at("parity1"));
  sc.parity2 = cb::config::parse_parity(f.values.at("parity2"));
  sc.alpha0 = cb::config::parse_double(f.values.at("alpha0"));
  sc.beta0 = cb::config::parse_double(f.values.at("beta0"));
  sc.mu = cb::config::parse_double(f.values.at("mu"));
  sc.m = parse_int(f.values.at("m"));
  sc.validate();
  return sc;
}

// z values are given in units of pi (or radians with a "rad" suffix) and
// converted to a coupling length for the given mu.
double length_from(const Flags& f, const std::string& key, double mu) {
  return cb::config::parse_z(f.values.at(key)) / mu;
}

// Streams to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path.string());
  body(os);
  if (!os) throw std::runtime_error("write failed: " + path.string());
  std::cerr << "wrote " << path.string() << '\n';
}

void print_header(std::ostream& os, const cb::Scenario& sc) {
  os << "# parity1=" << cb::to_string(sc.parity1) << " parity2=" << cb::to_string(sc.parity2)
     << " alpha0=" << cb::csv::format_double(sc.alpha0) << " beta0=" << cb::csv::format_double(sc.beta0)
     << " mu=" << cb::csv::format_double(sc.mu) << " m=" << sc.m << '\n';
}

int cmd_breed(const Flags& f) {
  const auto sc = scenario_from(f);
  const auto row = cb::breed(sc, length_from(f, "z", sc.mu));
  Sink sink(f.out);
  cb::csv::Writer out(sink.stream());
  cb::write_row_header(out);
  cb::write_row(out, row);
  if (!row.heralded) std::cerr << "herald probability is zero at this coupling length\n";
  return 0;
}

int cmd_sweep(const Flags& f) {
  const auto sc = scenario_from(f);
  const auto rows = cb::run_sweep(sc, length_from(f, "z-min", sc.mu), length_from(f, "z-max", sc.mu),
                                  parse_int(f.values.at("steps")));
  Sink sink(f.out);
  print_header(sink.stream(), sc);
  cb::write_sweep_csv(sink.stream(), rows);
  return 0;
}

// "c:alpha,c:alpha,..." with real coefficients and amplitudes.
cb::ModeState parse_state(const std::string& spec) {
  std::vector<cb::CoherentTerm> terms;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw cb::InvalidArgument("state term must be coeff:alpha, got '" + item + "'");
    terms.push_back({cb::config::parse_double(item.substr(0, colon)), cb::config::parse_double(item.substr(colon + 1))});
  }
  if (terms.empty()) throw cb::InvalidArgument("empty --state");
  return cb::normalize(cb::ModeState::from_terms(terms));
}

int cmd_wigner(const Flags& f) {
  cb::ModeState state;
  if (!f.state.empty()) {
    state = parse_state(f.state);
  } else {
    const auto sc = scenario_from(f);
    const cb::CouplerParams params{sc.mu, length_from(f, "z", sc.mu)};
    state = cb::herald(cb::evolve(cb::product_state(sc.input_a(), sc.input_b()), params), sc.m).state;
  }
  const auto count = static_cast<std::size_t>(parse_int(f.values.at("grid-count")));
  const auto grid = cb::wigner_grid(state, cb::default_grid(state, count));
  Sink sink(f.out);
  cb::write_grid_csv(sink.stream(), grid);
  return 0;
}

int cmd_reproduce(const Flags& f) {
  const std::filesystem::path dir = f.out.empty() ? std::filesystem::path(".") : std::filesystem::path(f.out);
  std::filesystem::create_directories(dir);
  const bool all = f.figure == "all";
  bool matched = false;

  for (const auto& fig : cb::reproduce::coupler_figures()) {
    if (!all && f.figure != fig.name) continue;
    matched = true;
    const auto rows = cb::reproduce::figure_sweep(fig);
    write_file(dir / (std::string(fig.name) + ".csv"), [&](std::ostream& os) {
      print_header(os, fig.scenario);
      cb::write_sweep_csv(os, rows);
    });
    if (fig.name == "fig4") {
      const cb::CouplerParams params{1.0, 0.14 * std::numbers::pi};
      const auto& sc = fig.scenario;
      const auto state = cb::herald(cb::evolve(cb::product_state(sc.input_a(), sc.input_b()), params), 0).state;
      write_file(dir / "fig4_wigner.csv", [&](std::ostream& os) {
        cb::write_grid_csv(os, cb::wigner_grid(state, cb::default_grid(state)));
      });
    }
  }
  if (all || f.figure == "figA") {
    matched = true;
    const auto& c2s = cb::reproduce::superposition_c2_values();
    write_file(dir / "figA_profiles.csv", [&](std::ostream& os) { cb::reproduce::write_profiles(os, c2s); });
    write_file(dir / "figA_fits.csv", [&](std::ostream& os) { cb::reproduce::write_fits(os, c2s); });
    write_file(dir / "figA_curve.csv", [&](std::ostream& os) { cb::reproduce::write_amplitude_curve(os); });
  }
  if (!matched) throw UsageError("unknown figure '" + f.figure + "' (fig4, fig5, fig6, fig7, figA, all)");
  return 0;
}

int cmd_optimize(const Flags& f) {
  const auto sc = scenario_from(f);
  cb::Objective obj;
  const std::string& kind = f.values.at("objective");
  if (kind == "max-amplitude") {
    obj.kind = cb::ObjectiveKind::MaxAmplitude;
  } else if (kind == "max-probability") {
    obj.kind = cb::ObjectiveKind::MaxProbability;
  } else if (kind == "threshold") {
    obj.kind = cb::ObjectiveKind::AmplitudeThreshold;
  } else {
    throw UsageError("objective must be max-amplitude, max-probability or threshold");
  }
  obj.threshold = cb::config::parse_double(f.values.at("threshold"));
  obj.min_fidelity = cb::config::parse_double(f.values.at("min-fidelity"));
  try {
    const auto row = cb::find_optimum(sc, length_from(f, "z-min", sc.mu), length_from(f, "z-max", sc.mu),
                                      parse_int(f.values.at("steps")), obj);
    Sink sink(f.out);
    cb::csv::Writer out(sink.stream());
    cb::write_row_header(out);
    cb::write_row(out, row);
  } catch (const cb::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

int cmd_verify(const Flags& f) {
  cb::verify::Options opt;
  opt.samples = f.samples;
  opt.seed = f.seed;
  opt.flip_r = f.flip_r;
  const auto report = cb::verify::run(opt);
  Sink sink(f.out);
  cb::verify::print(sink.stream(), report);
  return report.all_passed() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Breed large Schrodinger-cat states from two kittens in coupled waveguides"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  std::map<std::string, std::string> given;
  auto add_value = [&](const std::string& key, const std::string& help) {
    app.add_option("--" + key, given[key], help);
  };
  add_value("parity1", "parity of the waveguide-1 cat (even|odd)");
  add_value("parity2", "parity of the waveguide-2 cat (even|odd)");
  add_value("alpha0", "waveguide-1 cat amplitude");
  add_value("beta0", "waveguide-2 cat amplitude (enters as i*beta0)");
  add_value("mu", "coupling strength (default 1)");
  add_value("z", "coupling length in units of pi; suffix 'rad' for radians");
  add_value("z-min", "sweep start (units of pi)");
  add_value("z-max", "sweep end (units of pi)");
  add_value("steps", "number of sweep points");
  add_value("m", "photon count heralded on waveguide 2 (default 0)");
  add_value("objective", "optimize: max-amplitude | max-probability | threshold");
  add_value("threshold", "optimize: minimum fitted amplitude for the threshold objective");
  add_value("min-fidelity", "optimize: minimum fit fidelity for the threshold objective");
  add_value("grid-count", "wigner: samples per axis");
  app.add_option("--out", f.out, "output file (directory for reproduce)");
  app.add_option("--config", f.config, "key = value file; command-line flags take precedence");

  auto* breed = app.add_subcommand("breed", "single coupling length: print one sweep row");
  auto* sweep = app.add_subcommand("sweep", "sweep the coupling length and write CSV");
  auto* wigner = app.add_subcommand("wigner", "Wigner-function grid of a heralded or custom state");
  wigner->add_option("--state", f.state, "custom superposition 'c:alpha,c:alpha,...' instead of a heralded state");
  auto* reproduce = app.add_subcommand("reproduce", "write the data behind a figure");
  reproduce->add_option("figure", f.figure, "fig4 | fig5 | fig6 | fig7 | figA | all")->required();
  auto* optimize = app.add_subcommand("optimize", "pick the best coupling length for an objective");
  auto* verify = app.add_subcommand("verify", "cross-check the analytic path against the Fock oracle");
  verify->add_option("--samples", f.samples, "random coupling lengths per parity scenario");
  verify->add_option("--seed", f.seed, "random seed");
  verify->add_flag("--flip-r", f.flip_r, "negative control: run the analytic coupler with r -> -r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (!f.config.empty()) {
      std::ifstream in(f.config);
      if (!in) throw std::runtime_error("cannot open config file: " + f.config);
      for (auto& [key, value] : cb::config::parse(in)) {
        if (key == "out" && f.out.empty()) {
          f.out = value;
        } else if (f.values.contains(key)) {
          f.values[key] = value;
        } else if (key != "config") {
          throw UsageError("unknown config key '" + key + "'");
        }
      }
    }
    for (const auto& [key, value] : given) {
      if (app.count("--" + key) > 0) f.values[key] = value;
    }

    if (*breed) return cmd_breed(f);
    if (*sweep) return cmd_sweep(f);
    if (*wigner) return cmd_wigner(f);
    if (*reproduce) return cmd_reproduce(f);
    if (*optimize) return cmd_optimize(f);
    if (*verify) return cmd_verify(f);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cb::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
