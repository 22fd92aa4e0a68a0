#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tdho/errors.hpp"
#include "tdho/quadrature.hpp"
#include "tdho/sigma_model.hpp"

namespace tdho {

// Run configuration, parsed from a sectioned key=value file:
//
//   [run]
//   experiment = verify_theorem     # classical|params|evolve|verify_theorem|picard
//   seed = 42
//
//   [sigma]
//   kind = inverse_square           # zero|constant|inverse_square|tabulated|lens_power
//   sigma0 = 0.09
//   r0 = 1.0
//
//   [profile]
//   family = gaussian
//   amplitude = 0.05
//   width = 1.0
//   mu = 0.01
//   n = 1
//
//   [grid]
//   points = 4096
//   extent = 40.0
//
//   [solver]
//   dt_initial = 1e-3
//   dt_control = proportional_to_t  # fixed|proportional_to_t
//   mass_tol = 1e-8
//   quadrature = simpson            # trapezoid|simpson
//   t_truncate = 0                  # 0 = 100 * t_start
//   frame = moving                  # fixed|moving
//   picard_iterations = 5
//
//   [window]
//   t_start = 10
//   t_end = 100
//
//   [parameters]                    # optional explicit overrides; 0/-1 = auto
//   alpha = 0
//   b = 0
//   alpha_n = 0
//   lambda = -1
//
//   [output]
//   dir = out/run
//
// '#' and ';' start comments.  Unknown sections or keys are hard errors.

struct RunConfig {
  std::string experiment;  // may be empty when the CLI subcommand decides
  std::uint64_t seed = 0;

  struct SigmaCfg {
    std::string kind = "zero";
    double value = 0.0;
    double sigma0 = 0.0;
    double r0 = 1.0;
    double lambda = 0.0;
    std::vector<std::pair<double, double>> knots;
  } sigma;

  struct ProfileCfg {
    std::string family = "gaussian";
    double amplitude = 0.05;
    double width = 1.0;
    double mu = 0.01;
    int n = 1;
    std::string file;  // optional snapshot path for hat_u_plus
  } profile;

  struct GridCfg {
    std::size_t points = 4096;
    double extent = 40.0;
  } grid;

  struct SolverCfg {
    double dt_initial = 1e-3;
    std::string dt_control = "proportional_to_t";
    double mass_tol = 1e-8;
    std::string quadrature = "simpson";
    double t_truncate = 0.0;
    std::string frame = "moving";
    int picard_iterations = 5;
  } solver;

  struct WindowCfg {
    double t_start = 10.0;
    double t_end = 100.0;
  } window;

  struct ParametersCfg {
    double alpha = 0.0;    // 0 = auto
    double b = 0.0;        // 0 = auto
    double alpha_n = 0.0;  // 0 = auto
    double lambda = -1.0;  // < 0 = extract from sigma
  } parameters;

  std::string output_dir = "out";

  SigmaModel sigma_model() const {
    if (sigma.kind == "zero") return SigmaModel::zero();
    if (sigma.kind == "constant") return SigmaModel::constant(sigma.value);
    if (sigma.kind == "inverse_square") return SigmaModel::inverse_square(sigma.sigma0, sigma.r0);
    if (sigma.kind == "tabulated") return SigmaModel::tabulated(sigma.knots);
    if (sigma.kind == "lens_power") return SigmaModel::lens_power(sigma.lambda);
    fail(ErrorCode::ValidationError, "sigma.kind: unknown kind '" + sigma.kind + "'");
  }
};

namespace detail_config {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (...) {
    fail(ErrorCode::ValidationError, key + ": not a number: '" + v + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (...) {
    fail(ErrorCode::ValidationError, key + ": not an integer: '" + v + "'");
  }
}

inline std::vector<std::pair<double, double>> parse_knots(const std::string& key,
                                                          const std::string& v) {
  std::vector<std::pair<double, double>> knots;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::ValidationError, key + ": knot '" + item + "' is not t:sigma");
    knots.emplace_back(parse_double(key, trim(item.substr(0, colon))),
                       parse_double(key, trim(item.substr(colon + 1))));
  }
  return knots;
}

inline const std::set<std::string>& known_experiments() {
  static const std::set<std::string> e = {"classical", "params", "evolve", "verify_theorem",
                                          "picard"};
  return e;
}

}  // namespace detail_config

inline RunConfig parse_config(const std::string& text) {
  using namespace detail_config;
  RunConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto where = [&](std::size_t col) {
    return " (line " + std::to_string(lineno) + ", column " + std::to_string(col + 1) + ")";
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        fail(ErrorCode::ParseError, "unterminated section header" + where(line.find('[')));
      section = trim(body.substr(1, body.size() - 2));
      static const std::set<std::string> sections = {"run",    "sigma",      "profile", "grid",
                                                     "solver", "window",     "parameters",
                                                     "output", "sweep"};
      if (!sections.count(section))
        fail(ErrorCode::ValidationError, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ParseError, "expected key = value" + where(line.find(body)));
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::ParseError, "empty key" + where(0));
    const std::string qual = section + "." + key;

    if (section == "run") {
      if (key == "experiment") {
        if (!known_experiments().count(value))
          fail(ErrorCode::ValidationError, qual + ": unknown experiment '" + value + "'");
        cfg.experiment = value;
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(qual, value));
      } else {
        fail(ErrorCode::ValidationError, "unknown key " + qual);
      }
    } else if (section == "sigma") {
      if (key == "kind") cfg.sigma.kind = value;
      else if (key == "value") cfg.sigma.value = parse_double(qual, value);
      else if (key == "sigma0") cfg.sigma.sigma0 = parse_double(qual, value);
      else if (key == "r0") cfg.sigma.r0 = parse_double(qual, value);
      else if (key == "lambda") cfg.sigma.lambda = parse_double(qual, value);
      else if (key == "knots") cfg.sigma.knots = parse_knots(qual, value);
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "profile") {
      if (key == "family") cfg.profile.family = value;
      else if (key == "amplitude") cfg.profile.amplitude = parse_double(qual, value);
      else if (key == "width") cfg.profile.width = parse_double(qual, value);
      else if (key == "mu") cfg.profile.mu = parse_double(qual, value);
      else if (key == "n") cfg.profile.n = static_cast<int>(parse_int(qual, value));
      else if (key == "file") cfg.profile.file = value;
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "grid") {
      if (key == "points") cfg.grid.points = static_cast<std::size_t>(parse_int(qual, value));
      else if (key == "extent") cfg.grid.extent = parse_double(qual, value);
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "solver") {
      if (key == "dt_initial") cfg.solver.dt_initial = parse_double(qual, value);
      else if (key == "dt_control") cfg.solver.dt_control = value;
      else if (key == "mass_tol") cfg.solver.mass_tol = parse_double(qual, value);
      else if (key == "quadrature") cfg.solver.quadrature = value;
      else if (key == "t_truncate") cfg.solver.t_truncate = parse_double(qual, value);
      else if (key == "frame") cfg.solver.frame = value;
      else if (key == "picard_iterations")
        cfg.solver.picard_iterations = static_cast<int>(parse_int(qual, value));
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "window") {
      if (key == "t_start") cfg.window.t_start = parse_double(qual, value);
      else if (key == "t_end") cfg.window.t_end = parse_double(qual, value);
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "parameters") {
      if (key == "alpha") cfg.parameters.alpha = parse_double(qual, value);
      else if (key == "b") cfg.parameters.b = parse_double(qual, value);
      else if (key == "alpha_n") cfg.parameters.alpha_n = parse_double(qual, value);
      else if (key == "lambda") cfg.parameters.lambda = parse_double(qual, value);
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = value;
      else fail(ErrorCode::ValidationError, "unknown key " + qual);
    } else if (section == "sweep") {
      // handled by the sweep loader; ignore here so a sweep file can embed a base
      fail(ErrorCode::ValidationError,
           "sweep keys belong in a sweep file, not a run config (" + qual + ")");
    } else {
      fail(ErrorCode::ParseError, "key outside any section" + where(0));
    }
  }
  return cfg;
}

/// Validate cross-field invariants for the given experiment.
inline void validate_config(const RunConfig& cfg, const std::string& experiment) {
  if (!detail_config::known_experiments().count(experiment))
    fail(ErrorCode::ValidationError, "unknown experiment '" + experiment + "'");
  if (!cfg.experiment.empty() && cfg.experiment != experiment)
    fail(ErrorCode::ValidationError, "config experiment '" + cfg.experiment +
                                         "' does not match the requested '" + experiment + "'");
  (void)cfg.sigma_model();  // validates the sigma block
  if (cfg.profile.family != "gaussian" && cfg.profile.file.empty())
    fail(ErrorCode::ValidationError, "profile.family: unknown family '" + cfg.profile.family + "'");
  if (cfg.profile.n < 1 || cfg.profile.n > 3)
    fail(ErrorCode::ValidationError, "profile.n must be 1, 2 or 3");
  if (!(cfg.grid.extent > 0.0)) fail(ErrorCode::ValidationError, "grid.extent must be positive");
  if (experiment != "params") {
    if (!(cfg.window.t_start >= 2.0))
      fail(ErrorCode::ValidationError, "window.t_start must be >= 2");
    if (!(cfg.window.t_end > cfg.window.t_start))
      fail(ErrorCode::ValidationError, "window.t_end must exceed window.t_start");
  }
  if (cfg.solver.dt_control != "fixed" && cfg.solver.dt_control != "proportional_to_t")
    fail(ErrorCode::ValidationError, "solver.dt_control must be fixed or proportional_to_t");
  if (cfg.solver.quadrature != "trapezoid" && cfg.solver.quadrature != "simpson")
    fail(ErrorCode::ValidationError, "solver.quadrature must be trapezoid or simpson");
  if (cfg.solver.frame != "fixed" && cfg.solver.frame != "moving")
    fail(ErrorCode::ValidationError, "solver.frame must be fixed or moving");
  if (!(cfg.solver.dt_initial > 0.0))
    fail(ErrorCode::ValidationError, "solver.dt_initial must be positive");
  if (cfg.solver.picard_iterations < 1)
    fail(ErrorCode::ValidationError, "solver.picard_iterations must be >= 1");
}

std::string format_double(double x);  // defined in csv.hpp

inline std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[run]\n";
  if (!cfg.experiment.empty()) out << "experiment = " << cfg.experiment << "\n";
  out << "seed = " << cfg.seed << "\n\n";
  out << "[sigma]\nkind = " << cfg.sigma.kind << "\n";
  if (cfg.sigma.kind == "constant") out << "value = " << format_double(cfg.sigma.value) << "\n";
  if (cfg.sigma.kind == "inverse_square") {
    out << "sigma0 = " << format_double(cfg.sigma.sigma0) << "\n";
    out << "r0 = " << format_double(cfg.sigma.r0) << "\n";
  }
  if (cfg.sigma.kind == "lens_power")
    out << "lambda = " << format_double(cfg.sigma.lambda) << "\n";
  if (cfg.sigma.kind == "tabulated") {
    out << "knots = ";
    for (std::size_t i = 0; i < cfg.sigma.knots.size(); ++i) {
      if (i) out << ", ";
      out << format_double(cfg.sigma.knots[i].first) << ":"
          << format_double(cfg.sigma.knots[i].second);
    }
    out << "\n";
  }
  out << "\n[profile]\nfamily = " << cfg.profile.family << "\n";
  out << "amplitude = " << format_double(cfg.profile.amplitude) << "\n";
  out << "width = " << format_double(cfg.profile.width) << "\n";
  out << "mu = " << format_double(cfg.profile.mu) << "\n";
  out << "n = " << cfg.profile.n << "\n";
  if (!cfg.profile.file.empty()) out << "file = " << cfg.profile.file << "\n";
  out << "\n[grid]\npoints = " << cfg.grid.points << "\n";
  out << "extent = " << format_double(cfg.grid.extent) << "\n";
  out << "\n[solver]\ndt_initial = " << format_double(cfg.solver.dt_initial) << "\n";
  out << "dt_control = " << cfg.solver.dt_control << "\n";
  out << "mass_tol = " << format_double(cfg.solver.mass_tol) << "\n";
  out << "quadrature = " << cfg.solver.quadrature << "\n";
  out << "t_truncate = " << format_double(cfg.solver.t_truncate) << "\n";
  out << "frame = " << cfg.solver.frame << "\n";
  out << "picard_iterations = " << cfg.solver.picard_iterations << "\n";
  out << "\n[window]\nt_start = " << format_double(cfg.window.t_start) << "\n";
  out << "t_end = " << format_double(cfg.window.t_end) << "\n";
  out << "\n[parameters]\nalpha = " << format_double(cfg.parameters.alpha) << "\n";
  out << "b = " << format_double(cfg.parameters.b) << "\n";
  out << "alpha_n = " << format_double(cfg.parameters.alpha_n) << "\n";
  out << "lambda = " << format_double(cfg.parameters.lambda) << "\n";
  out << "\n[output]\ndir = " << cfg.output_dir << "\n";
  return out.str();
}

}  // namespace tdho
