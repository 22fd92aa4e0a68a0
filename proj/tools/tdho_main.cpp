// tdho - simulation and verification toolkit for final-state asymptotics of
// the nonlinear Schroedinger equation with a time-decaying harmonic
// oscillator coefficient.
//
// Subcommands: classical | params | evolve | verify | picard | sweep
// Exit codes:  0 pass/success, 1 scientific fail, 2 usage/config error,
//              3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tdho/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) tdho::fail(tdho::ErrorCode::IoError, "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int dispatch(const std::string& experiment, const std::string& config_path,
             const std::string& out_override) {
  tdho::RunConfig cfg = tdho::parse_config(slurp(config_path));
  tdho::validate_config(cfg, experiment);
  const std::string out = tdho::runner_detail::resolve_out_dir(cfg.output_dir, out_override);
  return tdho::run_experiment(experiment, cfg, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"final-state asymptotics toolkit for decelerated Schroedinger flows"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = 1;
  bool force = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_dir, "output directory override");
  };

  CLI::App* c_classical =
      app.add_subcommand("classical", "solve the oscillator pair and extract asymptotics");
  CLI::App* c_params = app.add_subcommand("params", "emit the admissibility report");
  CLI::App* c_evolve = app.add_subcommand("evolve", "propagate the equation from the profile");
  CLI::App* c_verify = app.add_subcommand("verify", "full decay-rate verification pipeline");
  CLI::App* c_picard =
      app.add_subcommand("picard", "fixed-point construction on the backward equation");
  CLI::App* c_sweep = app.add_subcommand("sweep", "run a config family and aggregate results");
  for (CLI::App* sub : {c_classical, c_params, c_evolve, c_verify, c_picard, c_sweep})
    add_common(sub);
  c_sweep->add_option("--workers", workers, "parallel runs");
  c_sweep->add_flag("--force", force, "re-run completed entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tdho::kUsageError;
  }

  try {
    if (c_classical->parsed()) return dispatch("classical", config_path, out_dir);
    if (c_params->parsed()) return dispatch("params", config_path, out_dir);
    if (c_evolve->parsed()) return dispatch("evolve", config_path, out_dir);
    if (c_verify->parsed()) return dispatch("verify_theorem", config_path, out_dir);
    if (c_picard->parsed()) return dispatch("picard", config_path, out_dir);
    if (c_sweep->parsed()) {
      const tdho::SweepSpec sw = tdho::parse_sweep_file(slurp(config_path));
      const std::string out = tdho::runner_detail::resolve_out_dir(
          out_dir.empty() ? "sweep_out" : out_dir, "");
      return tdho::run_sweep(sw, out, workers, force);
    }
  } catch (const tdho::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case tdho::ErrorCode::ParseError:
      case tdho::ErrorCode::ValidationError:
      case tdho::ErrorCode::IoError:
        return tdho::kUsageError;
      default:
        return tdho::kNumericalFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tdho::kNumericalFail;
  }
  return tdho::kUsageError;
}
