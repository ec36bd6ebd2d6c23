// lgsim: batch runner for Leggett-Garg sweeps over the C interface.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgsim/lgsim.h"

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kUsage = 2, kRuntime = 3 };

struct ConfigDeleter {
  void operator()(lgsim_config* c) const { lgsim_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<lgsim_config, ConfigDeleter>;

struct Failure {
  lgsim_status status;
};

void check(lgsim_status s) {
  if (s != LGSIM_OK) throw Failure{s};
}

struct RunFlags {
  std::string config_path;
  std::vector<std::string> schemes;
  std::vector<std::string> n_values;
  std::string gamma_d, gamma_l, gamma_D_coll, gamma_L_coll;
  std::string backend, boundary, out_dir;
  std::string grid_points, curve_points, refine_tol, workers, full_space_cap;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "Config file (key = value lines)");
  cmd->add_option("--scheme", f.schemes, "Scheme id or letter a..f, or 'all' (repeatable)");
  cmd->add_option("--n", f.n_values, "Qubit count, list or range a..b (repeatable)");
  cmd->add_option("--gamma-d", f.gamma_d, "Individual dephasing rate (units of Omega)");
  cmd->add_option("--gamma-l", f.gamma_l, "Individual relaxation rate");
  cmd->add_option("--gamma-D-coll", f.gamma_D_coll, "Collective dephasing rate");
  cmd->add_option("--gamma-L-coll", f.gamma_L_coll, "Collective relaxation rate");
  cmd->add_option("--backend", f.backend, "dicke, full or auto")->check(CLI::IsMember({"dicke", "full", "auto"}));
  cmd->add_option("--grid-points", f.grid_points, "K_max search grid (0 = max(2000, 20 N))");
  cmd->add_option("--curve-points", f.curve_points, "Samples per K curve");
  cmd->add_option("--refine-tol", f.refine_tol, "Golden-section tolerance on omega tau");
  cmd->add_option("--boundary", f.boundary, "m = 0 bin for central schemes")
      ->check(CLI::IsMember({"m0-minus", "m0-plus"}));
  cmd->add_option("--workers", f.workers, "Worker threads (default: LGSIM_WORKERS or all cores)");
  cmd->add_option("--full-space-cap", f.full_space_cap, "Largest N for the full 2^N backend");
  cmd->add_option("--out", f.out_dir, "Output directory");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

// File keys first, then flags on top.
ConfigPtr build_config(const RunFlags& f) {
  lgsim_config* raw = nullptr;
  check(f.config_path.empty() ? lgsim_config_create(&raw) : lgsim_config_load(f.config_path.c_str(), &raw));
  ConfigPtr cfg(raw);
  auto set = [&](const char* key, const std::string& value) {
    if (!value.empty()) check(lgsim_config_set(cfg.get(), key, value.c_str()));
  };
  set("schemes", join(f.schemes));
  set("n_values", join(f.n_values));
  set("gamma_d", f.gamma_d);
  set("gamma_l", f.gamma_l);
  set("gamma_D_coll", f.gamma_D_coll);
  set("gamma_L_coll", f.gamma_L_coll);
  set("backend", f.backend);
  set("boundary", f.boundary);
  set("output_dir", f.out_dir);
  set("grid_points", f.grid_points);
  set("curve_points", f.curve_points);
  set("refine_tol", f.refine_tol);
  set("workers", f.workers);
  set("full_space_cap", f.full_space_cap);
  check(lgsim_config_validate(cfg.get()));
  return cfg;
}

void print_line(const char* line, void*) { std::printf("%s\n", line); }

void print_check_line(const char* line, void* user) {
  const bool machine = *static_cast<bool*>(user);
  std::printf("%s\n", line);
  if (!machine) std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leggett-Garg inequality simulator for N-qubit collective spins"};
  app.set_version_flag("--version", std::string(lgsim_version()));
  app.require_subcommand(1);

  RunFlags curve_flags, kmax_flags, disc_flags;
  auto* curve = app.add_subcommand("curve", "K vs omega tau, one CSV per (scheme, N)");
  add_run_flags(curve, curve_flags);
  auto* kmax = app.add_subcommand("kmax-sweep", "K_max vs N as a single CSV");
  add_run_flags(kmax, kmax_flags);
  auto* disc = app.add_subcommand("disconnectivity", "Disconnectivity table as a CSV");
  add_run_flags(disc, disc_flags);

  auto* validate = app.add_subcommand("validate", "Run the oracle suite");
  std::string level = "fast";
  bool corrupt = false, machine = false;
  validate->add_option("--level", level, "fast (N <= 10) or full")->check(CLI::IsMember({"fast", "full"}));
  validate->add_flag("--corrupt-jminus", corrupt, "Fault injection: perturb J- before the Casimir check");
  validate->add_flag("--machine", machine, "Only the CHECK lines");

  auto* plot = app.add_subcommand("plot-script", "Write a gnuplot script for CSVs from this tool");
  std::vector<std::string> csvs;
  std::string script = "lgsim_plot.gp";
  plot->add_option("csv", csvs, "CSV files")->required();
  plot->add_option("--out", script, "Script path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (curve->parsed()) {
      check(lgsim_cmd_curve(build_config(curve_flags).get(), print_line, nullptr));
    } else if (kmax->parsed()) {
      check(lgsim_cmd_kmax_sweep(build_config(kmax_flags).get(), print_line, nullptr));
    } else if (disc->parsed()) {
      check(lgsim_cmd_disconnectivity(build_config(disc_flags).get(), print_line, nullptr));
    } else if (plot->parsed()) {
      std::vector<const char*> paths;
      for (const auto& c : csvs) paths.push_back(c.c_str());
      check(lgsim_cmd_plot_script(paths.data(), paths.size(), script.c_str()));
      std::printf("%s\n", script.c_str());
    } else if (validate->parsed()) {
      int failures = 0;
      check(lgsim_validate(level == "full" ? LGSIM_VALIDATE_FULL : LGSIM_VALIDATE_FAST, corrupt ? 1 : 0,
                           print_check_line, &machine, &failures));
      if (!machine) std::printf("validate %s: %s (%d failing)\n", level.c_str(), failures ? "FAIL" : "PASS", failures);
      return failures ? kChecksFailed : kOk;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "lgsim: %s: %s\n", lgsim_status_string(f.status), lgsim_last_error());
    if (f.status == LGSIM_ERR_MEMORY_GUARD && lgsim_last_error_bytes())
      std::fprintf(stderr, "lgsim: estimated requirement %zu bytes\n", lgsim_last_error_bytes());
    return f.status == LGSIM_ERR_CONFIG || f.status == LGSIM_ERR_INVALID_ARGUMENT ? kUsage : kRuntime;
  }
  return kOk;
}
