#include "sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "macroscopicity.hpp"

#ifndef LGSIM_VERSION_STRING
#define LGSIM_VERSION_STRING "0.0.0"
#endif

namespace lgsim {

namespace {

void emit(const LineSink& log, const std::string& line) {
  if (log) log(line);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

void prepare_output(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());
}

std::string noise_line(const NoiseParams& n) {
  std::ostringstream os;
  os << n.tag() << " gamma_d=" << format_number(n.gamma_d) << " gamma_l=" << format_number(n.gamma_l)
     << " gamma_D_coll=" << format_number(n.Gamma_d) << " gamma_L_coll=" << format_number(n.Gamma_l);
  return os.str();
}

struct Job {
  SchemeId scheme;
  int n;
};

std::vector<Job> expand(const RunConfig& config) {
  std::vector<Job> jobs;
  for (SchemeId s : config.schemes)
    for (int n : config.n_values) jobs.push_back({s, n});
  return jobs;
}

ModelSpec spec_for(const RunConfig& config, const Job& job) {
  return {job.scheme, config.boundary, job.n, config.noise, config.backend, config.full_space_cap};
}

std::string edge_warning(SchemeId s, int n, double at) {
  return "warning: K_max for " + std::string(scheme_name(s)) + " N=" + std::to_string(n) +
         " sits at the grid edge (omega_tau = " + format_number(at) + ")";
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void run_parallel(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1, workers), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string curve_csv(const LGCurve& curve, const RunConfig& config) {
  std::ostringstream os;
  os << "# lgsim " << LGSIM_VERSION_STRING << " curve\n"
     << "# scheme = " << scheme_name(curve.scheme) << "\n"
     << "# n_qubits = " << curve.n_qubits << "\n"
     << "# boundary = " << boundary_name(curve.boundary) << "\n"
     << "# backend = " << basis_name(curve.backend) << "\n"
     << "# noise = " << noise_line(curve.noise) << "\n"
     << "# grid_points = " << config.grid_points << " refine_tol = " << format_number(config.refine_tol) << "\n"
     << "# k_max = " << format_number(curve.k_max) << " omega_tau_max = " << format_number(curve.omega_tau_max)
     << (curve.max_at_edge ? " (grid edge)" : "") << "\n"
     << "omega_tau,K,C21,C32,C31\n";
  for (const auto& s : curve.samples)
    os << format_number(s.omega_tau) << ',' << format_number(s.k) << ',' << format_number(s.c21) << ','
       << format_number(s.c32) << ',' << format_number(s.c31) << '\n';
  return os.str();
}

CommandResult cmd_curve(const RunConfig& config, const LineSink& log) {
  config.validate();
  prepare_output(config);
  const std::vector<Job> jobs = expand(config);
  const std::vector<double> grid = uniform_grid(config.curve_points);
  std::vector<LGCurve> curves(jobs.size());
  run_parallel(jobs.size(), config.resolved_workers(), [&](std::size_t i) {
    const LGModel model = make_model(spec_for(config, jobs[i]));
    curves[i] = model_curve(model, grid, config.search_options());
  });
  CommandResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto path = config.output_dir /
                      ("curve_" + std::string(scheme_name(jobs[i].scheme)) + "_N" + std::to_string(jobs[i].n) + ".csv");
    write_file(path, curve_csv(curves[i], config));
    result.files.push_back(path);
    emit(log, path.string());
    if (curves[i].max_at_edge) {
      result.warnings.push_back(edge_warning(jobs[i].scheme, jobs[i].n, curves[i].omega_tau_max));
      emit(log, result.warnings.back());
    }
  }
  return result;
}

CommandResult cmd_kmax_sweep(const RunConfig& config, const LineSink& log) {
  config.validate();
  prepare_output(config);
  const std::vector<Job> jobs = expand(config);
  std::vector<KMaxResult> results(jobs.size());
  std::vector<Basis> backends(jobs.size());
  run_parallel(jobs.size(), config.resolved_workers(), [&](std::size_t i) {
    const LGModel model = make_model(spec_for(config, jobs[i]));
    backends[i] = model.space.basis;
    results[i] = model_kmax(model, config.search_options());
  });
  CommandResult result;
  std::ostringstream os;
  os << "# lgsim " << LGSIM_VERSION_STRING << " kmax-sweep\n"
     << "# boundary = " << boundary_name(config.boundary) << "\n"
     << "# noise = " << noise_line(config.noise) << "\n"
     << "# grid_points = " << config.grid_points << " refine_tol = " << format_number(config.refine_tol) << "\n";
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (results[i].at_edge) result.warnings.push_back(edge_warning(jobs[i].scheme, jobs[i].n, results[i].omega_tau_max));
  for (const auto& w : result.warnings) os << "# " << w << "\n";
  os << "scheme,n_qubits,noise_tag,k_max,omega_tau_max,backend\n";
  for (std::size_t i = 0; i < jobs.size(); ++i)
    os << scheme_name(jobs[i].scheme) << ',' << jobs[i].n << ',' << config.noise.tag() << ','
       << format_number(results[i].k_max) << ',' << format_number(results[i].omega_tau_max) << ','
       << basis_name(backends[i]) << '\n';
  const auto path = config.output_dir / "kmax_sweep.csv";
  write_file(path, os.str());
  result.files.push_back(path);
  emit(log, path.string());
  for (const auto& w : result.warnings) emit(log, w);
  return result;
}

CommandResult cmd_disconnectivity(const RunConfig& config, const LineSink& log) {
  config.validate();
  for (SchemeId s : config.schemes)
    if (s == SchemeId::normalized_jz_vn)
      throw ConfigError("schemes", "normalized-jz-vn has no two-manifold binning, so disconnectivity is undefined");
  prepare_output(config);
  auto levels = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + format_number(v[i]);
    return out;
  };
  std::ostringstream os;
  os << "# lgsim " << LGSIM_VERSION_STRING << " disconnectivity\n"
     << "# boundary = " << boundary_name(config.boundary) << "\n"
     << "# units: Delta m; *_levels list the m values of each manifold\n"
     << "scheme,n_qubits,delta_best,delta_worst,delta_av,plus_mean,minus_mean,plus_levels,minus_levels\n";
  for (const Job& job : expand(config)) {
    const auto r = disconnectivity(MeasurementScheme(job.scheme, config.boundary), job.n);
    os << scheme_name(job.scheme) << ',' << job.n << ',' << format_number(r.delta_best) << ','
       << format_number(r.delta_worst) << ',' << format_number(r.delta_av) << ',' << format_number(r.plus_mean) << ','
       << format_number(r.minus_mean) << ',' << levels(r.plus_manifold_expectations) << ','
       << levels(r.minus_manifold_expectations) << '\n';
  }
  CommandResult result;
  const auto path = config.output_dir / "disconnectivity.csv";
  write_file(path, os.str());
  result.files.push_back(path);
  emit(log, path.string());
  return result;
}

}  // namespace lgsim
