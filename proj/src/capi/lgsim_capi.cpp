#include "lgsim/lgsim.h"

#include <string>

#include "core/errors.hpp"
#include "core/fullspace.hpp"
#include "core/macroscopicity.hpp"
#include "core/plot_script.hpp"
#include "core/sweep.hpp"
#include "core/validation.hpp"
#include "core/wigner.hpp"

struct lgsim_model {
  lgsim::LGModel model;
};

struct lgsim_curve {
  lgsim::LGCurve curve;
  int grid_points = 0;
};

struct lgsim_config {
  lgsim::RunConfig config;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_bytes = 0;
thread_local double g_error_time = 0.0;

lgsim_status fail(lgsim_status s, const char* what) {
  g_error = what;
  return s;
}

template <class F>
lgsim_status guarded(F&& f) {
  g_error.clear();
  g_error_bytes = 0;
  g_error_time = 0.0;
  try {
    f();
    return LGSIM_OK;
  } catch (const lgsim::MemoryGuardError& e) {
    g_error_bytes = e.estimated_bytes();
    return fail(LGSIM_ERR_MEMORY_GUARD, e.what());
  } catch (const lgsim::IntegrationError& e) {
    g_error_time = e.achieved_time();
    return fail(LGSIM_ERR_INTEGRATION, e.what());
  } catch (const lgsim::ConfigError& e) {
    return fail(LGSIM_ERR_CONFIG, e.what());
  } catch (const lgsim::DomainError& e) {
    return fail(LGSIM_ERR_DOMAIN, e.what());
  } catch (const lgsim::BackendError& e) {
    return fail(LGSIM_ERR_BACKEND, e.what());
  } catch (const lgsim::NumericError& e) {
    return fail(LGSIM_ERR_NUMERIC, e.what());
  } catch (const lgsim::IoError& e) {
    return fail(LGSIM_ERR_IO, e.what());
  } catch (const lgsim::InvalidArgument& e) {
    return fail(LGSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LGSIM_ERR_MEMORY_GUARD, "out of memory");
  } catch (const std::exception& e) {
    return fail(LGSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LGSIM_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* name) {
  if (!p) throw lgsim::InvalidArgument(std::string(name) + " must not be NULL");
}

lgsim::SchemeId to_scheme(lgsim_scheme s) {
  if (s < 0 || s >= LGSIM_SCHEME_COUNT) throw lgsim::InvalidArgument("scheme out of range");
  return static_cast<lgsim::SchemeId>(s);
}

lgsim::BoundaryPolicy to_boundary(lgsim_boundary b) {
  if (b == LGSIM_BOUNDARY_M0_MINUS) return lgsim::BoundaryPolicy::m0_minus;
  if (b == LGSIM_BOUNDARY_M0_PLUS) return lgsim::BoundaryPolicy::m0_plus;
  throw lgsim::InvalidArgument("boundary out of range");
}

lgsim::BackendChoice to_backend(lgsim_backend b) {
  switch (b) {
    case LGSIM_BACKEND_DICKE: return lgsim::BackendChoice::dicke;
    case LGSIM_BACKEND_FULL: return lgsim::BackendChoice::full;
    case LGSIM_BACKEND_AUTO: return lgsim::BackendChoice::automatic;
  }
  throw lgsim::InvalidArgument("backend out of range");
}

lgsim::SearchOptions to_search(const lgsim_search* s) {
  lgsim::SearchOptions o;
  if (s) {
    o.grid_points = s->grid_points;
    o.refine_tol = s->refine_tol;
  }
  return o;
}

lgsim_sample to_c(const lgsim::LGSample& s) { return {s.omega_tau, s.k, s.c21, s.c32, s.c31}; }

lgsim_kmax to_c(const lgsim::KMaxResult& r) { return {r.k_max, r.omega_tau_max, r.at_edge ? 1 : 0, r.grid_points}; }

lgsim::LineSink to_sink(lgsim_line_fn fn, void* user) {
  if (!fn) return {};
  return [fn, user](std::string_view line) {
    const std::string s(line);
    fn(s.c_str(), user);
  };
}

}  // namespace

extern "C" {

const char* lgsim_version(void) { return LGSIM_VERSION_STRING; }

const char* lgsim_status_string(lgsim_status status) {
  switch (status) {
    case LGSIM_OK: return "ok";
    case LGSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LGSIM_ERR_DOMAIN: return "domain error";
    case LGSIM_ERR_BACKEND: return "backend error";
    case LGSIM_ERR_MEMORY_GUARD: return "memory guard";
    case LGSIM_ERR_INTEGRATION: return "integration failure";
    case LGSIM_ERR_NUMERIC: return "numeric invariant violated";
    case LGSIM_ERR_CONFIG: return "configuration error";
    case LGSIM_ERR_IO: return "i/o error";
    case LGSIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* lgsim_last_error(void) { return g_error.c_str(); }
size_t lgsim_last_error_bytes(void) { return g_error_bytes; }
double lgsim_last_error_time(void) { return g_error_time; }

const char* lgsim_scheme_name(lgsim_scheme scheme) {
  static const char* names[] = {"central-vn",       "single-state-vn",  "parity-vn",
                                "extreme-vn",       "normalized-jz-vn", "central-lueders"};
  if (scheme < 0 || scheme >= LGSIM_SCHEME_COUNT) return nullptr;
  return names[scheme];
}

lgsim_status lgsim_scheme_parse(const char* text, lgsim_scheme* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = static_cast<lgsim_scheme>(lgsim::parse_scheme(text));
  });
}

lgsim_status lgsim_small_d(int two_j, int two_m_from, int two_m_to, double beta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = lgsim::wigner::small_d({two_j, two_m_from, two_m_to, beta});
  });
}

lgsim_status lgsim_element_from_top(int two_j, int two_m, double theta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = lgsim::wigner::element_from_top(two_j, two_m, theta);
  });
}

lgsim_status lgsim_element_from_bottom(int two_j, int two_m, double theta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = lgsim::wigner::element_from_bottom(two_j, two_m, theta);
  });
}

lgsim_status lgsim_k_extreme_closed_form(double j, double omega_tau, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = lgsim::k_extreme_closed_form(j, omega_tau);
  });
}

lgsim_status lgsim_k_extreme_closed_form_max(double j, lgsim_kmax* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(lgsim::k_extreme_closed_form_max(j));
  });
}

lgsim_status lgsim_k_single_state_asymptote(double j, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = lgsim::k_single_state_asymptote(j);
  });
}

lgsim_status lgsim_model_create(lgsim_scheme scheme, lgsim_boundary boundary, int n_qubits, const lgsim_noise* noise,
                                lgsim_backend backend, int full_space_cap, lgsim_model** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    lgsim::ModelSpec spec;
    spec.scheme = to_scheme(scheme);
    spec.boundary = to_boundary(boundary);
    spec.n_qubits = n_qubits;
    if (noise) spec.noise = {noise->gamma_d, noise->gamma_l, noise->Gamma_d, noise->Gamma_l};
    spec.backend = to_backend(backend);
    spec.full_space_cap = full_space_cap > 0 ? full_space_cap : lgsim::kFullSpaceCurveCap;
    *out = new lgsim_model{lgsim::make_model(spec)};
  });
}

void lgsim_model_destroy(lgsim_model* model) { delete model; }

lgsim_status lgsim_model_backend(const lgsim_model* model, lgsim_backend* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = model->model.space.basis == lgsim::Basis::dicke ? LGSIM_BACKEND_DICKE : LGSIM_BACKEND_FULL;
  });
}

lgsim_status lgsim_model_correlation(const lgsim_model* model, double t_a, double t_b, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& m = model->model;
    *out = lgsim::correlation(m.scheme, m.generator, m.rho0, t_a, t_b);
  });
}

lgsim_status lgsim_model_k(const lgsim_model* model, double omega_tau, lgsim_sample* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& m = model->model;
    *out = to_c(lgsim::k_components(m.scheme, m.generator, m.rho0, omega_tau));
  });
}

lgsim_status lgsim_model_kmax(const lgsim_model* model, const lgsim_search* search, lgsim_kmax* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = to_c(lgsim::model_kmax(model->model, to_search(search)));
  });
}

lgsim_status lgsim_model_curve(const lgsim_model* model, const double* omega_tau, size_t count,
                               const lgsim_search* search, lgsim_curve** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = nullptr;
    if (count) require(omega_tau, "omega_tau");
    const auto opts = to_search(search);
    auto curve = lgsim::model_curve(model->model, std::span<const double>(omega_tau, count), opts);
    const int points = opts.grid_points ? opts.grid_points : lgsim::default_grid_points(curve.n_qubits);
    *out = new lgsim_curve{std::move(curve), points};
  });
}

size_t lgsim_curve_size(const lgsim_curve* curve) { return curve ? curve->curve.samples.size() : 0; }

lgsim_status lgsim_curve_sample(const lgsim_curve* curve, size_t index, lgsim_sample* out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    if (index >= curve->curve.samples.size()) throw lgsim::InvalidArgument("sample index out of range");
    *out = to_c(curve->curve.samples[index]);
  });
}

lgsim_status lgsim_curve_kmax(const lgsim_curve* curve, lgsim_kmax* out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    const auto& c = curve->curve;
    *out = {c.k_max, c.omega_tau_max, c.max_at_edge ? 1 : 0, curve->grid_points};
  });
}

void lgsim_curve_destroy(lgsim_curve* curve) { delete curve; }

lgsim_status lgsim_disconnectivity_compute(lgsim_scheme scheme, lgsim_boundary boundary, int n_qubits,
                                           lgsim_disconnectivity* out) {
  return guarded([&] {
    require(out, "out");
    const auto r = lgsim::disconnectivity(lgsim::MeasurementScheme(to_scheme(scheme), to_boundary(boundary)), n_qubits);
    *out = {r.delta_best, r.delta_worst, r.delta_av, r.plus_mean, r.minus_mean};
  });
}

lgsim_status lgsim_config_create(lgsim_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new lgsim_config{};
  });
}

lgsim_status lgsim_config_load(const char* path, lgsim_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new lgsim_config{lgsim::load_config(path)};
  });
}

lgsim_status lgsim_config_set(lgsim_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value);
  });
}

lgsim_status lgsim_config_append(lgsim_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.append(key, value);
  });
}

lgsim_status lgsim_config_validate(const lgsim_config* config) {
  return guarded([&] {
    require(config, "config");
    config->config.validate();
  });
}

void lgsim_config_destroy(lgsim_config* config) { delete config; }

lgsim_status lgsim_cmd_curve(const lgsim_config* config, lgsim_line_fn sink, void* user) {
  return guarded([&] {
    require(config, "config");
    lgsim::cmd_curve(config->config, to_sink(sink, user));
  });
}

lgsim_status lgsim_cmd_kmax_sweep(const lgsim_config* config, lgsim_line_fn sink, void* user) {
  return guarded([&] {
    require(config, "config");
    lgsim::cmd_kmax_sweep(config->config, to_sink(sink, user));
  });
}

lgsim_status lgsim_cmd_disconnectivity(const lgsim_config* config, lgsim_line_fn sink, void* user) {
  return guarded([&] {
    require(config, "config");
    lgsim::cmd_disconnectivity(config->config, to_sink(sink, user));
  });
}

lgsim_status lgsim_cmd_plot_script(const char* const* csv_paths, size_t count, const char* script_path) {
  return guarded([&] {
    require(script_path, "script_path");
    if (count) require(csv_paths, "csv_paths");
    std::vector<std::filesystem::path> paths;
    for (size_t i = 0; i < count; ++i) {
      require(csv_paths[i], "csv path");
      paths.emplace_back(csv_paths[i]);
    }
    lgsim::cmd_plot_script(paths, script_path);
  });
}

lgsim_status lgsim_validate(lgsim_validation_level level, int corrupt_jminus, lgsim_line_fn sink, void* user,
                            int* failures) {
  return guarded([&] {
    lgsim::ValidationOptions o;
    o.level = level == LGSIM_VALIDATE_FULL ? lgsim::ValidationLevel::full : lgsim::ValidationLevel::fast;
    o.corrupt_jminus = corrupt_jminus != 0;
    const auto report = lgsim::run_validation(o, to_sink(sink, user));
    if (failures) *failures = static_cast<int>(report.count(lgsim::CheckStatus::fail));
  });
}

}  // extern "C"
