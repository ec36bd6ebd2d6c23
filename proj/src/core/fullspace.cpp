#include "fullspace.hpp"

#include <limits>
#include <sstream>

#include "errors.hpp"

namespace lgsim {

std::string_view backend_choice_name(BackendChoice b) {
  switch (b) {
    case BackendChoice::dicke: return "dicke";
    case BackendChoice::full: return "full";
    case BackendChoice::automatic: return "auto";
  }
  return "?";
}

BackendChoice parse_backend(std::string_view text) {
  if (text == "dicke") return BackendChoice::dicke;
  if (text == "full") return BackendChoice::full;
  if (text == "auto") return BackendChoice::automatic;
  throw InvalidArgument("unknown backend '" + std::string(text) + "' (expected dicke, full or auto)");
}

Basis resolve_backend(BackendChoice choice, const NoiseParams& noise) {
  switch (choice) {
    case BackendChoice::dicke: return Basis::dicke;
    case BackendChoice::full: return Basis::full;
    case BackendChoice::automatic: return noise.has_individual() ? Basis::full : Basis::dicke;
  }
  return Basis::dicke;
}

std::size_t estimate_full_space_bytes(int n_qubits) {
  const std::size_t one = dense_operator_bytes(n_qubits);
  // 10 integrator vectors + state + 2 checkpoints, each holding [rho, Q_H],
  // plus the dense dephasing weights.
  const std::size_t copies = 2 * 13 + 1;
  if (one > std::numeric_limits<std::size_t>::max() / copies) return std::numeric_limits<std::size_t>::max();
  return one * copies;
}

void check_full_space(int n_qubits, int cap) {
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be >= 1");
  if (n_qubits <= cap) return;
  const std::size_t bytes = estimate_full_space_bytes(n_qubits);
  std::ostringstream os;
  os << "full-space simulation of N = " << n_qubits << " qubits exceeds the cap of " << cap
     << " (estimated requirement " << bytes << " bytes); raise full_space_cap to override";
  throw MemoryGuardError(os.str(), bytes);
}

LGModel make_model(const ModelSpec& spec) {
  spec.noise.validate();
  const Basis basis = resolve_backend(spec.backend, spec.noise);
  if (basis == Basis::full) check_full_space(spec.n_qubits, spec.full_space_cap);
  const SpaceSpec space{basis, spec.n_qubits};
  // The operator builder has its own guard; the model cap already applied.
  Generator gen = build_generator(space, spec.noise, 1.0, std::max(spec.full_space_cap, spec.n_qubits));
  return {MeasurementScheme(spec.scheme, spec.boundary), space, spec.noise, std::move(gen),
          initial_state(basis, spec.n_qubits)};
}

LGCurve model_curve(const LGModel& model, std::span<const double> grid, const SearchOptions& options) {
  LGCurve c = k_curve(model.scheme, model.generator, model.rho0, grid, options);
  c.noise = model.noise;
  return c;
}

KMaxResult model_kmax(const LGModel& model, const SearchOptions& options) {
  return k_max_search(model.scheme, model.generator, model.rho0, options);
}

LGCurve run_full(const MeasurementScheme& scheme, int n_qubits, const NoiseParams& noise,
                 std::span<const double> grid, const SearchOptions& options, int cap) {
  const LGModel model = make_model(
      {scheme.id(), scheme.boundary(), n_qubits, noise, BackendChoice::full, cap});
  return model_curve(model, grid, options);
}

std::vector<double> symmetric_projector_check(int n_qubits, const NoiseParams& noise, std::span<const double> times,
                                              int cap) {
  check_full_space(n_qubits, cap);
  const Generator gen = build_generator({Basis::full, n_qubits}, noise, 1.0, std::max(cap, n_qubits));
  const SparseMatrix v = symmetric_isometry(n_qubits);
  const SparseMatrix vt = v.adjoint();
  std::vector<double> out(times.size());
  propagate_sampled(gen, initial_state(Basis::full, n_qubits).rho, times,
                    [&](std::size_t i, const ComplexOperator& rho) {
                      const CMatrix reduced = vt * (rho.matrix() * v);
                      out[i] = reduced.trace().real();
                    });
  return out;
}

}  // namespace lgsim
