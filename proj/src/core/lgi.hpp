#pragma once

#include <span>
#include <vector>

#include "dynamics.hpp"
#include "measurement.hpp"

namespace lgsim {

/// K = C21 + C32 - C31 at measurement times 0, tau, 2 tau.
struct LGSample {
  double omega_tau = 0.0;
  double k = 0.0;
  double c21 = 0.0;
  double c32 = 0.0;
  double c31 = 0.0;
};

struct KMaxResult {
  double k_max = 0.0;
  double omega_tau_max = 0.0;
  bool at_edge = false;  // best grid sample was the first or last point
  int grid_points = 0;
};

struct SearchOptions {
  int grid_points = 0;  // 0 selects default_grid_points(N)
  double refine_tol = 1e-6;
  IntegratorOptions integrator{};
  IntegratorOptions refine_integrator{1e-13, 1e-15, 50'000'000};

  void validate() const;
};

struct LGCurve {
  SchemeId scheme = SchemeId::central_vn;
  BoundaryPolicy boundary = BoundaryPolicy::m0_minus;
  int n_qubits = 0;
  NoiseParams noise{};
  Basis backend = Basis::dicke;
  std::vector<LGSample> samples;
  double k_max = 0.0;
  double omega_tau_max = 0.0;
  bool max_at_edge = false;
};

inline constexpr double kImaginaryResidueTol = 1e-8;
inline constexpr double kAlgebraicBoundSlack = 1e-9;

/// max(2000, 20 N): the violation window narrows as N grows.
int default_grid_points(int n_qubits);
/// i * pi / points for i = 1..points.
std::vector<double> uniform_grid(int points);

/// Backend and qubit count implied by a generator's dimension.
SpaceSpec space_of(const Generator& gen);

/// tr(Q exp(M (t_b - t_a))[W(exp(M t_a)[rho0])]).
double correlation(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0, double t_a,
                   double t_b, const IntegratorOptions& options = {});

/// All three correlators by direct propagation.
LGSample k_components(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0, double tau,
                      const IntegratorOptions& options = {});
double k_parameter(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0, double tau,
                   const IntegratorOptions& options = {});

/// Uniform grid over (0, pi], then golden-section refinement of the best
/// bracket to |d(omega tau)| < refine_tol.
KMaxResult k_max_search(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0,
                        const SearchOptions& options = {});

/// K sampled at `grid` (ascending, within (0, pi]) plus the k_max_search result.
LGCurve k_curve(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0,
                std::span<const double> grid, const SearchOptions& options = {});

// Noise-free oracles.

/// cos^4j(x/2) - sin^4j(x/2) + cos^8j(x/2) - sin^8j(x/2) - cos^4j(x) + sin^4j(x).
double k_extreme_closed_form(double j, double omega_tau);
KMaxResult k_extreme_closed_form_max(double j);

/// 3 - sqrt(2 / (pi j)), a large-spin approximation.
double k_single_state_asymptote(double j);

/// Correlators from squared d-matrix elements; von Neumann schemes only.
LGSample k_wigner_sums(const MeasurementScheme& scheme, int n_qubits, double omega_tau);

/// Correlators from the dense rotation matrix; every scheme, Dicke basis.
LGSample k_unitary(const MeasurementScheme& scheme, int n_qubits, double omega_tau);

}  // namespace lgsim
