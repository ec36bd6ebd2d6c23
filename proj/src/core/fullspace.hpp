#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lgi.hpp"

namespace lgsim {

enum class BackendChoice { dicke, full, automatic };

std::string_view backend_choice_name(BackendChoice b);
BackendChoice parse_backend(std::string_view text);

/// AUTO picks FULL iff an individual rate is nonzero.
Basis resolve_backend(BackendChoice choice, const NoiseParams& noise);

inline constexpr int kFullSpaceCurveCap = 10;
inline constexpr int kFullSpacePointCap = 12;

/// Peak working set of a stacked full-space sweep: two dense 2^N x 2^N
/// operators per integrator buffer plus the generator's dense weights.
std::size_t estimate_full_space_bytes(int n_qubits);

/// Throws MemoryGuardError with the estimate when N exceeds `cap`.
void check_full_space(int n_qubits, int cap);

struct ModelSpec {
  SchemeId scheme = SchemeId::central_vn;
  BoundaryPolicy boundary = BoundaryPolicy::m0_minus;
  int n_qubits = 1;
  NoiseParams noise{};
  BackendChoice backend = BackendChoice::automatic;
  int full_space_cap = kFullSpaceCurveCap;
};

/// Everything one K evaluation needs, built once and shared read-only.
struct LGModel {
  MeasurementScheme scheme;
  SpaceSpec space;
  NoiseParams noise;
  Generator generator;
  QuantumState rho0;
};

LGModel make_model(const ModelSpec& spec);

LGCurve model_curve(const LGModel& model, std::span<const double> grid, const SearchOptions& options = {});
KMaxResult model_kmax(const LGModel& model, const SearchOptions& options = {});

/// The Dicke pipeline on 2^N operators and Hamming-weight projectors.
LGCurve run_full(const MeasurementScheme& scheme, int n_qubits, const NoiseParams& noise,
                 std::span<const double> grid, const SearchOptions& options = {}, int cap = kFullSpaceCurveCap);

/// tr(P_sym rho(t)) at each ascending time for the full-space evolution of
/// the polarised state; P_sym projects onto the Dicke sector.
std::vector<double> symmetric_projector_check(int n_qubits, const NoiseParams& noise, std::span<const double> times,
                                              int cap = kFullSpaceCurveCap);

}  // namespace lgsim
