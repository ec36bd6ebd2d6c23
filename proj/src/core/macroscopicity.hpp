#pragma once

#include <optional>
#include <vector>

#include "measurement.hpp"

namespace lgsim {

/// Leggett's disconnectivity of the two binning manifolds, in units of Delta m.
struct DisconnectivityReport {
  SchemeId scheme = SchemeId::central_vn;
  int n_qubits = 0;
  double delta_best = 0.0;
  double delta_worst = 0.0;
  double delta_av = 0.0;
  std::vector<double> plus_manifold_expectations;   // m values with q = +1
  std::vector<double> minus_manifold_expectations;  // m values with q = -1
  double plus_mean = 0.0;
  double minus_mean = 0.0;
};

/// Rejects normalized-jz-vn; central-lueders reports the central-vn binning.
DisconnectivityReport disconnectivity(const MeasurementScheme& scheme, int n_qubits);

struct DisconnectivityValues {
  double best, worst, av;
};

/// The published closed forms for schemes a..d (f maps to a). Returns
/// nullopt for normalized-jz-vn.
std::optional<DisconnectivityValues> disconnectivity_closed_form(SchemeId scheme, int n_qubits);

}  // namespace lgsim
