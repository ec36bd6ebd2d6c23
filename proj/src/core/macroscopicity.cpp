#include "macroscopicity.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace lgsim {

DisconnectivityReport disconnectivity(const MeasurementScheme& scheme, int n_qubits) {
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be >= 1");
  if (scheme.id() == SchemeId::normalized_jz_vn)
    throw InvalidArgument("normalized-jz-vn does not define two manifolds, so its disconnectivity is undefined");
  const MeasurementScheme binning = scheme.id() == SchemeId::central_lueders
                                        ? MeasurementScheme(SchemeId::central_vn, scheme.boundary())
                                        : scheme;
  DisconnectivityReport r;
  r.scheme = scheme.id();
  r.n_qubits = n_qubits;
  for (int level = 0; level <= n_qubits; ++level) {
    const auto q = binning.q(n_qubits, level);
    if (!q) continue;
    const double m = level - 0.5 * n_qubits;
    (*q > 0 ? r.plus_manifold_expectations : r.minus_manifold_expectations).push_back(m);
  }
  const auto& plus = r.plus_manifold_expectations;
  const auto& minus = r.minus_manifold_expectations;
  const auto [plus_lo, plus_hi] = std::minmax_element(plus.begin(), plus.end());
  const auto [minus_lo, minus_hi] = std::minmax_element(minus.begin(), minus.end());
  r.delta_best = *plus_hi - *minus_lo;
  r.delta_worst = std::max(0.0, *plus_lo - *minus_hi);
  r.plus_mean = std::accumulate(plus.begin(), plus.end(), 0.0) / plus.size();
  r.minus_mean = std::accumulate(minus.begin(), minus.end(), 0.0) / minus.size();
  r.delta_av = r.plus_mean - r.minus_mean;
  return r;
}

std::optional<DisconnectivityValues> disconnectivity_closed_form(SchemeId scheme, int n_qubits) {
  const double n = n_qubits;
  const bool odd = n_qubits % 2 == 1;
  switch (scheme) {
    case SchemeId::central_vn:
    case SchemeId::central_lueders:
      return DisconnectivityValues{n, 1.0, odd ? 0.5 * (n + 1) : 0.5 * n};
    case SchemeId::single_state_vn:
      return DisconnectivityValues{n, 1.0, 0.5 * (n + 1)};
    case SchemeId::parity_vn:
      return DisconnectivityValues{odd ? n : n - 1, n_qubits > 1 ? 0.0 : 1.0, odd ? 1.0 : 0.0};
    case SchemeId::extreme_vn:
      return DisconnectivityValues{n, n, n};
    case SchemeId::normalized_jz_vn:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace lgsim
