#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "types.hpp"

namespace lgsim {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 50'000'000;
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Embedded Dormand-Prince 5(4) pair with FSAL and Hairer's RMS error norm.
/// Steps are clamped so that every requested sample time is hit exactly.
class DormandPrince {
 public:
  using Rhs = std::function<void(const CVector& y, CVector& dydt)>;
  using Observer = std::function<void(std::size_t sample, double t, const CVector& y)>;

  explicit DormandPrince(IntegratorOptions options = {}) : options_(options) {}

  /// Integrates y from t0 = 0 through the ascending `times`, calling
  /// `observe` at each. y holds the state at times.back() on return.
  /// Throws IntegrationError on step-size underflow or step budget exhaustion.
  void integrate(const Rhs& rhs, CVector& y, std::span<const double> times, const Observer& observe);

  const IntegratorStats& stats() const { return stats_; }

 private:
  double error_norm(const CVector& y0, const CVector& y1, const CVector& err) const;
  double initial_step(const Rhs& rhs, const CVector& y0, const CVector& f0, double span);

  IntegratorOptions options_;
  IntegratorStats stats_;
  CVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, ynew_, err_;
};

}  // namespace lgsim
