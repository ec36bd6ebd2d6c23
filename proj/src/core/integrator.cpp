#include "integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace lgsim {

namespace {

// Dormand & Prince (1980) coefficients; the generator is autonomous so the
// stage nodes c_i are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

}  // namespace

double DormandPrince::error_norm(const CVector& y0, const CVector& y1, const CVector& err) const {
  const Eigen::Index n = y0.size();
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = options_.atol + options_.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = std::abs(err[i]) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

double DormandPrince::initial_step(const Rhs& rhs, const CVector& y0, const CVector& f0, double span) {
  const Eigen::Index n = y0.size();
  double d0 = 0.0, d1 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = options_.atol + options_.rtol * std::abs(y0[i]);
    d0 += std::norm(y0[i]) / (sc * sc);
    d1 += std::norm(f0[i]) / (sc * sc);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  tmp_ = y0 + h0 * f0;
  rhs(tmp_, k2_);
  ++stats_.rhs_evaluations;
  double d2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = options_.atol + options_.rtol * std::abs(y0[i]);
    d2 += std::norm(k2_[i] - f0[i]) / (sc * sc);
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, span});
}

void DormandPrince::integrate(const Rhs& rhs, CVector& y, std::span<const double> times, const Observer& observe) {
  if (times.empty()) return;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1]))
      throw InvalidArgument("integrator: sample times must be non-negative and ascending");
  }
  const Eigen::Index n = y.size();
  for (CVector* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &ynew_, &err_}) v->resize(n);

  double t = 0.0;
  std::size_t next = 0;
  while (next < times.size() && times[next] == 0.0) observe(next++, 0.0, y);
  if (next == times.size()) return;

  rhs(y, k1_);
  ++stats_.rhs_evaluations;
  double h = initial_step(rhs, y, k1_, times.back());
  std::size_t steps = 0;

  while (next < times.size()) {
    const double target = times[next];
    const double remaining = target - t;
    bool clamped = false;
    double step = h;
    if (step >= remaining * (1.0 - 1e-12)) {
      step = remaining;
      clamped = true;
    }
    if (step < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "step size underflow at t = " << t << " (h = " << step << ")";
      throw IntegrationError(os.str(), t);
    }
    if (++steps > options_.max_steps) {
      std::ostringstream os;
      os << "step budget of " << options_.max_steps << " exhausted at t = " << t;
      throw IntegrationError(os.str(), t);
    }

    tmp_ = y + step * a21 * k1_;
    rhs(tmp_, k2_);
    tmp_ = y + step * (a31 * k1_ + a32 * k2_);
    rhs(tmp_, k3_);
    tmp_ = y + step * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs(tmp_, k4_);
    tmp_ = y + step * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs(tmp_, k5_);
    tmp_ = y + step * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs(tmp_, k6_);
    ynew_ = y + step * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs(ynew_, k7_);
    stats_.rhs_evaluations += 6;
    err_ = step * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

    const double err = error_norm(y, ynew_, err_);
    if (err <= 1.0) {
      ++stats_.accepted;
      t = clamped ? target : t + step;
      y.swap(ynew_);
      k1_.swap(k7_);
      const double factor = err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
      const double proposed = step * factor;
      // A clamped step says nothing about the natural step size.
      h = clamped ? std::max(h, proposed) : proposed;
      while (next < times.size() && times[next] <= t) {
        observe(next, times[next], y);
        ++next;
      }
    } else {
      ++stats_.rejected;
      h = step * std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, 1.0);
    }
  }
}

}  // namespace lgsim
