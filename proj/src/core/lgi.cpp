#include "lgi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "wigner.hpp"

namespace lgsim {

namespace {

double real_or_throw(cplx value, const char* what) {
  if (std::abs(value.imag()) > kImaginaryResidueTol) {
    std::ostringstream os;
    os.precision(3);
    os << what << " has imaginary residue " << value.imag() << " (tolerance " << kImaginaryResidueTol << ")";
    throw NumericError(os.str());
  }
  return value.real();
}

LGSample make_sample(double tau, double c21, double c32, double c31) {
  LGSample s{tau, c21 + c32 - c31, c21, c32, c31};
  if (!std::isfinite(s.k)) throw NumericError("K is not finite");
  if (s.k > 3.0 + kAlgebraicBoundSlack) {
    std::ostringstream os;
    os.precision(17);
    os << "K = " << s.k << " exceeds the algebraic bound 3 at omega_tau = " << tau;
    throw NumericError(os.str());
  }
  return s;
}

cplx trace_with_diagonal(const Eigen::VectorXd& q, const cplx* a) {
  const Eigen::Index d = q.size();
  cplx sum = 0.0;
  for (Eigen::Index x = 0; x < d; ++x) sum += q[x] * a[x * d + x];
  return sum;
}

cplx hs_inner(const cplx* a, const cplx* b, std::size_t n) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

// Propagates y = [rho(t), Q_H(t)] with Q_H = exp(M^+ t)[Q]. Then
//   C21 = tr(Q rho(tau)), C31 = <Q_H(tau), rho(tau)>, C32 = <Q_H(tau), W rho(tau)>
// which needs W(rho0) = rho0: the first measurement leaves rho0 unchanged.
class StackedSweep {
 public:
  StackedSweep(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0)
      : gen_(gen), space_(space_of(gen)), update_(scheme, space_), q_(q_diagonal(scheme, space_)) {
    d_ = gen.dim();
    n_ = static_cast<std::size_t>(d_) * d_;
    const CMatrix& r = rho0.rho.matrix();
    if (r.rows() != d_) throw InvalidArgument("initial state dimension does not match generator");
    y0_.resize(static_cast<Eigen::Index>(2 * n_));
    std::copy(r.data(), r.data() + n_, y0_.data());
    std::fill(y0_.data() + n_, y0_.data() + 2 * n_, cplx(0.0));
    for (int x = 0; x < d_; ++x) y0_[n_ + static_cast<std::size_t>(x) * d_ + x] = q_[x];
    const CMatrix w = update_.apply(r);
    eigenstate_ = (w - r).cwiseAbs().maxCoeff() <= 1e-14;
  }

  bool applicable() const { return eigenstate_; }
  const CVector& initial() const { return y0_; }

  DormandPrince::Rhs rhs() const {
    return [this](const CVector& in, CVector& out) {
      gen_.apply(in.data(), out.data());
      gen_.apply_adjoint(in.data() + n_, out.data() + n_);
    };
  }

  LGSample sample(double tau, const CVector& y) const {
    const cplx* rho = y.data();
    const cplx* qh = y.data() + n_;
    const double c21 = real_or_throw(trace_with_diagonal(q_, rho), "C21");
    const double c31 = real_or_throw(hs_inner(qh, rho, n_), "C31");
    const double c32 = real_or_throw(update_.inner(qh, rho), "C32");
    return make_sample(tau, c21, c32, c31);
  }

 private:
  const Generator& gen_;
  SpaceSpec space_;
  WeightedUpdate update_;
  Eigen::VectorXd q_;
  int d_ = 0;
  std::size_t n_ = 0;
  CVector y0_;
  bool eigenstate_ = false;
};

struct GridPass {
  std::vector<LGSample> samples;
  std::size_t best = 0;
  double checkpoint_time = 0.0;
  CVector checkpoint;
};

GridPass run_grid(const StackedSweep& sweep, std::span<const double> grid, const IntegratorOptions& options) {
  GridPass pass;
  pass.samples.resize(grid.size());
  CVector y = sweep.initial();
  CVector previous = y;
  double previous_time = 0.0;
  double best_k = -std::numeric_limits<double>::infinity();
  DormandPrince rk(options);
  rk.integrate(sweep.rhs(), y, grid, [&](std::size_t i, double t, const CVector& state) {
    pass.samples[i] = sweep.sample(t, state);
    if (pass.samples[i].k > best_k) {
      best_k = pass.samples[i].k;
      pass.best = i;
      pass.checkpoint = previous;
      pass.checkpoint_time = previous_time;
    }
    previous = state;
    previous_time = t;
  });
  return pass;
}

template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol, double best_t, double best_k) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  auto keep = [&](double t, double k) {
    if (k > best_k) {
      best_k = k;
      best_t = t;
    }
  };
  keep(c, fc);
  keep(d, fd);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
      keep(d, fd);
    }
  }
  return {best_t, best_k};
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("omega_tau grid is empty");
  double prev = 0.0;
  for (double t : grid) {
    if (!(t > prev) || t > kPi * (1.0 + 1e-12))
      throw InvalidArgument("omega_tau grid must be strictly increasing within (0, pi]");
    prev = t;
  }
}

}  // namespace

void SearchOptions::validate() const {
  if (grid_points != 0 && grid_points < 64) throw InvalidArgument("grid_points must be >= 64 (or 0 for automatic)");
  if (!(refine_tol > 0.0 && refine_tol <= 1e-2)) throw InvalidArgument("refine_tol must lie in (0, 1e-2]");
}

int default_grid_points(int n_qubits) { return std::max(2000, 20 * n_qubits); }

std::vector<double> uniform_grid(int points) {
  if (points < 1) throw InvalidArgument("grid needs at least one point");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = kPi * (i + 1) / points;
  g.back() = kPi;
  return g;
}

SpaceSpec space_of(const Generator& gen) {
  if (gen.backend() == Basis::dicke) return {Basis::dicke, gen.dim() - 1};
  return {Basis::full, std::countr_zero(static_cast<unsigned>(gen.dim()))};
}

double correlation(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0, double t_a,
                   double t_b, const IntegratorOptions& options) {
  if (!(t_a >= 0.0) || !(t_b >= t_a)) throw InvalidArgument("correlation requires 0 <= t_a <= t_b");
  const SpaceSpec space = space_of(gen);
  const ComplexOperator rho_a = propagate(gen, rho0.rho, t_a, options);
  const ComplexOperator a = weighted_update(scheme, space, {rho_a, t_a});
  const ComplexOperator b = propagate(gen, a, t_b - t_a, options);
  return real_or_throw(trace_with_diagonal(q_diagonal(scheme, space), b.matrix().data()), "correlation");
}

LGSample k_components(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0, double tau,
                      const IntegratorOptions& options) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be > 0");
  const double c21 = correlation(scheme, gen, rho0, 0.0, tau, options);
  const double c31 = correlation(scheme, gen, rho0, 0.0, 2.0 * tau, options);
  const double c32 = correlation(scheme, gen, rho0, tau, 2.0 * tau, options);
  return make_sample(tau, c21, c32, c31);
}

double k_parameter(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0, double tau,
                   const IntegratorOptions& options) {
  return k_components(scheme, gen, rho0, tau, options).k;
}

KMaxResult k_max_search(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0,
                        const SearchOptions& options) {
  options.validate();
  const SpaceSpec space = space_of(gen);
  const int points = options.grid_points ? options.grid_points : default_grid_points(space.n_qubits);
  const std::vector<double> grid = uniform_grid(points);

  KMaxResult result;
  result.grid_points = points;
  StackedSweep sweep(scheme, gen, rho0);
  if (!sweep.applicable()) {
    // Direct route: every sample re-propagates from t = 0.
    std::size_t best = 0;
    std::vector<double> ks(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ks[i] = k_parameter(scheme, gen, rho0, grid[i], options.integrator);
      if (ks[i] > ks[best]) best = i;
    }
    const double a = best == 0 ? 0.0 : grid[best - 1];
    const double b = best + 1 < grid.size() ? grid[best + 1] : grid.back();
    auto f = [&](double t) { return k_parameter(scheme, gen, rho0, t, options.refine_integrator); };
    std::tie(result.omega_tau_max, result.k_max) = golden_max(f, a, b, options.refine_tol, grid[best], ks[best]);
    result.at_edge = best == 0 || best + 1 == grid.size();
    return result;
  }

  GridPass pass = run_grid(sweep, grid, options.integrator);
  const std::size_t best = pass.best;
  const double a = pass.checkpoint_time;
  const double b = best + 1 < grid.size() ? grid[best + 1] : grid.back();
  const CVector start = pass.checkpoint;
  const auto rhs = sweep.rhs();
  auto f = [&](double t) {
    CVector y = start;
    const double dt[] = {t - a};
    DormandPrince rk(options.refine_integrator);
    LGSample s;
    rk.integrate(rhs, y, dt, [&](std::size_t, double, const CVector& state) { s = sweep.sample(t, state); });
    return s.k;
  };
  std::tie(result.omega_tau_max, result.k_max) =
      golden_max(f, a, b, options.refine_tol, grid[best], pass.samples[best].k);
  result.at_edge = best == 0 || best + 1 == grid.size();
  return result;
}

LGCurve k_curve(const MeasurementScheme& scheme, const Generator& gen, const QuantumState& rho0,
                std::span<const double> grid, const SearchOptions& options) {
  validate_grid(grid);
  options.validate();
  const SpaceSpec space = space_of(gen);
  LGCurve curve;
  curve.scheme = scheme.id();
  curve.boundary = scheme.boundary();
  curve.n_qubits = space.n_qubits;
  curve.backend = space.basis;

  StackedSweep sweep(scheme, gen, rho0);
  if (sweep.applicable()) {
    curve.samples = run_grid(sweep, grid, options.integrator).samples;
  } else {
    for (double t : grid) curve.samples.push_back(k_components(scheme, gen, rho0, t, options.integrator));
  }
  const KMaxResult best = k_max_search(scheme, gen, rho0, options);
  curve.k_max = best.k_max;
  curve.omega_tau_max = best.omega_tau_max;
  curve.max_at_edge = best.at_edge;
  return curve;
}

double k_extreme_closed_form(double j, double omega_tau) {
  if (!(j >= 0.5) || !std::isfinite(j)) throw DomainError("j must be >= 1/2");
  // Even powers only (4j = 2N), so magnitudes suffice; pow underflows cleanly.
  const double ch = std::abs(std::cos(0.5 * omega_tau)), sh = std::abs(std::sin(0.5 * omega_tau));
  const double c = std::abs(std::cos(omega_tau)), s = std::abs(std::sin(omega_tau));
  const double p4 = 4.0 * j, p8 = 8.0 * j;
  return std::pow(ch, p4) - std::pow(sh, p4) + std::pow(ch, p8) - std::pow(sh, p8) - std::pow(c, p4) + std::pow(s, p4);
}

KMaxResult k_extreme_closed_form_max(double j) {
  auto f = [j](double t) { return k_extreme_closed_form(j, t); };
  // The peak sits near omega tau ~ 1/sqrt(j); grid both the full range and
  // a zoomed window so the bracket is resolved at any j.
  const int points = 4000;
  const double zoom = std::min(kPi, 20.0 / std::sqrt(j));
  double best_t = 0.0, best_k = -std::numeric_limits<double>::infinity(), step = 0.0;
  for (double span : {kPi, zoom}) {
    const double h = span / points;
    for (int i = 1; i <= points; ++i) {
      const double t = i * h, k = f(t);
      if (k > best_k) {
        best_k = k;
        best_t = t;
        step = h;
      }
    }
  }
  KMaxResult r;
  r.grid_points = 2 * points;
  const double a = std::max(0.0, best_t - step), b = std::min(kPi, best_t + step);
  std::tie(r.omega_tau_max, r.k_max) = golden_max(f, a, b, 1e-12 * std::max(1.0, b), best_t, best_k);
  r.at_edge = r.omega_tau_max <= step || r.omega_tau_max >= kPi - step;
  return r;
}

double k_single_state_asymptote(double j) {
  if (!(j >= 0.5) || !std::isfinite(j)) throw DomainError("j must be >= 1/2");
  return 3.0 - std::sqrt(2.0 / (kPi * j));
}

LGSample k_wigner_sums(const MeasurementScheme& scheme, int n_qubits, double omega_tau) {
  if (scheme.update_rule() != UpdateRule::von_neumann)
    throw InvalidArgument("k_wigner_sums covers von Neumann schemes only");
  const auto qs = scheme.q_values(n_qubits);
  std::vector<double> q(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) q[i] = qs[i].value_or(0.0);
  const RMatrix p1 = wigner::transition_probability_matrix(n_qubits, omega_tau);
  const RMatrix p2 = wigner::transition_probability_matrix(n_qubits, 2.0 * omega_tau);
  const int top = n_qubits;
  double c21 = 0.0, c31 = 0.0, c32 = 0.0;
  for (int m = 0; m <= n_qubits; ++m) {
    c21 += q[m] * p1(m, top);
    c31 += q[m] * p2(m, top);
  }
  for (int n = 0; n <= n_qubits; ++n) {
    if (q[n] == 0.0) continue;
    double inner = 0.0;
    for (int m = 0; m <= n_qubits; ++m) inner += q[m] * p1(m, n);
    c32 += q[n] * p1(n, top) * inner;
  }
  // The first measurement weighs rho0 by q_j in C21 and C31; C32 starts unmeasured.
  return make_sample(omega_tau, c21 * q[top], c32, c31 * q[top]);
}

LGSample k_unitary(const MeasurementScheme& scheme, int n_qubits, double omega_tau) {
  const DickeSpace ds(n_qubits);
  const SpaceSpec space{Basis::dicke, n_qubits};
  const CMatrix u = unitary_propagator(ds, 1.0, omega_tau).matrix();
  const CMatrix rho0 = initial_state(Basis::dicke, n_qubits).rho.matrix();
  const WeightedUpdate w(scheme, space);
  const Eigen::VectorXd q = q_diagonal(scheme, space);
  auto expect = [&](const CMatrix& r) { return real_or_throw(trace_with_diagonal(q, r.data()), "oracle"); };
  const CMatrix a0 = w.apply(rho0);
  const CMatrix rho_t = u * a0 * u.adjoint();
  const CMatrix u2 = u * u;
  const double c21 = expect(rho_t);
  const double c31 = expect(CMatrix(u2 * a0 * u2.adjoint()));
  const double c32 = expect(CMatrix(u * w.apply(CMatrix(u * rho0 * u.adjoint())) * u.adjoint()));
  return make_sample(omega_tau, c21, c32, c31);
}

}  // namespace lgsim
