#include "validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "errors.hpp"
#include "fullspace.hpp"
#include "macroscopicity.hpp"
#include "wigner.hpp"

namespace lgsim {

namespace {

constexpr double kG = 1.0 / (2.0 * kPi);  // Omega / 2 pi

struct Outcome {
  CheckStatus status;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome within(double value, double tol, const std::string& what) {
  return {value <= tol ? CheckStatus::pass : CheckStatus::fail,
          what + " " + fmt("max_err=%.3e tol=%.1e", value, tol)};
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Outcome check_su2() {
  double err = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const auto o = build_collective_operators(DickeSpace(n));
    const CMatrix &x = o.jx.matrix(), &y = o.jy.matrix(), &z = o.jz.matrix();
    const cplx i(0.0, 1.0);
    err = std::max({err, max_abs(commutator(x, y) - i * z), max_abs(commutator(y, z) - i * x),
                    max_abs(commutator(z, x) - i * y)});
  }
  for (int n = 1; n <= 4; ++n) {
    const auto o = build_full_space_operators(n);
    const CMatrix x = o.jx.dense(), y = o.jy.dense(), z = o.jz.dense();
    const cplx i(0.0, 1.0);
    err = std::max({err, max_abs(commutator(x, y) - i * z), max_abs(commutator(y, z) - i * x),
                    max_abs(commutator(z, x) - i * y)});
  }
  return within(err, 1e-12, "dicke N<=10, full N<=4");
}

Outcome check_casimir(bool corrupt) {
  double err = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const DickeSpace s(n);
    auto o = build_collective_operators(s);
    CMatrix jm = o.jminus.matrix();
    if (corrupt) jm *= 1.0 + 1e-3;
    const CMatrix jp = jm.adjoint();
    const CMatrix x = 0.5 * (jp + jm), y = cplx(0.0, -0.5) * (jp - jm), &z = o.jz.matrix();
    const CMatrix c = x * x + y * y + z * z;
    err = std::max(err, max_abs(c - s.j() * (s.j() + 1.0) * CMatrix::Identity(s.dim(), s.dim())));
  }
  return within(err, 1e-12, corrupt ? "N<=10 (J- corrupted)" : "N<=10");
}

Outcome check_dmatrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> beta(0.0, 2.0 * kPi);
  double orth = 0.0, stoch = 0.0;
  for (int two_j = 1; two_j <= 30; ++two_j) {
    const double b = beta(rng);
    const Eigen::MatrixXd d = wigner::d_matrix(two_j, b);
    orth = std::max(orth, (d.transpose() * d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff());
    const RMatrix p = wigner::transition_probability_matrix(two_j, b);
    stoch = std::max({stoch, (p.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                      (p.colwise().sum().array() - 1.0).abs().maxCoeff()});
  }
  return {orth <= 1e-10 && stoch <= 1e-10 ? CheckStatus::pass : CheckStatus::fail,
          fmt("j<=15 orthogonality=%.3e stochastic=%.3e tol=1e-10", orth, stoch)};
}

Outcome check_single_qubit() {
  double k_err = 0.0, t_err = 0.0;
  for (SchemeId id : all_schemes()) {
    const auto r = model_kmax(make_model({id, BoundaryPolicy::m0_minus, 1, {}, BackendChoice::dicke}));
    k_err = std::max(k_err, std::abs(r.k_max - 1.5));
    t_err = std::max(t_err, std::abs(r.omega_tau_max - kPi / 3.0));
  }
  return {k_err <= 1e-6 && t_err <= 1e-6 ? CheckStatus::pass : CheckStatus::fail,
          fmt("all schemes |K_max-1.5|=%.3e |tau-pi/3|=%.3e tol=1e-6", k_err, t_err)};
}

Outcome check_extreme_oracle(const std::vector<int>& ns) {
  const std::vector<double> grid = uniform_grid(500);
  double err = 0.0;
  for (int n : ns) {
    const LGModel m = make_model({SchemeId::extreme_vn, BoundaryPolicy::m0_minus, n, {}, BackendChoice::dicke});
    const LGCurve c = model_curve(m, grid, {.grid_points = 64});
    for (const auto& s : c.samples) err = std::max(err, std::abs(s.k - k_extreme_closed_form(0.5 * n, s.omega_tau)));
  }
  std::string what = "N in {";
  for (std::size_t i = 0; i < ns.size(); ++i) what += (i ? "," : "") + std::to_string(ns[i]);
  return within(err, 1e-7, what + "}, 500 samples");
}

Outcome check_extreme_asymptote() {
  const auto r = k_extreme_closed_form_max(1e4);
  return {std::abs(r.k_max - 1.055) <= 1e-3 ? CheckStatus::pass : CheckStatus::fail,
          fmt("j=1e4 K_max=%.6f at %.4e (target 1.055 +- 0.001)", r.k_max, r.omega_tau_max)};
}

Outcome check_oracle_paths() {
  double err = 0.0;
  const double taus[] = {0.13, 0.61, 1.3, 2.9};
  for (SchemeId id : all_schemes()) {
    for (int n : {2, 5, 10}) {
      const LGModel m = make_model({id, BoundaryPolicy::m0_minus, n, {}, BackendChoice::dicke});
      const LGCurve c = model_curve(m, taus, {.grid_points = 64});
      for (const auto& s : c.samples) {
        const LGSample ref = m.scheme.update_rule() == UpdateRule::von_neumann ? k_wigner_sums(m.scheme, n, s.omega_tau)
                                                                                : k_unitary(m.scheme, n, s.omega_tau);
        err = std::max(err, std::abs(s.k - ref.k));
      }
    }
  }
  return within(err, 1e-7, "master equation vs d-matrix sums, all schemes, N in {2,5,10}");
}

ComplexOperator random_hermitian(std::mt19937_64& rng, Basis b, int d) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) a(x, y) = cplx(g(rng), g(rng));
  return {b, CMatrix(0.5 * (a + a.adjoint()))};
}

ComplexOperator random_state(std::mt19937_64& rng, Basis b, int d) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) a(x, y) = cplx(g(rng), g(rng));
  CMatrix r = a * a.adjoint();
  r /= r.trace().real();
  return {b, r};
}

NoiseParams random_noise(std::mt19937_64& rng, bool individual) {
  std::uniform_real_distribution<double> u(0.0, kG);
  NoiseParams n{};
  n.Gamma_d = u(rng);
  n.Gamma_l = u(rng);
  if (individual) {
    n.gamma_d = u(rng);
    n.gamma_l = u(rng);
  }
  return n;
}

Outcome check_lindblad(std::mt19937_64& rng, int cases) {
  std::uniform_int_distribution<int> pick_n(1, 10);
  std::uniform_real_distribution<double> pick_t(0.0, 2.0 * kPi);
  double trace_annihilation = 0.0, trace = 0.0, herm = 0.0, min_eig = 1.0;
  for (int c = 0; c < cases; ++c) {
    const bool full = c % 4 == 3;
    const int n = full ? 1 + c % 4 : pick_n(rng);
    const SpaceSpec space{full ? Basis::full : Basis::dicke, n};
    const Generator gen = build_generator(space, random_noise(rng, full));
    const ComplexOperator a = random_hermitian(rng, space.basis, space.dim());
    const CMatrix ma = gen.apply(a).matrix();
    const double trace_norm = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a.matrix()).eigenvalues().cwiseAbs().sum();
    trace_annihilation = std::max(trace_annihilation, std::abs(ma.trace()) / trace_norm);
    const QuantumState rho{propagate(gen, random_state(rng, space.basis, space.dim()), pick_t(rng)), 0.0};
    trace = std::max(trace, std::abs(rho.rho.matrix().trace() - 1.0));
    herm = std::max(herm, rho.rho.hermiticity_defect());
    min_eig = std::min(min_eig, rho.min_eigenvalue());
  }
  const bool ok = trace_annihilation <= 1e-10 && trace <= 1e-8 && herm <= 1e-9 && min_eig >= -1e-7;
  return {ok ? CheckStatus::pass : CheckStatus::fail,
          std::to_string(cases) + " draws " +
              fmt("|trM|/|A|_tr=%.2e trace=%.2e herm=%.2e", trace_annihilation, trace, herm) +
              fmt(" min_eig=%.2e", min_eig)};
}

Outcome check_measurement(std::mt19937_64& rng) {
  double completeness = 0.0, prob = 0.0, trace_id = 0.0;
  for (Basis b : {Basis::dicke, Basis::full}) {
    for (int n = 1; n <= (b == Basis::dicke ? 10 : 5); ++n) {
      const SpaceSpec space{b, n};
      const auto projectors = jz_eigenprojectors(b, n);
      CMatrix sum = CMatrix::Zero(space.dim(), space.dim());
      for (const auto& p : projectors) sum += p.projector.dense();
      completeness = std::max(completeness, max_abs(sum - CMatrix::Identity(space.dim(), space.dim())));
      const QuantumState rho{random_state(rng, b, space.dim()), 0.0};
      for (SchemeId id : all_schemes()) {
        const MeasurementScheme s(id);
        prob = std::max(prob, std::abs(outcome_distribution(s, space, rho).total() - 1.0));
        const cplx tw = weighted_update(s, space, rho).matrix().trace();
        const double tq = (q_diagonal(s, space).cast<cplx>().asDiagonal() * rho.rho.matrix()).trace().real();
        trace_id = std::max(trace_id, std::abs(tw - tq));
      }
    }
  }
  const bool ok = completeness <= 1e-14 && prob <= 1e-10 && trace_id <= 1e-12;
  return {ok ? CheckStatus::pass : CheckStatus::fail,
          fmt("completeness=%.2e probabilities=%.2e tr(W rho)-tr(Q rho)=%.2e", completeness, prob, trace_id)};
}

Outcome check_backend_equivalence(const std::vector<int>& ns) {
  const std::vector<double> grid = uniform_grid(100);
  double err = 0.0;
  NoiseParams dephasing{}, dissipation{};
  dephasing.Gamma_d = kG;
  dissipation.Gamma_l = 0.5 * kG;
  for (const NoiseParams& noise : {dephasing, dissipation}) {
    for (int n : ns) {
      const ModelSpec base{SchemeId::central_vn, BoundaryPolicy::m0_minus, n, noise, BackendChoice::dicke};
      ModelSpec full = base;
      full.backend = BackendChoice::full;
      const LGCurve a = model_curve(make_model(base), grid, {.grid_points = 64});
      const LGCurve b = model_curve(make_model(full), grid, {.grid_points = 64});
      for (std::size_t i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(a.samples[i].k - b.samples[i].k));
    }
  }
  std::string what = "central-vn N in {";
  for (std::size_t i = 0; i < ns.size(); ++i) what += (i ? "," : "") + std::to_string(ns[i]);
  return within(err, 1e-7, what + "}, collective dephasing and dissipation");
}

Outcome check_calibration() {
  NoiseParams individual{}, collective{};
  individual.gamma_d = kG;
  collective.Gamma_d = kG;
  const auto a = model_kmax(make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 1, individual, BackendChoice::full}));
  const auto b = model_kmax(make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 1, collective, BackendChoice::dicke}));
  return within(std::abs(a.k_max - b.k_max), 1e-8, fmt("N=1 K_max full=%.12f dicke=%.12f", a.k_max, b.k_max));
}

Outcome check_disconnectivity() {
  std::string mismatches;
  bool enumeration_ok = true;
  for (int n = 1; n <= 12; ++n) {
    for (SchemeId id : {SchemeId::central_vn, SchemeId::single_state_vn, SchemeId::parity_vn, SchemeId::extreme_vn,
                        SchemeId::central_lueders}) {
      const auto r = disconnectivity(MeasurementScheme(id), n);
      // Independent pairwise enumeration over the manifolds.
      double best = -1e9, worst = 1e9;
      for (double p : r.plus_manifold_expectations)
        for (double m : r.minus_manifold_expectations) {
          best = std::max(best, p - m);
          worst = std::min(worst, p - m);
        }
      worst = std::max(worst, 0.0);
      if (best != r.delta_best || worst != r.delta_worst) enumeration_ok = false;
      const auto cf = *disconnectivity_closed_form(id, n);
      if (cf.best != r.delta_best || cf.worst != r.delta_worst || cf.av != r.delta_av) {
        if (!mismatches.empty()) mismatches += ";";
        mismatches += std::string(1, scheme_letter(id)) + "@N=" + std::to_string(n) +
                      fmt(":av=%.1f(published %.1f)", r.delta_av, cf.av);
      }
    }
  }
  if (!enumeration_ok) return {CheckStatus::fail, "report disagrees with pairwise enumeration"};
  if (!mismatches.empty())
    return {CheckStatus::deviation, "enumeration differs from published closed form at " + mismatches};
  return {CheckStatus::pass, "N<=12, schemes a,b,c,d,f match closed forms and enumeration"};
}

Outcome check_single_state_asymptote() {
  const auto r = model_kmax(make_model({SchemeId::single_state_vn, BoundaryPolicy::m0_minus, 100, {}, BackendChoice::dicke}));
  const double ref = k_single_state_asymptote(50.0);
  const bool ok = std::abs(r.k_max - ref) <= 0.02 && std::abs(r.omega_tau_max - kPi / 2) <= 0.1;
  return {ok ? CheckStatus::pass : CheckStatus::fail,
          fmt("N=100 K_max=%.6f (asymptote %.6f) at %.4f", r.k_max, ref, r.omega_tau_max)};
}

Outcome check_central_location() {
  const auto r = model_kmax(make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 100, {}, BackendChoice::dicke}));
  return {std::abs(r.omega_tau_max - kPi / 4) <= 0.1 ? CheckStatus::pass : CheckStatus::fail,
          fmt("N=100 K_max=%.6f at %.4f (pi/4 = %.4f, tol 0.1)", r.k_max, r.omega_tau_max, kPi / 4)};
}

Outcome check_lueders_n30() {
  const auto r = model_kmax(make_model({SchemeId::central_lueders, BoundaryPolicy::m0_minus, 30, {}, BackendChoice::dicke}));
  return {r.k_max <= 1.0 + 1e-6 ? CheckStatus::pass : CheckStatus::deviation,
          fmt("N=30 K_max=%.9f at %.5f (published: no violation above N=20)", r.k_max, r.omega_tau_max)};
}

NoiseParams paper_rate(double gd, double gl, double GD, double GL) {
  NoiseParams n{};
  n.gamma_d = gd * kG;
  n.gamma_l = gl * kG;
  n.Gamma_d = GD * kG;
  n.Gamma_l = GL * kG;
  return n;
}

Outcome check_parity_dissipation() {
  const auto c =
      model_kmax(make_model({SchemeId::parity_vn, BoundaryPolicy::m0_minus, 20, paper_rate(0, 0, 0, 0.5), BackendChoice::dicke}));
  return {c.k_max < 1.0 ? CheckStatus::pass : CheckStatus::deviation,
          fmt("N=20 Gamma_L=0.5/2pi K_max=%.9f at %.4e (published: violation removed)", c.k_max, c.omega_tau_max)};
}

Outcome check_central_dephasing() {
  const auto a =
      model_kmax(make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 50, paper_rate(0, 0, 1, 0), BackendChoice::dicke}));
  return {a.k_max > 1.0 ? CheckStatus::pass : CheckStatus::fail,
          fmt("N=50 Gamma_D=1/2pi K_max=%.6f at %.4f", a.k_max, a.omega_tau_max)};
}

Outcome check_lueders_individual() {
  bool ok = true;
  std::string detail = "gamma_D=1/2pi gamma_L=0.5/2pi:";
  for (int n = 5; n <= 8; ++n) {
    const auto noisy = model_kmax(
        make_model({SchemeId::central_lueders, BoundaryPolicy::m0_minus, n, paper_rate(1, 0.5, 0, 0), BackendChoice::full}));
    const auto clean = model_kmax(make_model({SchemeId::central_lueders, BoundaryPolicy::m0_minus, n, {}, BackendChoice::dicke}));
    ok = ok && noisy.k_max >= clean.k_max;
    detail += fmt(" N=%.0f %.6f>=%.6f", n, noisy.k_max, clean.k_max);
  }
  return {ok ? CheckStatus::pass : CheckStatus::fail, detail};
}

}  // namespace

std::string_view check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::deviation: return "DEVIATION";
  }
  return "?";
}

ValidationLevel parse_validation_level(std::string_view text) {
  if (text == "fast") return ValidationLevel::fast;
  if (text == "full") return ValidationLevel::full;
  throw InvalidArgument("unknown validation level '" + std::string(text) + "' (expected fast or full)");
}

bool ValidationReport::ok() const { return count(CheckStatus::fail) == 0; }

std::size_t ValidationReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

std::string format_check_line(const CheckResult& r) {
  char t[32];
  std::snprintf(t, sizeof t, "%.3f", r.seconds);
  return "CHECK " + r.id + " " + std::string(check_status_name(r.status)) + " " + t + " " + r.detail;
}

ValidationReport run_validation(const ValidationOptions& options, const std::function<void(std::string_view)>& sink) {
  std::mt19937_64 rng(20161014);
  const bool full = options.level == ValidationLevel::full;
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"su2-commutators", check_su2},
      {"casimir", [&] { return check_casimir(options.corrupt_jminus); }},
      {"dmatrix-orthogonality", [&] { return check_dmatrix(rng); }},
      {"single-qubit-kmax", check_single_qubit},
      {"extreme-oracle", [&] { return check_extreme_oracle(full ? std::vector<int>{1, 4, 10, 40} : std::vector<int>{1, 4, 10}); }},
      {"extreme-asymptote", check_extreme_asymptote},
      {"oracle-paths", check_oracle_paths},
      {"lindblad-invariants", [&] { return check_lindblad(rng, full ? 200 : 40); }},
      {"measurement-completeness", [&] { return check_measurement(rng); }},
      {"backend-equivalence", [&] { return check_backend_equivalence(full ? std::vector<int>{2, 4, 6} : std::vector<int>{2, 4}); }},
      {"noise-calibration", check_calibration},
      {"disconnectivity", check_disconnectivity},
  };
  if (full) {
    checks.emplace_back("single-state-asymptote", check_single_state_asymptote);
    checks.emplace_back("central-location", check_central_location);
    checks.emplace_back("lueders-n30", check_lueders_n30);
    checks.emplace_back("parity-dissipation", check_parity_dissipation);
    checks.emplace_back("central-dephasing", check_central_dephasing);
    checks.emplace_back("lueders-individual-noise", check_lueders_individual);
  }
  ValidationReport report;
  for (auto& [id, fn] : checks) {
    CheckResult r;
    r.id = id;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = fn();
      r.status = o.status;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.status = CheckStatus::fail;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.checks.push_back(r);
    if (sink) sink(format_check_line(r));
  }
  return report;
}

}  // namespace lgsim
