#include "dynamics.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "errors.hpp"
#include "wigner.hpp"

namespace lgsim {

void NoiseParams::validate() const {
  const std::pair<const char*, double> rates[] = {
      {"gamma_d", gamma_d}, {"gamma_l", gamma_l}, {"Gamma_d", Gamma_d}, {"Gamma_l", Gamma_l}};
  for (const auto& [name, value] : rates) {
    if (!std::isfinite(value) || value < 0.0) {
      std::ostringstream os;
      os << "noise rate " << name << " = " << value << " must be finite and non-negative";
      throw InvalidArgument(os.str());
    }
  }
}

std::string NoiseParams::tag() const {
  if (is_noise_free()) return "noise-free";
  std::vector<std::string> parts;
  if (Gamma_d > 0) parts.emplace_back("collective-dephasing");
  if (Gamma_l > 0) parts.emplace_back("collective-dissipation");
  if (gamma_d > 0 && gamma_l > 0)
    parts.emplace_back("individual-noise");
  else if (gamma_d > 0)
    parts.emplace_back("individual-dephasing");
  else if (gamma_l > 0)
    parts.emplace_back("individual-dissipation");
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

Generator::Generator(SparseOperator hamiltonian, std::vector<CollapseOperator> collapse_ops)
    : hamiltonian_(std::move(hamiltonian)), collapse_(std::move(collapse_ops)) {
  const int d = hamiltonian_.dim();
  SparseMatrix k = hamiltonian_.matrix();
  CMatrix diag = CMatrix::Zero(d, d);
  bool has_diag = false;
  std::vector<std::pair<SparseMatrix, double>> fwd, adj;

  for (const auto& c : collapse_) {
    if (c.op.dim() != d) throw InvalidArgument("collapse operator " + c.label + " has the wrong dimension");
    if (!std::isfinite(c.rate) || c.rate < 0.0) throw InvalidArgument("collapse rate for " + c.label + " must be >= 0");
    if (c.rate == 0.0) continue;
    const SparseMatrix& a = c.op.matrix();
    const SparseMatrix ada = (SparseMatrix(a.adjoint()) * a).pruned();
    k -= cplx(0.0, 0.5 * c.rate) * ada;
    if (c.op.is_diagonal()) {
      const Eigen::VectorXcd v = c.op.diagonal_entries();
      diag.noalias() += c.rate * (v * v.adjoint());
      has_diag = true;
    } else {
      fwd.emplace_back(a, c.rate);
      adj.emplace_back(SparseMatrix(a.adjoint()), c.rate);
    }
  }
  k.makeCompressed();
  forward_ = compile(k, has_diag ? &diag : nullptr, fwd);
  const SparseMatrix k_adj = -SparseMatrix(k.adjoint());
  const CMatrix diag_adj = diag.conjugate();
  adjoint_ = compile(k_adj, has_diag ? &diag_adj : nullptr, adj);
}

Generator::Form Generator::compile(const SparseMatrix& k, const CMatrix* diag_weights,
                                   const std::vector<std::pair<SparseMatrix, double>>& sandwiches) {
  Form f;
  f.k_left = Csr::from(k, cplx(0.0, -1.0));
  f.k_right = Csr::conjugated(k, cplx(0.0, 1.0));
  if (diag_weights) {
    f.diag_weights = *diag_weights;
    f.has_diag = true;
  }
  for (const auto& [s, rate] : sandwiches) f.sandwiches.push_back({Csr::from(s, rate), Csr::conjugated(s)});
  return f;
}

void Generator::run(const Form& form, const cplx* a, cplx* out) const {
  const int d = dim();
  const std::size_t n = static_cast<std::size_t>(d) * d;
  if (form.has_diag) {
    const cplx* w = form.diag_weights.data();
    for (std::size_t i = 0; i < n; ++i) out[i] = w[i] * a[i];
  } else {
    std::fill(out, out + n, cplx(0.0));
  }
  kernels::add_left_product(form.k_left, a, out, d);
  kernels::add_right_product(a, form.k_right, out, d);
  if (!form.sandwiches.empty()) {
    thread_local std::vector<cplx> scratch;
    scratch.resize(n);
    for (const auto& s : form.sandwiches) {
      std::fill(scratch.begin(), scratch.end(), cplx(0.0));
      kernels::add_right_product(a, s.right_rows, scratch.data(), d);
      kernels::add_left_product(s.left, scratch.data(), out, d);
    }
  }
}

void Generator::apply(const cplx* a, cplx* out) const { run(forward_, a, out); }

void Generator::apply_adjoint(const cplx* a, cplx* out) const { run(adjoint_, a, out); }

ComplexOperator Generator::apply(const ComplexOperator& a) const {
  if (a.dim() != dim()) throw InvalidArgument("generator/operator dimension mismatch");
  CMatrix out(dim(), dim());
  apply(a.matrix().data(), out.data());
  return {a.basis(), std::move(out)};
}

ComplexOperator Generator::apply_adjoint(const ComplexOperator& a) const {
  if (a.dim() != dim()) throw InvalidArgument("generator/operator dimension mismatch");
  CMatrix out(dim(), dim());
  apply_adjoint(a.matrix().data(), out.data());
  return {a.basis(), std::move(out)};
}

Generator build_generator(const SpaceSpec& space, const NoiseParams& noise, double omega, int full_cap) {
  noise.validate();
  if (!std::isfinite(omega)) throw InvalidArgument("omega must be finite");
  std::vector<CollapseOperator> collapse;
  if (space.basis == Basis::dicke) {
    if (noise.has_individual())
      throw BackendError(
          "individual noise (gamma_d, gamma_l) breaks the symmetric subspace; it requires the full backend");
    const DickeSpace ds(space.n_qubits);
    const DickeOperators ops = build_collective_operators(ds);
    collapse.push_back({"Jz", SparseOperator::from_dense(Basis::dicke, ops.jz.matrix()), 2.0 * noise.Gamma_d});
    collapse.push_back({"J-", SparseOperator::from_dense(Basis::dicke, ops.jminus.matrix()), noise.Gamma_l});
    return {SparseOperator::from_dense(Basis::dicke, ops.jx.matrix()).scaled(omega), std::move(collapse)};
  }
  const FullSpaceOperators ops = build_full_space_operators(space.n_qubits, full_cap);
  collapse.push_back({"Jz", ops.jz, 2.0 * noise.Gamma_d});
  collapse.push_back({"J-", ops.jminus, noise.Gamma_l});
  for (int k = 0; k < space.n_qubits; ++k) {
    collapse.push_back({"sigma_z^" + std::to_string(k), ops.sigma_z[k], 0.5 * noise.gamma_d});
    collapse.push_back({"sigma_-^" + std::to_string(k), ops.sigma_minus[k], noise.gamma_l});
  }
  return {ops.jx.scaled(omega), std::move(collapse)};
}

namespace {

ComplexOperator propagate_impl(const Generator& gen, const ComplexOperator& a, double duration,
                               const IntegratorOptions& options, bool adjoint) {
  if (a.dim() != gen.dim()) throw InvalidArgument("propagate: operator dimension does not match generator");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("propagate: duration must be >= 0");
  if (duration == 0.0) return a;
  const int d = gen.dim();
  CVector y = Eigen::Map<const CVector>(a.matrix().data(), static_cast<Eigen::Index>(d) * d);
  DormandPrince rk(options);
  const double times[] = {duration};
  auto rhs = [&](const CVector& in, CVector& out) {
    if (adjoint)
      gen.apply_adjoint(in.data(), out.data());
    else
      gen.apply(in.data(), out.data());
  };
  rk.integrate(rhs, y, times, [](std::size_t, double, const CVector&) {});
  return {a.basis(), Eigen::Map<const CMatrix>(y.data(), d, d)};
}

}  // namespace

ComplexOperator propagate(const Generator& gen, const ComplexOperator& a, double duration,
                          const IntegratorOptions& options) {
  return propagate_impl(gen, a, duration, options, false);
}

ComplexOperator propagate_adjoint(const Generator& gen, const ComplexOperator& a, double duration,
                                  const IntegratorOptions& options) {
  return propagate_impl(gen, a, duration, options, true);
}

void propagate_sampled(const Generator& gen, const ComplexOperator& a, std::span<const double> times,
                       const std::function<void(std::size_t, const ComplexOperator&)>& observe,
                       const IntegratorOptions& options) {
  if (a.dim() != gen.dim()) throw InvalidArgument("propagate: operator dimension does not match generator");
  const int d = gen.dim();
  CVector y = Eigen::Map<const CVector>(a.matrix().data(), static_cast<Eigen::Index>(d) * d);
  DormandPrince rk(options);
  rk.integrate([&](const CVector& in, CVector& out) { gen.apply(in.data(), out.data()); }, y, times,
               [&](std::size_t i, double, const CVector& state) {
                 observe(i, ComplexOperator(a.basis(), Eigen::Map<const CMatrix>(state.data(), d, d)));
               });
}

ComplexOperator unitary_propagator(const DickeSpace& space, double omega, double duration) {
  const double theta = omega * duration;
  if (space.two_j() <= wigner::kDefaultAnalyticCapTwoJ)
    return {Basis::dicke, wigner::rotation_x(space.two_j(), theta)};
  return unitary_propagator_expm(space, omega, duration);
}

ComplexOperator unitary_propagator_expm(const DickeSpace& space, double omega, double duration) {
  const DickeOperators ops = build_collective_operators(space);
  const Eigen::MatrixXcd gen = cplx(0.0, -omega * duration) * Eigen::MatrixXcd(ops.jx.matrix());
  const Eigen::MatrixXcd u = gen.exp();
  return {Basis::dicke, CMatrix(u)};
}

}  // namespace lgsim
