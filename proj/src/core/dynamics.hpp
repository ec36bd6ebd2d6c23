#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "integrator.hpp"
#include "sparse_operator.hpp"
#include "spin_algebra.hpp"

namespace lgsim {

/// Noise rates in units of Omega. Lower-case: per qubit; upper-case:
/// collective.
struct NoiseParams {
  double gamma_d = 0.0;  // individual dephasing
  double gamma_l = 0.0;  // individual relaxation
  double Gamma_d = 0.0;  // collective dephasing
  double Gamma_l = 0.0;  // collective relaxation

  void validate() const;
  bool has_individual() const { return gamma_d != 0.0 || gamma_l != 0.0; }
  bool is_noise_free() const { return !has_individual() && Gamma_d == 0.0 && Gamma_l == 0.0; }
  // noise-free, collective-dephasing, individual-noise, ...
  std::string tag() const;

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

struct CollapseOperator {
  std::string label;
  SparseOperator op;
  double rate = 0.0;
};

/// Lindblad generator M[A] = -i[H, A] + sum_c rate_c (a A a^+ - {a^+ a, A}/2).
///
/// Internally M is kept in the form -i(K A - A K^+) + D.*A + sum r S A S^+
/// with K = H - (i/2) sum r a^+ a, where diagonal collapse operators are
/// folded into the entrywise weight D. The adjoint (Heisenberg) map has the
/// same form with K -> -K^+, S -> S^+, D -> conj(D). Both act on arbitrary,
/// not necessarily Hermitian, operators.
class Generator {
 public:
  Generator(SparseOperator hamiltonian, std::vector<CollapseOperator> collapse_ops);

  Basis backend() const { return hamiltonian_.basis(); }
  int dim() const { return hamiltonian_.dim(); }
  const SparseOperator& hamiltonian() const { return hamiltonian_; }
  const std::vector<CollapseOperator>& collapse_ops() const { return collapse_; }

  // Raw kernels on row-major d x d buffers; `out` is overwritten.
  void apply(const cplx* a, cplx* out) const;
  void apply_adjoint(const cplx* a, cplx* out) const;

  ComplexOperator apply(const ComplexOperator& a) const;
  ComplexOperator apply_adjoint(const ComplexOperator& a) const;

 private:
  struct Sandwich {
    Csr left;        // rate * S
    Csr right_rows;  // conj(S) rows, for A S^+
  };
  struct Form {
    Csr k_left;   // -i K
    Csr k_right;  // rows of i conj(K), for i A K^+
    CMatrix diag_weights;
    bool has_diag = false;
    std::vector<Sandwich> sandwiches;
  };

  static Form compile(const SparseMatrix& k, const CMatrix* diag_weights, const std::vector<std::pair<SparseMatrix, double>>& sandwiches);
  void run(const Form& form, const cplx* a, cplx* out) const;

  SparseOperator hamiltonian_;
  std::vector<CollapseOperator> collapse_;
  Form forward_;
  Form adjoint_;
};

/// H = omega Jx (rotating frame) plus the collapse channels for `noise`.
/// DICKE: [(Jz, 2 Gamma_d), (J-, Gamma_l)]; FULL adds per-qubit
/// [(sigma_z^k, gamma_d / 2), (sigma_-^k, gamma_l)].
Generator build_generator(const SpaceSpec& space, const NoiseParams& noise, double omega = 1.0,
                          int full_cap = kDefaultFullSpaceCap);

/// exp(M t)[A] by adaptive Runge-Kutta on dA/dt = M[A].
ComplexOperator propagate(const Generator& gen, const ComplexOperator& a, double duration,
                          const IntegratorOptions& options = {});

/// exp(M^+ t)[A], the Heisenberg-picture evolution of an observable.
ComplexOperator propagate_adjoint(const Generator& gen, const ComplexOperator& a, double duration,
                                  const IntegratorOptions& options = {});

/// Propagates A and reports the state at each ascending sample time.
void propagate_sampled(const Generator& gen, const ComplexOperator& a, std::span<const double> times,
                       const std::function<void(std::size_t, const ComplexOperator&)>& observe,
                       const IntegratorOptions& options = {});

/// Dense exp(-i omega t Jx) from the d-matrix elements.
ComplexOperator unitary_propagator(const DickeSpace& space, double omega, double duration);

/// Same operator by scaling-and-squaring of the dense matrix exponential.
ComplexOperator unitary_propagator_expm(const DickeSpace& space, double omega, double duration);

}  // namespace lgsim
