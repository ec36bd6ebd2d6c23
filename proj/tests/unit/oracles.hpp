#pragma once

// Brute-force references shared by the unit tests. Deliberately naive:
// dense matrices, explicit Kronecker products, scaling-and-squaring exp.

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "dynamics.hpp"
#include "spin_algebra.hpp"

namespace oracle {

using lgsim::cplx;
using Dense = Eigen::MatrixXcd;

inline Dense expm(const Dense& a) { return a.exp(); }

inline double max_abs(const Dense& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// Row-major vec: vec(A X B) = kron(A, B^T) vec(X).
inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Dense Lindblad superoperator from the generator's declared H and
/// collapse list, acting on row-major vectorised operators.
inline Dense superoperator(const lgsim::Generator& gen) {
  const Eigen::Index d = gen.dim();
  const Dense id = Dense::Identity(d, d);
  const Dense h = gen.hamiltonian().dense();
  Dense s = cplx(0.0, -1.0) * (kron(h, id) - kron(id, h.transpose()));
  for (const auto& c : gen.collapse_ops()) {
    const Dense a = c.op.dense();
    const Dense ada = a.adjoint() * a;
    s += c.rate * (kron(a, a.conjugate()) - 0.5 * kron(ada, id) - 0.5 * kron(id, ada.transpose()));
  }
  return s;
}

inline Dense apply_super(const Dense& s, const Dense& a) {
  const Eigen::Index d = a.rows();
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = a;
  Eigen::VectorXcd v = Eigen::Map<Eigen::VectorXcd>(rm.data(), d * d);
  Eigen::VectorXcd w = s * v;
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out = Eigen::Map<decltype(rm)>(w.data(), d, d);
  return out;
}

inline Dense random_matrix(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> g;
  Dense a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

inline Dense random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
  const Dense a = random_matrix(rng, d);
  return 0.5 * (a + a.adjoint());
}

inline Dense random_density(std::mt19937_64& rng, Eigen::Index d) {
  const Dense a = random_matrix(rng, d);
  Dense r = a * a.adjoint();
  return r / r.trace().real();
}

inline lgsim::CMatrix rm(const Dense& a) { return a; }

}  // namespace oracle
