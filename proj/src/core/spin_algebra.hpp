#pragma once

#include <vector>

#include "sparse_operator.hpp"
#include "types.hpp"

namespace lgsim {

inline constexpr int kDefaultFullSpaceCap = 12;

/// The (N+1)-dimensional symmetric subspace of N qubits, j = N/2.
/// Basis index i corresponds to m = i - j (ascending m).
class DickeSpace {
 public:
  explicit DickeSpace(int n_qubits);

  int n_qubits() const { return n_; }
  int two_j() const { return n_; }
  double j() const { return 0.5 * n_; }
  int dim() const { return n_ + 1; }

  int two_m_at(int index) const { return 2 * index - n_; }
  double m_at(int index) const { return 0.5 * two_m_at(index); }
  int index_of_two_m(int two_m) const;
  std::vector<double> m_values() const;

 private:
  int n_;
};

/// Which backend a model lives in, and how many qubits it describes.
struct SpaceSpec {
  Basis basis = Basis::dicke;
  int n_qubits = 1;

  int dim() const { return basis == Basis::dicke ? n_qubits + 1 : (1 << n_qubits); }
  // Dicke level (0..N) of every basis state: identity for DICKE, Hamming
  // weight for FULL.
  std::vector<int> level_of_state() const;
};

class ComplexOperator {
 public:
  ComplexOperator() = default;
  ComplexOperator(Basis basis, CMatrix matrix);

  static ComplexOperator zero(Basis basis, int dim);
  static ComplexOperator identity(Basis basis, int dim);

  Basis basis() const { return basis_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  CMatrix& matrix() { return matrix_; }

  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() < tol; }
  // Throws NumericError when ||A - A^dagger||_max >= tol.
  void assert_hermitian(double tol = 1e-12) const;

 private:
  Basis basis_ = Basis::dicke;
  CMatrix matrix_;
};

CMatrix commutator(const CMatrix& a, const CMatrix& b);

struct QuantumState {
  ComplexOperator rho;
  double time = 0.0;

  // Checks trace, Hermiticity and numerical positivity; throws NumericError.
  void validate(double trace_tol = 1e-9, double herm_tol = 1e-10, double min_eig = -1e-8) const;
  double min_eigenvalue() const;
  double purity() const;
};

struct DickeOperators {
  ComplexOperator jx, jy, jz, jminus;
};

DickeOperators build_collective_operators(const DickeSpace& space);

/// Operators of the 2^N computational basis. Qubit k is bit k of the basis
/// index; bit value 1 is the excited state (sigma_z = +1).
struct FullSpaceOperators {
  int n_qubits = 0;
  SparseOperator jx, jy, jz, jminus;
  std::vector<SparseOperator> sigma_z;
  std::vector<SparseOperator> sigma_minus;
};

FullSpaceOperators build_full_space_operators(int n_qubits, int cap = kDefaultFullSpaceCap);

/// Bytes of one dense 2^N x 2^N complex matrix (saturates).
std::size_t dense_operator_bytes(int n_qubits);

/// Fully polarised state: |m=j><m=j| (DICKE) or |11...1><11...1| (FULL).
QuantumState initial_state(Basis basis, int n_qubits);

struct LevelProjector {
  int two_m;
  SparseOperator projector;
};

/// Jz eigenprojectors ordered by ascending m. FULL projectors are the
/// Hamming-weight subspaces of rank C(N, m + N/2).
std::vector<LevelProjector> jz_eigenprojectors(Basis basis, int n_qubits);

/// Columns are the Dicke states |j,m> written in the computational basis
/// (2^N x (N+1)), ascending m.
SparseMatrix symmetric_isometry(int n_qubits);

double binomial(int n, int k);

}  // namespace lgsim
