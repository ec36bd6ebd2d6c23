#pragma once

#include <vector>

#include "types.hpp"

namespace lgsim {

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Square sparse operator tagged with the basis it acts in.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(Basis basis, SparseMatrix matrix);

  static SparseOperator from_dense(Basis basis, const CMatrix& dense, double drop_tol = 0.0);
  static SparseOperator identity(Basis basis, int dim);
  static SparseOperator diagonal(Basis basis, const Eigen::VectorXcd& diag);

  Basis basis() const { return basis_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const SparseMatrix& matrix() const { return matrix_; }
  long nonzeros() const { return matrix_.nonZeros(); }

  CMatrix dense() const;
  SparseOperator adjoint() const;
  bool is_diagonal() const;
  Eigen::VectorXcd diagonal_entries() const;

  SparseOperator operator*(const SparseOperator& rhs) const;
  SparseOperator operator+(const SparseOperator& rhs) const;
  SparseOperator operator-(const SparseOperator& rhs) const;
  SparseOperator scaled(cplx factor) const;

 private:
  Basis basis_ = Basis::dicke;
  SparseMatrix matrix_;
};

/// Compressed rows with raw arrays; the hot kernels below iterate these.
struct Csr {
  int dim = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<cplx> val;

  static Csr from(const SparseMatrix& m, cplx scale = 1.0);
  static Csr conjugated(const SparseMatrix& m, cplx scale = 1.0);
};

namespace kernels {

// out += S * A, with S in `s` (already scaled).
void add_left_product(const Csr& s, const cplx* a, cplx* out, int d);

// out += A * T^T where `t_rows` stores the rows of T. Passing the conjugated
// rows of S gives out += A * S^dagger.
void add_right_product(const cplx* a, const Csr& t_rows, cplx* out, int d);

}  // namespace kernels

}  // namespace lgsim
