#include "sparse_operator.hpp"

#include <cmath>

#include "errors.hpp"

namespace lgsim {

SparseOperator::SparseOperator(Basis basis, SparseMatrix matrix)
    : basis_(basis), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("SparseOperator must be square");
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::from_dense(Basis basis, const CMatrix& dense, double drop_tol) {
  if (dense.rows() != dense.cols()) throw InvalidArgument("SparseOperator must be square");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index r = 0; r < dense.rows(); ++r)
    for (Eigen::Index c = 0; c < dense.cols(); ++c)
      if (std::abs(dense(r, c)) > drop_tol) trips.emplace_back(r, c, dense(r, c));
  SparseMatrix m(dense.rows(), dense.cols());
  m.setFromTriplets(trips.begin(), trips.end());
  return {basis, std::move(m)};
}

SparseOperator SparseOperator::identity(Basis basis, int dim) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return {basis, std::move(m)};
}

SparseOperator SparseOperator::diagonal(Basis basis, const Eigen::VectorXcd& diag) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (diag(i) != cplx(0.0)) trips.emplace_back(i, i, diag(i));
  SparseMatrix m(diag.size(), diag.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return {basis, std::move(m)};
}

CMatrix SparseOperator::dense() const { return CMatrix(matrix_); }

SparseOperator SparseOperator::adjoint() const {
  SparseMatrix adj = matrix_.adjoint();
  return {basis_, std::move(adj)};
}

bool SparseOperator::is_diagonal() const {
  for (int r = 0; r < matrix_.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it)
      if (it.col() != r && it.value() != cplx(0.0)) return false;
  return true;
}

Eigen::VectorXcd SparseOperator::diagonal_entries() const { return matrix_.diagonal(); }

SparseOperator SparseOperator::operator*(const SparseOperator& rhs) const {
  SparseMatrix p = (matrix_ * rhs.matrix_).pruned();
  return {basis_, std::move(p)};
}

SparseOperator SparseOperator::operator+(const SparseOperator& rhs) const {
  SparseMatrix s = matrix_ + rhs.matrix_;
  return {basis_, std::move(s)};
}

SparseOperator SparseOperator::operator-(const SparseOperator& rhs) const {
  SparseMatrix s = matrix_ - rhs.matrix_;
  return {basis_, std::move(s)};
}

SparseOperator SparseOperator::scaled(cplx factor) const {
  SparseMatrix s = matrix_ * factor;
  return {basis_, std::move(s)};
}

Csr Csr::from(const SparseMatrix& m, cplx scale) {
  Csr out;
  out.dim = static_cast<int>(m.rows());
  out.row_ptr.assign(out.dim + 1, 0);
  for (int r = 0; r < out.dim; ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.value() == cplx(0.0)) continue;
      out.col.push_back(static_cast<int>(it.col()));
      out.val.push_back(scale * it.value());
    }
    out.row_ptr[r + 1] = static_cast<int>(out.col.size());
  }
  return out;
}

Csr Csr::conjugated(const SparseMatrix& m, cplx scale) {
  Csr out = from(m);
  for (auto& v : out.val) v = scale * std::conj(v);
  return out;
}

namespace kernels {

void add_left_product(const Csr& s, const cplx* a, cplx* out, int d) {
  for (int r = 0; r < d; ++r) {
    cplx* orow = out + static_cast<std::ptrdiff_t>(r) * d;
    for (int k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k) {
      const cplx v = s.val[k];
      const cplx* arow = a + static_cast<std::ptrdiff_t>(s.col[k]) * d;
      for (int c = 0; c < d; ++c) orow[c] += v * arow[c];
    }
  }
}

void add_right_product(const cplx* a, const Csr& t_rows, cplx* out, int d) {
  for (int x = 0; x < d; ++x) {
    const cplx* arow = a + static_cast<std::ptrdiff_t>(x) * d;
    cplx* orow = out + static_cast<std::ptrdiff_t>(x) * d;
    for (int y = 0; y < d; ++y) {
      cplx acc = 0.0;
      for (int k = t_rows.row_ptr[y]; k < t_rows.row_ptr[y + 1]; ++k) acc += arow[t_rows.col[k]] * t_rows.val[k];
      orow[y] += acc;
    }
  }
}

}  // namespace kernels

}  // namespace lgsim
