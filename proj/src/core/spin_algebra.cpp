#include "spin_algebra.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "errors.hpp"

namespace lgsim {

DickeSpace::DickeSpace(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1) throw InvalidArgument("DickeSpace: n_qubits must be >= 1");
}

int DickeSpace::index_of_two_m(int two_m) const {
  if (two_m < -n_ || two_m > n_ || ((two_m + n_) % 2) != 0) {
    std::ostringstream os;
    os << "m = " << 0.5 * two_m << " is not on the ladder of j = " << j();
    throw DomainError(os.str());
  }
  return (two_m + n_) / 2;
}

std::vector<double> DickeSpace::m_values() const {
  std::vector<double> m(dim());
  for (int i = 0; i < dim(); ++i) m[i] = m_at(i);
  return m;
}

std::vector<int> SpaceSpec::level_of_state() const {
  std::vector<int> level(dim());
  for (int s = 0; s < dim(); ++s)
    level[s] = basis == Basis::dicke ? s : std::popcount(static_cast<unsigned>(s));
  return level;
}

ComplexOperator::ComplexOperator(Basis basis, CMatrix matrix) : basis_(basis), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("ComplexOperator must be square");
}

ComplexOperator ComplexOperator::zero(Basis basis, int dim) { return {basis, CMatrix::Zero(dim, dim)}; }

ComplexOperator ComplexOperator::identity(Basis basis, int dim) { return {basis, CMatrix::Identity(dim, dim)}; }

double ComplexOperator::hermiticity_defect() const {
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

void ComplexOperator::assert_hermitian(double tol) const {
  const double defect = hermiticity_defect();
  if (!(defect < tol)) {
    std::ostringstream os;
    os << "operator is not Hermitian: ||A - A^dagger||_max = " << defect;
    throw NumericError(os.str());
  }
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double QuantumState::min_eigenvalue() const {
  const CMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double QuantumState::purity() const { return (rho.matrix() * rho.matrix()).trace().real(); }

void QuantumState::validate(double trace_tol, double herm_tol, double min_eig) const {
  const cplx tr = rho.matrix().trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "state trace " << tr << " deviates from 1";
    throw NumericError(os.str());
  }
  rho.assert_hermitian(herm_tol);
  const double lo = min_eigenvalue();
  if (lo < min_eig) {
    std::ostringstream os;
    os << "state has negative eigenvalue " << lo;
    throw NumericError(os.str());
  }
}

DickeOperators build_collective_operators(const DickeSpace& space) {
  const int d = space.dim();
  const double j = space.j();
  CMatrix jz = CMatrix::Zero(d, d);
  CMatrix jm = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = space.m_at(i);
    jz(i, i) = m;
    if (i > 0) jm(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m - 1.0));
  }
  const CMatrix jp = jm.adjoint();
  const CMatrix jx = 0.5 * (jp + jm);
  const CMatrix jy = cplx(0.0, -0.5) * (jp - jm);
  return {{Basis::dicke, jx}, {Basis::dicke, jy}, {Basis::dicke, jz}, {Basis::dicke, jm}};
}

std::size_t dense_operator_bytes(int n_qubits) {
  if (n_qubits >= 30) return std::numeric_limits<std::size_t>::max();
  const std::size_t dim = std::size_t{1} << n_qubits;
  return dim * dim * sizeof(cplx);
}

namespace {

void check_full_cap(int n_qubits, int cap) {
  if (n_qubits < 1) throw InvalidArgument("full space: n_qubits must be >= 1");
  if (n_qubits > cap) {
    const std::size_t bytes = dense_operator_bytes(n_qubits);
    std::ostringstream os;
    os << "full-space N = " << n_qubits << " exceeds the configured cap of " << cap
       << " qubits (one dense 2^N x 2^N operator needs " << bytes << " bytes)";
    throw MemoryGuardError(os.str(), bytes);
  }
}

}  // namespace

FullSpaceOperators build_full_space_operators(int n_qubits, int cap) {
  check_full_cap(n_qubits, cap);
  const int d = 1 << n_qubits;
  FullSpaceOperators ops;
  ops.n_qubits = n_qubits;

  std::vector<Eigen::Triplet<cplx>> jx_t, jy_t, jm_t;
  Eigen::VectorXcd jz_diag = Eigen::VectorXcd::Zero(d);
  for (int k = 0; k < n_qubits; ++k) {
    const unsigned bit = 1u << k;
    Eigen::VectorXcd sz(d);
    std::vector<Eigen::Triplet<cplx>> sm_t;
    for (int s = 0; s < d; ++s) {
      const bool up = (static_cast<unsigned>(s) & bit) != 0;
      sz(s) = up ? 1.0 : -1.0;
      const int flipped = static_cast<int>(static_cast<unsigned>(s) ^ bit);
      // sigma_x / 2 and sigma_y / 2 on qubit k
      jx_t.emplace_back(flipped, s, 0.5);
      jy_t.emplace_back(flipped, s, up ? cplx(0.0, 0.5) : cplx(0.0, -0.5));
      if (up) {
        sm_t.emplace_back(flipped, s, 1.0);
        jm_t.emplace_back(flipped, s, 1.0);
      }
    }
    jz_diag += 0.5 * sz;
    ops.sigma_z.push_back(SparseOperator::diagonal(Basis::full, sz));
    SparseMatrix sm(d, d);
    sm.setFromTriplets(sm_t.begin(), sm_t.end());
    ops.sigma_minus.emplace_back(Basis::full, std::move(sm));
  }
  SparseMatrix jx(d, d), jy(d, d), jm(d, d);
  jx.setFromTriplets(jx_t.begin(), jx_t.end());
  jy.setFromTriplets(jy_t.begin(), jy_t.end());
  jm.setFromTriplets(jm_t.begin(), jm_t.end());
  ops.jx = SparseOperator(Basis::full, std::move(jx));
  ops.jy = SparseOperator(Basis::full, std::move(jy));
  ops.jminus = SparseOperator(Basis::full, std::move(jm));
  ops.jz = SparseOperator::diagonal(Basis::full, jz_diag);
  return ops;
}

QuantumState initial_state(Basis basis, int n_qubits) {
  const SpaceSpec spec{basis, n_qubits};
  if (n_qubits < 1) throw InvalidArgument("initial_state: n_qubits must be >= 1");
  if (basis == Basis::full) check_full_cap(n_qubits, 30);
  const int d = spec.dim();
  CMatrix rho = CMatrix::Zero(d, d);
  rho(d - 1, d - 1) = 1.0;  // m = j, or every bit set
  return {ComplexOperator(basis, std::move(rho)), 0.0};
}

std::vector<LevelProjector> jz_eigenprojectors(Basis basis, int n_qubits) {
  const SpaceSpec spec{basis, n_qubits};
  const int d = spec.dim();
  const std::vector<int> level = spec.level_of_state();
  std::vector<LevelProjector> out;
  for (int lvl = 0; lvl <= n_qubits; ++lvl) {
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(d);
    for (int s = 0; s < d; ++s)
      if (level[s] == lvl) diag(s) = 1.0;
    out.push_back({2 * lvl - n_qubits, SparseOperator::diagonal(basis, diag)});
  }
  return out;
}

SparseMatrix symmetric_isometry(int n_qubits) {
  check_full_cap(n_qubits, 30);
  const int d = 1 << n_qubits;
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int s = 0; s < d; ++s) {
    const int n = std::popcount(static_cast<unsigned>(s));
    trips.emplace_back(s, n, 1.0 / std::sqrt(binomial(n_qubits, n)));
  }
  SparseMatrix v(d, n_qubits + 1);
  v.setFromTriplets(trips.begin(), trips.end());
  return v;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

}  // namespace lgsim
