#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace lgsim {

using cplx = std::complex<double>;

// Density matrices and propagated operators are stored row-major so that the
// sparse-times-dense kernels in the generator walk contiguous rows.
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Basis { dicke, full };

inline const char* basis_name(Basis b) { return b == Basis::dicke ? "dicke" : "full"; }

// Dimensionless time unit: Omega = 1, durations are Omega*tau.
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace lgsim
