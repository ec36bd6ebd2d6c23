#pragma once

#include "types.hpp"

namespace lgsim::wigner {

inline constexpr int kDefaultAnalyticCapTwoJ = 1000;  // j = 500

/// Spin labels are carried as twice their value so half-integers stay exact.
struct DMatrixQuery {
  int two_j;
  int two_m_from;
  int two_m_to;
  double beta;

  void validate() const;  // throws DomainError
};

/// d^j_{m_from, m_to}(beta) = <j, m_to| exp(-i beta Jy) |j, m_from>.
double small_d(const DMatrixQuery& q);

/// Same element from the eigendecomposition of Jx; used automatically when
/// the alternating k-sum is too ill-conditioned for the requested accuracy.
double small_d_spectral(const DMatrixQuery& q);

/// |<m| exp(-i Jx theta) |j>|^2, binomial form.
double element_from_top(int two_j, int two_m, double theta);
/// |<m| exp(-i Jx theta) |-j>|^2.
double element_from_bottom(int two_j, int two_m, double theta);

/// P(m, n) = |<m| exp(-i Jx theta) |n>|^2 with ascending-m indices; doubly
/// stochastic.
RMatrix transition_probability_matrix(int two_j, double theta, int cap_two_j = kDefaultAnalyticCapTwoJ);

/// exp(-i theta Jx) in the Dicke basis, assembled from d-matrix elements:
/// <m|U|n> = i^(m-n) d^j_{n,m}(theta).
CMatrix rotation_x(int two_j, double theta);

/// Full d-matrix D(to, from) for all ladder labels (ascending m).
Eigen::MatrixXd d_matrix(int two_j, double beta);

}  // namespace lgsim::wigner
