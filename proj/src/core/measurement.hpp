#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spin_algebra.hpp"

namespace lgsim {

enum class SchemeId { central_vn, single_state_vn, parity_vn, extreme_vn, normalized_jz_vn, central_lueders };
enum class UpdateRule { von_neumann, lueders };
enum class BoundaryPolicy { m0_minus, m0_plus };

const std::vector<SchemeId>& all_schemes();
std::string_view scheme_name(SchemeId id);
// Accepts the canonical ids (central-vn, ...) and the panel letters a..f.
SchemeId parse_scheme(std::string_view text);
char scheme_letter(SchemeId id);

std::string_view boundary_name(BoundaryPolicy b);
BoundaryPolicy parse_boundary(std::string_view text);

/// A binning of the Jz outcomes plus the post-measurement update rule.
class MeasurementScheme {
 public:
  explicit MeasurementScheme(SchemeId id, BoundaryPolicy boundary = BoundaryPolicy::m0_minus);

  SchemeId id() const { return id_; }
  BoundaryPolicy boundary() const { return boundary_; }
  UpdateRule update_rule() const;
  std::string_view name() const { return scheme_name(id_); }

  /// q for Dicke level n = m + N/2 (0..N); nullopt means DISCARD.
  std::optional<double> q(int n_qubits, int level) const;
  std::vector<std::optional<double>> q_values(int n_qubits) const;

 private:
  SchemeId id_;
  BoundaryPolicy boundary_;
};

/// Q = sum_m q_m Pi_m as its diagonal (Q is diagonal in both backends).
Eigen::VectorXd q_diagonal(const MeasurementScheme& scheme, const SpaceSpec& space);
ComplexOperator q_observable(const MeasurementScheme& scheme, const SpaceSpec& space);

/// The Q-weighted post-measurement map as a block mask: entry (x, y) of
/// the result is weight[block[x]] * rho(x, y) when block[x] == block[y] and
/// 0 otherwise. von Neumann blocks are the Jz levels weighted by q (DISCARD
/// weighs 0); Lueders blocks are the two bins weighted by +-1.
class WeightedUpdate {
 public:
  WeightedUpdate(const MeasurementScheme& scheme, const SpaceSpec& space);

  int dim() const { return static_cast<int>(block_.size()); }
  const std::vector<int>& block_of_state() const { return block_; }
  const std::vector<double>& block_weight() const { return weight_; }

  void apply(const cplx* rho, cplx* out) const;
  CMatrix apply(const CMatrix& rho) const;
  // sum_{xy} conj(a_xy) W(b)_xy, without materialising W(b).
  cplx inner(const cplx* a, const cplx* b) const;

 private:
  std::vector<int> block_;
  std::vector<double> weight_;
};

ComplexOperator weighted_update(const MeasurementScheme& scheme, const SpaceSpec& space, const QuantumState& rho);

struct OutcomeDistribution {
  std::map<double, double> by_q;  // q value -> probability
  double discard = 0.0;

  double total() const;
};

OutcomeDistribution outcome_distribution(const MeasurementScheme& scheme, const SpaceSpec& space,
                                         const QuantumState& rho);

}  // namespace lgsim
