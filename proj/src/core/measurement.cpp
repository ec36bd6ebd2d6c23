#include "measurement.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lgsim {

const std::vector<SchemeId>& all_schemes() {
  static const std::vector<SchemeId> ids = {SchemeId::central_vn,  SchemeId::single_state_vn,
                                            SchemeId::parity_vn,   SchemeId::extreme_vn,
                                            SchemeId::normalized_jz_vn, SchemeId::central_lueders};
  return ids;
}

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::central_vn: return "central-vn";
    case SchemeId::single_state_vn: return "single-state-vn";
    case SchemeId::parity_vn: return "parity-vn";
    case SchemeId::extreme_vn: return "extreme-vn";
    case SchemeId::normalized_jz_vn: return "normalized-jz-vn";
    case SchemeId::central_lueders: return "central-lueders";
  }
  return "?";
}

char scheme_letter(SchemeId id) { return static_cast<char>('a' + static_cast<int>(id)); }

SchemeId parse_scheme(std::string_view text) {
  for (SchemeId id : all_schemes()) {
    if (text == scheme_name(id)) return id;
    if (text.size() == 1 && text[0] == scheme_letter(id)) return id;
  }
  throw InvalidArgument("unknown scheme '" + std::string(text) +
                        "' (expected central-vn, single-state-vn, parity-vn, extreme-vn, normalized-jz-vn, "
                        "central-lueders or a..f)");
}

std::string_view boundary_name(BoundaryPolicy b) { return b == BoundaryPolicy::m0_minus ? "m0-minus" : "m0-plus"; }

BoundaryPolicy parse_boundary(std::string_view text) {
  if (text == "m0-minus") return BoundaryPolicy::m0_minus;
  if (text == "m0-plus") return BoundaryPolicy::m0_plus;
  throw InvalidArgument("unknown boundary policy '" + std::string(text) + "' (expected m0-minus or m0-plus)");
}

MeasurementScheme::MeasurementScheme(SchemeId id, BoundaryPolicy boundary) : id_(id), boundary_(boundary) {}

UpdateRule MeasurementScheme::update_rule() const {
  return id_ == SchemeId::central_lueders ? UpdateRule::lueders : UpdateRule::von_neumann;
}

std::optional<double> MeasurementScheme::q(int n_qubits, int level) const {
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be >= 1");
  if (level < 0 || level > n_qubits) throw DomainError("level outside 0..N");
  const int two_m = 2 * level - n_qubits;
  switch (id_) {
    case SchemeId::central_vn:
    case SchemeId::central_lueders:
      if (two_m > 0) return 1.0;
      if (two_m < 0) return -1.0;
      return boundary_ == BoundaryPolicy::m0_plus ? 1.0 : -1.0;
    case SchemeId::single_state_vn:
      return level == 0 ? -1.0 : 1.0;
    case SchemeId::parity_vn:
      return (n_qubits - level) % 2 == 0 ? 1.0 : -1.0;
    case SchemeId::extreme_vn:
      if (level == n_qubits) return 1.0;
      if (level == 0) return -1.0;
      return std::nullopt;
    case SchemeId::normalized_jz_vn:
      return static_cast<double>(two_m) / n_qubits;
  }
  return std::nullopt;
}

std::vector<std::optional<double>> MeasurementScheme::q_values(int n_qubits) const {
  std::vector<std::optional<double>> out;
  out.reserve(n_qubits + 1);
  for (int level = 0; level <= n_qubits; ++level) out.push_back(q(n_qubits, level));
  return out;
}

Eigen::VectorXd q_diagonal(const MeasurementScheme& scheme, const SpaceSpec& space) {
  const auto qs = scheme.q_values(space.n_qubits);
  const std::vector<int> levels = space.level_of_state();
  Eigen::VectorXd d(static_cast<Eigen::Index>(levels.size()));
  for (std::size_t x = 0; x < levels.size(); ++x) d[x] = qs[levels[x]].value_or(0.0);
  return d;
}

ComplexOperator q_observable(const MeasurementScheme& scheme, const SpaceSpec& space) {
  const Eigen::VectorXd d = q_diagonal(scheme, space);
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  for (Eigen::Index x = 0; x < d.size(); ++x) m(x, x) = d[x];
  return {space.basis, std::move(m)};
}

WeightedUpdate::WeightedUpdate(const MeasurementScheme& scheme, const SpaceSpec& space) {
  const auto qs = scheme.q_values(space.n_qubits);
  const std::vector<int> levels = space.level_of_state();
  block_.resize(levels.size());
  if (scheme.update_rule() == UpdateRule::lueders) {
    // block 0: q = -1 bin, block 1: q = +1 bin
    weight_ = {-1.0, 1.0};
    for (std::size_t x = 0; x < levels.size(); ++x) block_[x] = *qs[levels[x]] > 0 ? 1 : 0;
  } else {
    weight_.resize(qs.size());
    for (std::size_t l = 0; l < qs.size(); ++l) weight_[l] = qs[l].value_or(0.0);
    block_ = levels;
  }
}

void WeightedUpdate::apply(const cplx* rho, cplx* out) const {
  const std::size_t d = block_.size();
  for (std::size_t x = 0; x < d; ++x) {
    const int bx = block_[x];
    const double w = weight_[bx];
    const cplx* r = rho + x * d;
    cplx* o = out + x * d;
    for (std::size_t y = 0; y < d; ++y) o[y] = block_[y] == bx ? w * r[y] : cplx(0.0);
  }
}

CMatrix WeightedUpdate::apply(const CMatrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) throw InvalidArgument("weighted update: dimension mismatch");
  CMatrix out(dim(), dim());
  apply(rho.data(), out.data());
  return out;
}

cplx WeightedUpdate::inner(const cplx* a, const cplx* b) const {
  const std::size_t d = block_.size();
  cplx sum = 0.0;
  for (std::size_t x = 0; x < d; ++x) {
    const int bx = block_[x];
    const double w = weight_[bx];
    if (w == 0.0) continue;
    cplx row = 0.0;
    for (std::size_t y = 0; y < d; ++y)
      if (block_[y] == bx) row += std::conj(a[x * d + y]) * b[x * d + y];
    sum += w * row;
  }
  return sum;
}

ComplexOperator weighted_update(const MeasurementScheme& scheme, const SpaceSpec& space, const QuantumState& rho) {
  if (rho.rho.dim() != space.dim()) throw InvalidArgument("weighted update: state dimension does not match space");
  return {space.basis, WeightedUpdate(scheme, space).apply(rho.rho.matrix())};
}

double OutcomeDistribution::total() const {
  double t = discard;
  for (const auto& [q, p] : by_q) t += p;
  return t;
}

OutcomeDistribution outcome_distribution(const MeasurementScheme& scheme, const SpaceSpec& space,
                                         const QuantumState& rho) {
  if (rho.rho.dim() != space.dim()) throw InvalidArgument("outcome distribution: state dimension does not match space");
  const auto qs = scheme.q_values(space.n_qubits);
  const std::vector<int> levels = space.level_of_state();
  OutcomeDistribution out;
  for (std::size_t x = 0; x < levels.size(); ++x) {
    const double p = rho.rho.matrix()(x, x).real();
    if (const auto& q = qs[levels[x]])
      out.by_q[*q] += p;
    else
      out.discard += p;
  }
  return out;
}

}  // namespace lgsim
