#include <doctest.h>

#include "errors.hpp"
#include "fullspace.hpp"
#include "oracles.hpp"

using namespace lgsim;
using oracle::Dense;

namespace {

// K with every propagation done by the dense superoperator exponential.
double k_dense(const MeasurementScheme& s, const Generator& gen, const SpaceSpec& space, double tau) {
  const Dense sup = oracle::superoperator(gen);
  const Dense u1 = oracle::expm(tau * sup), u2 = oracle::expm(2 * tau * sup);
  const Dense rho0 = initial_state(space.basis, space.n_qubits).rho.matrix();
  const Eigen::VectorXd q = q_diagonal(s, space);
  const WeightedUpdate w(s, space);
  auto tr_q = [&](const Dense& a) { return (q.cast<cplx>().asDiagonal() * a).trace().real(); };
  auto upd = [&](const Dense& a) { return Dense(w.apply(oracle::rm(a))); };
  const double c21 = tr_q(oracle::apply_super(u1, upd(rho0)));
  const double c31 = tr_q(oracle::apply_super(u2, upd(rho0)));
  const double c32 = tr_q(oracle::apply_super(u1, upd(oracle::apply_super(u1, rho0))));
  return c21 + c32 - c31;
}

}  // namespace

TEST_CASE("backend selection") {
  CHECK(parse_backend("auto") == BackendChoice::automatic);
  CHECK(parse_backend("full") == BackendChoice::full);
  CHECK_THROWS_AS(parse_backend("gpu"), InvalidArgument);
  CHECK(resolve_backend(BackendChoice::automatic, {}) == Basis::dicke);
  CHECK(resolve_backend(BackendChoice::automatic, {0, 0, 0.2, 0.2}) == Basis::dicke);
  CHECK(resolve_backend(BackendChoice::automatic, {0.1, 0, 0, 0}) == Basis::full);
  CHECK(resolve_backend(BackendChoice::dicke, {0.1, 0, 0, 0}) == Basis::dicke);
  CHECK_THROWS_AS(make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 4, {0.1, 0, 0, 0}, BackendChoice::dicke}),
                  BackendError);
}

TEST_CASE("memory guard") {
  const ModelSpec spec{SchemeId::central_vn, BoundaryPolicy::m0_minus, 14, {0.1, 0, 0, 0}, BackendChoice::automatic, 10};
  try {
    make_model(spec);
    FAIL("expected MemoryGuardError");
  } catch (const MemoryGuardError& e) {
    CHECK(e.estimated_bytes() == estimate_full_space_bytes(14));
    CHECK(std::string(e.what()).find("full_space_cap") != std::string::npos);
  }
  CHECK(estimate_full_space_bytes(14) > estimate_full_space_bytes(13));
  CHECK_NOTHROW(check_full_space(10, 10));
  CHECK_THROWS_AS(check_full_space(11, 10), MemoryGuardError);
  // The Dicke backend is never guarded.
  CHECK_NOTHROW(make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 400, {}, BackendChoice::automatic, 10}));
}

TEST_CASE("full backend equals the Dicke backend under collective noise") {
  const std::vector<double> grid = uniform_grid(30);
  const SearchOptions opts{.grid_points = 64};
  for (int n = 1; n <= 5; ++n) {
    for (SchemeId id : all_schemes()) {
      const NoiseParams noise{0, 0, 0.07, 0.11};
      const LGModel dicke =
          make_model({id, BoundaryPolicy::m0_minus, n, noise, BackendChoice::dicke});
      const LGCurve a = model_curve(dicke, grid, opts);
      const LGCurve b = run_full(MeasurementScheme(id), n, noise, grid, opts);
      CHECK(b.backend == Basis::full);
      for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(a.samples[i].k - b.samples[i].k) < 1e-8);
    }
  }
}

TEST_CASE("individual noise against the dense superoperator") {
  for (int n : {2, 3}) {
    const NoiseParams noise{0.3, 0.2, 0.05, 0.1};
    const SpaceSpec space{Basis::full, n};
    const Generator gen = build_generator(space, noise);
    const QuantumState rho0 = initial_state(Basis::full, n);
    for (SchemeId id : all_schemes()) {
      const MeasurementScheme s(id);
      for (double t : {0.4, 1.2}) CHECK(k_parameter(s, gen, rho0, t, {1e-12, 1e-14}) == doctest::Approx(k_dense(s, gen, space, t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("symmetric projector check") {
  const std::vector<double> times = {0.0, 0.5, 1.5, 3.0};
  const auto coll = symmetric_projector_check(4, {0, 0, 0.3, 0.4}, times);
  for (double v : coll) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  const auto leak = symmetric_projector_check(4, {0, 0.2, 0, 0}, times);
  CHECK(leak[0] == 1.0);
  for (std::size_t i = 1; i < times.size(); ++i) CHECK(leak[i] < 1.0 - 1e-6);
  CHECK_THROWS_AS(symmetric_projector_check(11, {}, times, 10), MemoryGuardError);
}

TEST_CASE("full-space states stay physical under individual noise") {
  const Generator gen = build_generator({Basis::full, 5}, {0.2, 0.3, 0, 0});
  const QuantumState rho0 = initial_state(Basis::full, 5);
  for (double t : {0.7, 2.3}) {
    const QuantumState s{propagate(gen, rho0.rho, t), t};
    CHECK_NOTHROW(s.validate());
  }
}

TEST_CASE("one qubit: individual and collective dephasing calibrate") {
  const double g = 1.0 / (2 * kPi);
  const LGModel ind = make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 1, {g, 0, 0, 0}});
  const LGModel coll = make_model({SchemeId::central_vn, BoundaryPolicy::m0_minus, 1, {0, 0, g, 0}});
  CHECK(ind.space.basis == Basis::full);
  CHECK(coll.space.basis == Basis::dicke);
  CHECK(model_kmax(ind).k_max == doctest::Approx(model_kmax(coll).k_max).epsilon(1e-10));
}
