#include <doctest.h>

#include "errors.hpp"
#include "lgi.hpp"
#include "oracles.hpp"

using namespace lgsim;

namespace {

const IntegratorOptions kTight{1e-12, 1e-14};

struct Fixture {
  int n;
  Generator gen;
  QuantumState rho0;
  Fixture(int n_, NoiseParams noise = {}) : n(n_), gen(build_generator({Basis::dicke, n_}, noise)), rho0(initial_state(Basis::dicke, n_)) {}
};

}  // namespace

TEST_CASE("two-level correlators") {
  const Fixture f(1);
  for (SchemeId id : all_schemes()) {
    const MeasurementScheme s(id);
    for (double t : {0.2, kPi / 3, 1.4}) {
      const LGSample x = k_components(s, f.gen, f.rho0, t, kTight);
      CHECK(x.c21 == doctest::Approx(std::cos(t)).epsilon(1e-9));
      CHECK(x.k == doctest::Approx(2 * std::cos(t) - std::cos(2 * t)).epsilon(1e-9));
    }
    CHECK(k_parameter(s, f.gen, f.rho0, kPi / 3, kTight) == doctest::Approx(1.5).epsilon(1e-9));
  }
}

TEST_CASE("equal-time limit") {
  const Fixture f(6);
  for (SchemeId id : {SchemeId::central_vn, SchemeId::single_state_vn, SchemeId::parity_vn, SchemeId::extreme_vn}) {
    CHECK(correlation(MeasurementScheme(id), f.gen, f.rho0, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(k_parameter(MeasurementScheme(id), f.gen, f.rho0, 1e-6, kTight) == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(correlation(MeasurementScheme(SchemeId::central_vn), f.gen, f.rho0, 1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(k_parameter(MeasurementScheme(SchemeId::central_vn), f.gen, f.rho0, 0.0), InvalidArgument);
}

TEST_CASE("extreme closed form") {
  for (double t : {0.0, 0.3, 1.1, 2.9}) {
    CHECK(k_extreme_closed_form(0.5, t) == doctest::Approx(2 * std::cos(t) - std::cos(2 * t)).epsilon(1e-13));
  }
  CHECK(k_extreme_closed_form(7.0, 0.0) == doctest::Approx(1.0));
  const Fixture f(8);
  for (double t : {0.25, 0.8, 2.0}) {
    const LGSample x = k_components(MeasurementScheme(SchemeId::extreme_vn), f.gen, f.rho0, t, kTight);
    CHECK(x.c21 == doctest::Approx(std::pow(std::cos(t / 2), 16) - std::pow(std::sin(t / 2), 16)).epsilon(1e-9));
    CHECK(x.k == doctest::Approx(k_extreme_closed_form(4.0, t)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(k_extreme_closed_form(0.25, 1.0), DomainError);
}

TEST_CASE("single-state asymptote formula") {
  CHECK(k_single_state_asymptote(50) == doctest::Approx(2.8872).epsilon(1e-4));
  CHECK(k_single_state_asymptote(0.5) == doctest::Approx(3 - std::sqrt(4 / kPi)));
  CHECK(k_single_state_asymptote(1e12) == doctest::Approx(3.0).epsilon(1e-5));
}

TEST_CASE("propagation, d-matrix sums and dense rotation agree") {
  for (int n : {2, 5, 9, 16}) {
    const Fixture f(n);
    for (SchemeId id : all_schemes()) {
      const MeasurementScheme s(id);
      for (double t : {0.35, 1.3}) {
        const LGSample a = k_components(s, f.gen, f.rho0, t, kTight);
        const LGSample u = k_unitary(s, n, t);
        CHECK(a.k == doctest::Approx(u.k).epsilon(1e-8));
        CHECK(a.c32 == doctest::Approx(u.c32).epsilon(1e-8));
        if (s.update_rule() == UpdateRule::von_neumann) CHECK(k_wigner_sums(s, n, t).k == doctest::Approx(u.k).epsilon(1e-9));
      }
    }
  }
  CHECK_THROWS_AS(k_wigner_sums(MeasurementScheme(SchemeId::central_lueders), 4, 0.2), InvalidArgument);
}

TEST_CASE("grid sweep equals the direct route") {
  const Fixture f(7, {0, 0, 0.05, 0.08});
  const std::vector<double> grid = uniform_grid(40);
  for (SchemeId id : all_schemes()) {
    const MeasurementScheme s(id);
    const LGCurve c = k_curve(s, f.gen, f.rho0, grid, SearchOptions{.grid_points = 200});
    REQUIRE(c.samples.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); i += 7) {
      const LGSample d = k_components(s, f.gen, f.rho0, grid[i], kTight);
      CHECK(c.samples[i].k == doctest::Approx(d.k).epsilon(1e-7));
      CHECK(c.samples[i].c31 == doctest::Approx(d.c31).epsilon(1e-7));
    }
    // The refined maximum dominates every grid sample.
    for (const auto& x : c.samples) CHECK(c.k_max >= x.k - 1e-9);
  }
}

TEST_CASE("K_max for one qubit") {
  const Fixture f(1);
  for (SchemeId id : all_schemes()) {
    const KMaxResult r = k_max_search(MeasurementScheme(id), f.gen, f.rho0);
    CHECK(r.k_max == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(r.omega_tau_max == doctest::Approx(kPi / 3).epsilon(1e-6));
    CHECK_FALSE(r.at_edge);
  }
}

TEST_CASE("K_max search against the extreme closed form") {
  const Fixture f(20);
  const KMaxResult r = k_max_search(MeasurementScheme(SchemeId::extreme_vn), f.gen, f.rho0);
  const KMaxResult oracle = k_extreme_closed_form_max(10.0);
  CHECK(r.k_max == doctest::Approx(oracle.k_max).epsilon(1e-8));
  CHECK(r.omega_tau_max == doctest::Approx(oracle.omega_tau_max).epsilon(1e-5));
}

TEST_CASE("single-state scheme near the asymptote at N=30") {
  const Fixture f(30);
  const KMaxResult r = k_max_search(MeasurementScheme(SchemeId::single_state_vn), f.gen, f.rho0);
  CHECK(std::abs(r.k_max - k_single_state_asymptote(15)) < 0.05);
  CHECK(std::abs(r.omega_tau_max - kPi / 2) < 0.2);
  CHECK(r.k_max <= 3.0);
}

TEST_CASE("curves are smooth") {
  const Fixture f(12, {0, 0, 0.1, 0.1});
  const int points = 400;
  const std::vector<double> grid = uniform_grid(points);
  for (SchemeId id : all_schemes()) {
    const LGCurve c = k_curve(MeasurementScheme(id), f.gen, f.rho0, grid, SearchOptions{.grid_points = 100});
    // The single-state rise is the steepest, |dK/d(omega tau)| close to 3.5.
    const double bound = (id == SchemeId::single_state_vn ? 12.0 : 10.0) / points;
    for (std::size_t i = 1; i < c.samples.size(); ++i) CHECK(std::abs(c.samples[i].k - c.samples[i - 1].k) < bound);
  }
}

TEST_CASE("noise lowers the violation") {
  const Fixture clean(10), noisy(10, {0, 0, 0, 0.5 / (2 * kPi)});
  const MeasurementScheme s(SchemeId::central_vn);
  CHECK(k_max_search(s, noisy.gen, noisy.rho0).k_max < k_max_search(s, clean.gen, clean.rho0).k_max);
}

TEST_CASE("numerical guards") {
  const Fixture f(3);
  const MeasurementScheme s(SchemeId::central_vn);
  SUBCASE("imaginary residue") {
    QuantumState bad = f.rho0;
    bad.rho.matrix() *= cplx(0.0, 1.0);
    CHECK_THROWS_AS(k_components(s, f.gen, bad, 0.5), NumericError);
  }
  SUBCASE("algebraic bound") {
    QuantumState bad = f.rho0;
    bad.rho.matrix() *= 5.0;
    CHECK_THROWS_AS(k_components(s, f.gen, bad, 0.5), NumericError);
  }
  SUBCASE("search options") {
    CHECK_THROWS_AS(k_max_search(s, f.gen, f.rho0, SearchOptions{.grid_points = 10}), InvalidArgument);
    CHECK_THROWS_AS(k_max_search(s, f.gen, f.rho0, SearchOptions{.refine_tol = 0.0}), InvalidArgument);
    const std::vector<double> bad_grid = {0.5, 0.2};
    CHECK_THROWS_AS(k_curve(s, f.gen, f.rho0, bad_grid), InvalidArgument);
  }
}

TEST_CASE("grid helpers") {
  CHECK(default_grid_points(1) == 2000);
  CHECK(default_grid_points(150) == 3000);
  const auto g = uniform_grid(4);
  CHECK(g.size() == 4);
  CHECK(g.front() == doctest::Approx(kPi / 4));
  CHECK(g.back() == kPi);
  CHECK(space_of(build_generator({Basis::full, 3}, {})).n_qubits == 3);
}
