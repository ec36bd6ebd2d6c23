#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "lgsim/lgsim.h"

namespace fs = std::filesystem;

namespace {

const double kPi = 3.14159265358979323846;

void collect(const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(line); }

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(lgsim_version()) > 0);
  CHECK(std::string(lgsim_status_string(LGSIM_OK)) == "ok");
  CHECK(std::strlen(lgsim_status_string(LGSIM_ERR_MEMORY_GUARD)) > 0);
}

TEST_CASE("scheme names") {
  lgsim_scheme s;
  REQUIRE(lgsim_scheme_parse("d", &s) == LGSIM_OK);
  CHECK(s == LGSIM_SCHEME_EXTREME_VN);
  CHECK(std::string(lgsim_scheme_name(LGSIM_SCHEME_CENTRAL_LUEDERS)) == "central-lueders");
  CHECK(lgsim_scheme_parse("zz", &s) == LGSIM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(lgsim_last_error()).find("zz") != std::string::npos);
  CHECK(lgsim_scheme_parse(nullptr, &s) == LGSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("wigner and closed-form entry points") {
  double v = 0.0;
  REQUIRE(lgsim_small_d(1, 1, 1, 0.4, &v) == LGSIM_OK);
  CHECK(v == doctest::Approx(std::cos(0.2)));
  REQUIRE(lgsim_element_from_top(4, 4, 0.9, &v) == LGSIM_OK);
  CHECK(v == doctest::Approx(std::pow(std::cos(0.45), 8)));
  REQUIRE(lgsim_element_from_bottom(4, 4, 0.9, &v) == LGSIM_OK);
  CHECK(v == doctest::Approx(std::pow(std::sin(0.45), 8)));
  CHECK(lgsim_small_d(2, 1, 0, 0.1, &v) == LGSIM_ERR_DOMAIN);
  REQUIRE(lgsim_k_extreme_closed_form(0.5, kPi / 3, &v) == LGSIM_OK);
  CHECK(v == doctest::Approx(1.5));
  lgsim_kmax km{};
  REQUIRE(lgsim_k_extreme_closed_form_max(0.5, &km) == LGSIM_OK);
  CHECK(km.k_max == doctest::Approx(1.5));
  REQUIRE(lgsim_k_single_state_asymptote(50, &v) == LGSIM_OK);
  CHECK(v == doctest::Approx(2.8872).epsilon(1e-4));
  CHECK(lgsim_k_single_state_asymptote(0.1, &v) == LGSIM_ERR_DOMAIN);
}

TEST_CASE("model lifecycle") {
  lgsim_model* m = nullptr;
  REQUIRE(lgsim_model_create(LGSIM_SCHEME_CENTRAL_VN, LGSIM_BOUNDARY_M0_MINUS, 1, nullptr, LGSIM_BACKEND_AUTO, 0, &m) ==
          LGSIM_OK);
  lgsim_backend b;
  REQUIRE(lgsim_model_backend(m, &b) == LGSIM_OK);
  CHECK(b == LGSIM_BACKEND_DICKE);
  lgsim_sample s{};
  REQUIRE(lgsim_model_k(m, kPi / 3, &s) == LGSIM_OK);
  CHECK(s.k == doctest::Approx(1.5).epsilon(1e-8));
  double c = 0.0;
  REQUIRE(lgsim_model_correlation(m, 0.0, 0.7, &c) == LGSIM_OK);
  CHECK(c == doctest::Approx(std::cos(0.7)).epsilon(1e-8));
  lgsim_kmax km{};
  const lgsim_search search{256, 1e-7};
  REQUIRE(lgsim_model_kmax(m, &search, &km) == LGSIM_OK);
  CHECK(km.k_max == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(km.grid_points == 256);

  const double grid[] = {0.5, 1.0, 1.5};
  lgsim_curve* curve = nullptr;
  REQUIRE(lgsim_model_curve(m, grid, 3, &search, &curve) == LGSIM_OK);
  CHECK(lgsim_curve_size(curve) == 3);
  REQUIRE(lgsim_curve_sample(curve, 1, &s) == LGSIM_OK);
  CHECK(s.omega_tau == 1.0);
  CHECK(lgsim_curve_sample(curve, 3, &s) == LGSIM_ERR_INVALID_ARGUMENT);
  REQUIRE(lgsim_curve_kmax(curve, &km) == LGSIM_OK);
  CHECK(km.k_max == doctest::Approx(1.5).epsilon(1e-9));
  lgsim_curve_destroy(curve);
  CHECK(lgsim_model_k(m, -1.0, &s) == LGSIM_ERR_INVALID_ARGUMENT);
  lgsim_model_destroy(m);
  lgsim_model_destroy(nullptr);
}

TEST_CASE("model errors") {
  lgsim_model* m = nullptr;
  const lgsim_noise individual{0.1, 0.0, 0.0, 0.0};
  CHECK(lgsim_model_create(LGSIM_SCHEME_CENTRAL_VN, LGSIM_BOUNDARY_M0_MINUS, 4, &individual, LGSIM_BACKEND_DICKE, 0,
                           &m) == LGSIM_ERR_BACKEND);
  CHECK(m == nullptr);
  CHECK(lgsim_model_create(LGSIM_SCHEME_CENTRAL_VN, LGSIM_BOUNDARY_M0_MINUS, 14, &individual, LGSIM_BACKEND_AUTO, 0,
                           &m) == LGSIM_ERR_MEMORY_GUARD);
  CHECK(lgsim_last_error_bytes() > (std::size_t{1} << 30));
  const lgsim_noise negative{0.0, 0.0, -1.0, 0.0};
  CHECK(lgsim_model_create(LGSIM_SCHEME_CENTRAL_VN, LGSIM_BOUNDARY_M0_MINUS, 4, &negative, LGSIM_BACKEND_AUTO, 0, &m) ==
        LGSIM_ERR_INVALID_ARGUMENT);
  CHECK(lgsim_model_create(LGSIM_SCHEME_CENTRAL_VN, LGSIM_BOUNDARY_M0_MINUS, 4, nullptr, LGSIM_BACKEND_AUTO, 0,
                           nullptr) == LGSIM_ERR_INVALID_ARGUMENT);
  CHECK(lgsim_model_create(static_cast<lgsim_scheme>(42), LGSIM_BOUNDARY_M0_MINUS, 4, nullptr, LGSIM_BACKEND_AUTO, 0,
                           &m) == LGSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("disconnectivity") {
  lgsim_disconnectivity d{};
  REQUIRE(lgsim_disconnectivity_compute(LGSIM_SCHEME_EXTREME_VN, LGSIM_BOUNDARY_M0_MINUS, 10, &d) == LGSIM_OK);
  CHECK(d.delta_av == 10.0);
  CHECK(lgsim_disconnectivity_compute(LGSIM_SCHEME_NORMALIZED_JZ_VN, LGSIM_BOUNDARY_M0_MINUS, 10, &d) ==
        LGSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config and commands") {
  const fs::path out = fs::temp_directory_path() / "lgsim_capi_test";
  fs::remove_all(out);
  lgsim_config* c = nullptr;
  REQUIRE(lgsim_config_create(&c) == LGSIM_OK);
  CHECK(lgsim_config_validate(c) == LGSIM_ERR_CONFIG);
  CHECK(std::string(lgsim_last_error()).rfind("schemes", 0) == 0);
  CHECK(lgsim_config_set(c, "grid_points", "many") == LGSIM_ERR_CONFIG);
  CHECK(std::string(lgsim_last_error()).rfind("grid_points", 0) == 0);
  REQUIRE(lgsim_config_set(c, "schemes", "a") == LGSIM_OK);
  REQUIRE(lgsim_config_append(c, "schemes", "d") == LGSIM_OK);
  REQUIRE(lgsim_config_set(c, "n_values", "1..2") == LGSIM_OK);
  REQUIRE(lgsim_config_set(c, "grid_points", "64") == LGSIM_OK);
  REQUIRE(lgsim_config_set(c, "curve_points", "10") == LGSIM_OK);
  REQUIRE(lgsim_config_set(c, "output_dir", out.string().c_str()) == LGSIM_OK);
  REQUIRE(lgsim_config_validate(c) == LGSIM_OK);

  std::vector<std::string> lines;
  REQUIRE(lgsim_cmd_curve(c, collect, &lines) == LGSIM_OK);
  CHECK(lines.size() >= 4);
  CHECK(fs::exists(out / "curve_extreme-vn_N2.csv"));
  REQUIRE(lgsim_cmd_kmax_sweep(c, collect, &lines) == LGSIM_OK);
  CHECK(fs::exists(out / "kmax_sweep.csv"));
  REQUIRE(lgsim_cmd_disconnectivity(c, nullptr, nullptr) == LGSIM_OK);
  CHECK(fs::exists(out / "disconnectivity.csv"));

  const std::string a = (out / "curve_central-vn_N1.csv").string(), s = (out / "kmax_sweep.csv").string();
  const char* paths[] = {a.c_str(), s.c_str()};
  const std::string script = (out / "plot.gp").string();
  REQUIRE(lgsim_cmd_plot_script(paths, 2, script.c_str()) == LGSIM_OK);
  CHECK(fs::exists(script));
  const std::string missing = (out / "missing.csv").string();
  const char* bad[] = {missing.c_str()};
  CHECK(lgsim_cmd_plot_script(bad, 1, script.c_str()) == LGSIM_ERR_IO);
  CHECK(std::string(lgsim_last_error()).find("missing.csv") != std::string::npos);
  lgsim_config_destroy(c);

  CHECK(lgsim_config_load("/nonexistent/x.cfg", &c) == LGSIM_ERR_IO);
}

TEST_CASE("fault injection through validate") {
  std::vector<std::string> lines;
  int failures = -1;
  REQUIRE(lgsim_validate(LGSIM_VALIDATE_FAST, 1, collect, &lines, &failures) == LGSIM_OK);
  CHECK(failures > 0);
  bool casimir_failed = false;
  for (const auto& l : lines)
    if (l.find("casimir") != std::string::npos && l.find("FAIL") != std::string::npos) casimir_failed = true;
  CHECK(casimir_failed);
}
