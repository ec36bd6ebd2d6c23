#include <doctest.h>

#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "plot_script.hpp"
#include "sweep.hpp"

using namespace lgsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lgsim_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> rows_of(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string header_of(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') return line;
  return {};
}

RunConfig base_config(const fs::path& out) {
  RunConfig c;
  c.schemes = {SchemeId::central_vn};
  c.n_values = {1};
  c.output_dir = out;
  c.workers = 2;
  return c;
}

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("integer lists") {
  CHECK(parse_int_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_int_list("2, 5..6,9") == std::vector<int>{2, 5, 6, 9});
  CHECK_THROWS(parse_int_list("4..2"));
  CHECK_THROWS(parse_int_list("x"));
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(R"(# a comment
schemes = a, extreme-vn
n_values = 1..3, 10
gamma_D_coll = 0.05   # trailing comment
gamma_L_coll = 0.02
backend = dicke
grid_points = 128
curve_points = 50
refine_tol = 1e-7
boundary = m0-plus
workers = 3
)");
  CHECK(c.schemes == std::vector<SchemeId>{SchemeId::central_vn, SchemeId::extreme_vn});
  CHECK(c.n_values == std::vector<int>{1, 2, 3, 10});
  CHECK(c.noise.Gamma_d == 0.05);
  CHECK(c.noise.Gamma_l == 0.02);
  CHECK(c.backend == BackendChoice::dicke);
  CHECK(c.grid_points == 128);
  CHECK(c.curve_points == 50);
  CHECK(c.refine_tol == 1e-7);
  CHECK(c.boundary == BoundaryPolicy::m0_plus);
  CHECK(c.resolved_workers() == 3);
  CHECK_NOTHROW(c.validate());
  CHECK(parse_config("schemes = all\nn_values = 2").schemes.size() == 6);
  // Round trip.
  const RunConfig r = parse_config(config_to_text(c));
  CHECK(config_to_text(r) == config_to_text(c));
  CHECK(config_keys().size() >= 14);
}

TEST_CASE("config errors name the field") {
  CHECK(field_of([] { parse_config("grid_points = lots"); }) == "grid_points");
  CHECK(field_of([] { parse_config("colour = blue"); }) == "colour");
  CHECK(field_of([] { parse_config("schemes = a, q"); }) == "schemes");
  CHECK(field_of([] { parse_config("n_values = 3\n").validate(); }) == "schemes");
  CHECK(field_of([] { parse_config("schemes = a\n").validate(); }) == "n_values");
  CHECK(field_of([] { parse_config("schemes = a\nn_values = 0").validate(); }) == "n_values");
  CHECK(field_of([] { parse_config("schemes = a\nn_values = 2\ngamma_d = -1").validate(); }) == "gamma_d");
  CHECK(field_of([] { parse_config("schemes = a\nn_values = 2\ngamma_d = 0.1\nbackend = dicke").validate(); }) ==
        "backend");
  CHECK(field_of([] { parse_config("schemes = a\nn_values = 2\ngrid_points = 10").validate(); }) == "grid_points");
  CHECK(field_of([] { parse_config("schemes = a\nn_values = 2\nrefine_tol = 0").validate(); }) == "refine_tol");
  CHECK(field_of([] { parse_config("just text"); }).find("<config>:1") == 0);
  CHECK_THROWS_AS(load_config("/nonexistent/lgsim.cfg"), IoError);
}

TEST_CASE("parallel runner is deterministic and reports the lowest failing index") {
  std::vector<int> out(100);
  run_parallel(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  try {
    run_parallel(50, 4, [](std::size_t i) {
      if (i == 17 || i == 33) throw std::runtime_error("job " + std::to_string(i));
    });
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "job 17");
  }
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 2.887303, -1e-300, 0.0}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("curve command") {
  const fs::path out = scratch_dir("curve");
  RunConfig c = base_config(out);
  c.schemes = all_schemes();
  c.curve_points = 60;
  c.grid_points = 128;
  const CommandResult r = cmd_curve(c);
  REQUIRE(r.files.size() == 6);
  CHECK(fs::exists(out / "curve_central-vn_N1.csv"));
  CHECK(header_of(r.files[0]) == "omega_tau,K,C21,C32,C31");
  // One qubit: every scheme writes the same K column, byte for byte.
  const auto first = rows_of(r.files[0]);
  CHECK(first.size() == 60);
  for (const auto& f : r.files) {
    const auto rows = rows_of(f);
    REQUIRE(rows.size() == first.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i][1] == first[i][1]);
  }
  SUBCASE("determinism") {
    const std::string before = slurp(r.files[3]);
    RunConfig again = c;
    again.workers = 1;
    cmd_curve(again);
    CHECK(slurp(r.files[3]) == before);
  }
  SUBCASE("extreme scheme matches the closed form") {
    RunConfig d = base_config(out);
    d.schemes = {SchemeId::extreme_vn};
    d.n_values = {6};
    d.curve_points = 40;
    d.grid_points = 128;
    const auto rows = rows_of(cmd_curve(d).files.at(0));
    for (const auto& row : rows) CHECK(std::stod(row[1]) == doctest::Approx(k_extreme_closed_form(3.0, std::stod(row[0]))).epsilon(1e-8));
  }
  CHECK_THROWS_AS(cmd_curve(RunConfig{}), ConfigError);
}

TEST_CASE("kmax sweep command") {
  const fs::path out = scratch_dir("kmax");
  RunConfig c = base_config(out);
  c.schemes = {SchemeId::single_state_vn, SchemeId::central_vn};
  c.n_values = {2, 4, 8, 16};
  c.grid_points = 256;
  const auto r = cmd_kmax_sweep(c);
  CHECK(header_of(r.files.at(0)) == "scheme,n_qubits,noise_tag,k_max,omega_tau_max,backend");
  const auto rows = rows_of(r.files.at(0));
  REQUIRE(rows.size() == 8);
  CHECK(rows[0][0] == "single-state-vn");
  CHECK(rows[0][2] == "noise-free");
  CHECK(rows[0][5] == "dicke");
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::stod(rows[i][3]) > std::stod(rows[i - 1][3]) - 1e-6);
  SUBCASE("memory guard through AUTO") {
    RunConfig g = base_config(out);
    g.noise.gamma_d = 0.1;
    g.n_values = {11};
    CHECK_THROWS_AS(cmd_kmax_sweep(g), MemoryGuardError);
  }
}

TEST_CASE("disconnectivity command") {
  const fs::path out = scratch_dir("disc");
  RunConfig c = base_config(out);
  c.schemes = {SchemeId::extreme_vn, SchemeId::parity_vn, SchemeId::central_vn};
  c.n_values = {7, 10};
  const auto rows = rows_of(cmd_disconnectivity(c).files.at(0));
  REQUIRE(rows.size() == 6);
  CHECK(rows[1][0] == "extreme-vn");
  CHECK(std::stod(rows[1][2]) == 10);
  CHECK(std::stod(rows[1][3]) == 10);
  CHECK(std::stod(rows[1][4]) == 10);
  CHECK(std::stod(rows[3][4]) == 0.0);  // parity, N = 10
  CHECK(std::stod(rows[4][4]) == 4.0);  // central, N = 7
  c.schemes = {SchemeId::normalized_jz_vn};
  CHECK(field_of([&] { cmd_disconnectivity(c); }) == "schemes");
}

TEST_CASE("plot script") {
  const fs::path out = scratch_dir("plot");
  RunConfig c = base_config(out);
  c.schemes = all_schemes();
  c.n_values = {2};
  c.curve_points = 20;
  c.grid_points = 64;
  const auto curves = cmd_curve(c).files;
  SUBCASE("single curve, one panel") {
    const std::string s = plot_script({curves[0]});
    CHECK(s.find("multiplot") == std::string::npos);
    CHECK(s.find("dashtype 2") != std::string::npos);
    const CsvSummary info = inspect_csv(curves[0]);
    CHECK(info.kind == CsvKind::curve);
    CHECK(info.scheme == "central-vn");
    CHECK(info.n_qubits == 2);
    CHECK(info.rows == 20);
  }
  SUBCASE("six schemes, 2 x 3") {
    const std::string s = plot_script(curves);
    CHECK(s.find("layout 2,3") != std::string::npos);
  }
  SUBCASE("K_max sweep panel") {
    c.schemes = {SchemeId::central_vn, SchemeId::extreme_vn};
    c.n_values = {1, 2};
    const auto sweep = cmd_kmax_sweep(c).files.at(0);
    const CsvSummary info = inspect_csv(sweep);
    CHECK(info.kind == CsvKind::kmax_sweep);
    CHECK(info.schemes.size() == 2);
    const fs::path script = cmd_plot_script({sweep}, out / "plot.gp");
    CHECK(fs::exists(script));
  }
  SUBCASE("missing and malformed files") {
    try {
      plot_script({curves[0], out / "nope.csv"});
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("nope.csv") != std::string::npos);
    }
    std::ofstream(out / "bad.csv") << "a,b\n1,2\n";
    CHECK_THROWS_AS(inspect_csv(out / "bad.csv"), InvalidArgument);
  }
}
