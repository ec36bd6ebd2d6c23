#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "errors.hpp"

namespace lgsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("'" + std::string(s) + "' is not an integer");
  return v;
}

double to_double(std::string_view s) {
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size()) throw InvalidArgument("'" + str + "' is not a number");
  return v;
}

template <class F>
void field(std::string_view key, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(key), e.what());
  }
}

std::vector<SchemeId> parse_schemes(std::string_view value) {
  std::vector<SchemeId> out;
  for (auto item : split(value, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      const auto& all = all_schemes();
      out.insert(out.end(), all.begin(), all.end());
    } else {
      out.push_back(parse_scheme(item));
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "schemes",     "n_values",   "gamma_d",  "gamma_l",    "gamma_D_coll",  "gamma_L_coll",
      "backend",     "grid_points", "curve_points", "refine_tol", "boundary", "output_dir",
      "workers",     "full_space_cap"};
  return keys;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int a = to_int(trim(item.substr(0, dots))), b = to_int(trim(item.substr(dots + 2)));
    if (b < a) throw InvalidArgument("range " + std::string(item) + " is descending");
    if (b - a > 100000) throw InvalidArgument("range " + std::string(item) + " is too long");
    for (int v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  field(key, [&] {
    if (key == "schemes") schemes = parse_schemes(value);
    else if (key == "n_values") n_values = parse_int_list(value);
    else if (key == "gamma_d") noise.gamma_d = to_double(value);
    else if (key == "gamma_l") noise.gamma_l = to_double(value);
    else if (key == "gamma_D_coll") noise.Gamma_d = to_double(value);
    else if (key == "gamma_L_coll") noise.Gamma_l = to_double(value);
    else if (key == "backend") backend = parse_backend(value);
    else if (key == "grid_points") grid_points = to_int(value);
    else if (key == "curve_points") curve_points = to_int(value);
    else if (key == "refine_tol") refine_tol = to_double(value);
    else if (key == "boundary") boundary = parse_boundary(value);
    else if (key == "output_dir") output_dir = std::string(value);
    else if (key == "workers") workers = to_int(value);
    else if (key == "full_space_cap") full_space_cap = to_int(value);
    else throw ConfigError(std::string(key), "unknown key");
  });
}

void RunConfig::append(std::string_view key, std::string_view value) {
  field(key, [&] {
    if (key == "schemes") {
      const auto more = parse_schemes(value);
      schemes.insert(schemes.end(), more.begin(), more.end());
    } else if (key == "n_values") {
      const auto more = parse_int_list(value);
      n_values.insert(n_values.end(), more.begin(), more.end());
    } else {
      throw ConfigError(std::string(key), "not a list key");
    }
  });
}

void RunConfig::validate() const {
  if (schemes.empty()) throw ConfigError("schemes", "at least one scheme is required");
  if (n_values.empty()) throw ConfigError("n_values", "at least one N is required");
  for (int n : n_values)
    if (n < 1) throw ConfigError("n_values", "N = " + std::to_string(n) + " must be >= 1");
  const std::pair<const char*, double> rates[] = {{"gamma_d", noise.gamma_d},
                                                  {"gamma_l", noise.gamma_l},
                                                  {"gamma_D_coll", noise.Gamma_d},
                                                  {"gamma_L_coll", noise.Gamma_l}};
  for (const auto& [name, v] : rates)
    if (!std::isfinite(v) || v < 0.0) throw ConfigError(name, "rate must be finite and >= 0");
  if (backend == BackendChoice::dicke && noise.has_individual())
    throw ConfigError("backend", "individual noise (gamma_d, gamma_l) requires backend = full or auto");
  if (grid_points != 0 && grid_points < 64) throw ConfigError("grid_points", "must be >= 64, or 0 for automatic");
  if (curve_points < 2) throw ConfigError("curve_points", "must be >= 2");
  if (!(refine_tol > 0.0 && refine_tol <= 1e-2)) throw ConfigError("refine_tol", "must lie in (0, 1e-2]");
  if (workers < 0) throw ConfigError("workers", "must be >= 0");
  if (full_space_cap < 1 || full_space_cap > 16) throw ConfigError("full_space_cap", "must lie in 1..16");
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

int RunConfig::resolved_workers() const {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("LGSIM_WORKERS")) {
    try {
      const int v = to_int(trim(env));
      if (v > 0) return v;
    } catch (const Error&) {
    }
    throw ConfigError("LGSIM_WORKERS", "must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SearchOptions RunConfig::search_options() const {
  SearchOptions o;
  o.grid_points = grid_points;
  o.refine_tol = refine_tol;
  return o;
}

RunConfig parse_config(std::string_view text, const std::string& origin) {
  RunConfig cfg;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no), "expected 'key = value'");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string config_to_text(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "schemes = ";
  for (std::size_t i = 0; i < c.schemes.size(); ++i) os << (i ? "," : "") << scheme_name(c.schemes[i]);
  os << "\nn_values = ";
  for (std::size_t i = 0; i < c.n_values.size(); ++i) os << (i ? "," : "") << c.n_values[i];
  os << "\ngamma_d = " << c.noise.gamma_d << "\ngamma_l = " << c.noise.gamma_l
     << "\ngamma_D_coll = " << c.noise.Gamma_d << "\ngamma_L_coll = " << c.noise.Gamma_l
     << "\nbackend = " << backend_choice_name(c.backend) << "\ngrid_points = " << c.grid_points
     << "\ncurve_points = " << c.curve_points << "\nrefine_tol = " << c.refine_tol
     << "\nboundary = " << boundary_name(c.boundary) << "\noutput_dir = " << c.output_dir.string()
     << "\nworkers = " << c.workers << "\nfull_space_cap = " << c.full_space_cap << "\n";
  return os.str();
}

}  // namespace lgsim
