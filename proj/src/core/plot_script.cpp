#include "plot_script.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"
#include "measurement.hpp"

namespace lgsim {

namespace {

const char* kCurveHeader = "omega_tau,K,C21,C32,C31";
const char* kKmaxHeader = "scheme,n_qubits,noise_tag,k_max,omega_tau_max,backend";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

[[noreturn]] void malformed(const std::filesystem::path& p, int line, const std::string& why) {
  throw InvalidArgument("malformed CSV " + p.string() + ":" + std::to_string(line) + ": " + why);
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("''") : std::string(1, c);
  return out + "'";
}

}  // namespace

CsvSummary inspect_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path.string());
  CsvSummary s{path, CsvKind::curve, "", 0, {}, 0};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# scheme = ", 0) == 0) s.scheme = line.substr(11);
      if (line.rfind("# n_qubits = ", 0) == 0) s.n_qubits = std::atoi(line.c_str() + 13);
      continue;
    }
    if (!have_header) {
      if (line == kCurveHeader)
        s.kind = CsvKind::curve;
      else if (line == kKmaxHeader)
        s.kind = CsvKind::kmax_sweep;
      else
        malformed(path, line_no, "unrecognised header '" + line + "'");
      have_header = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != (s.kind == CsvKind::curve ? 5u : 6u)) malformed(path, line_no, "wrong field count");
    if (s.kind == CsvKind::curve) {
      for (const auto& v : f)
        if (!is_number(v)) malformed(path, line_no, "non-numeric field '" + v + "'");
    } else {
      parse_scheme(f[0]);
      if (!is_number(f[1]) || !is_number(f[3]) || !is_number(f[4])) malformed(path, line_no, "non-numeric field");
      if (std::find(s.schemes.begin(), s.schemes.end(), f[0]) == s.schemes.end()) s.schemes.push_back(f[0]);
    }
    ++s.rows;
  }
  if (!have_header) malformed(path, line_no, "no header row");
  if (s.rows == 0) malformed(path, line_no, "no data rows");
  if (s.kind == CsvKind::curve && (s.scheme.empty() || s.n_qubits < 1))
    malformed(path, line_no, "missing '# scheme' or '# n_qubits' provenance");
  return s;
}

std::string plot_script(const std::vector<std::filesystem::path>& csvs, const std::string& image_stem) {
  if (csvs.empty()) throw InvalidArgument("plot-script needs at least one CSV file");
  std::vector<CsvSummary> curves, sweeps;
  for (const auto& p : csvs) {
    CsvSummary s = inspect_csv(p);
    (s.kind == CsvKind::curve ? curves : sweeps).push_back(std::move(s));
  }

  std::ostringstream os;
  os << "# gnuplot script generated by lgsim\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set key top right\n"
     << "set grid\n";

  auto layout = [](std::size_t panels) -> std::pair<int, int> {
    if (panels <= 1) return {1, 1};
    if (panels <= 3) return {1, static_cast<int>(panels)};
    if (panels <= 6) return {2, 3};
    const int cols = 3;
    return {static_cast<int>((panels + cols - 1) / cols), cols};
  };
  auto begin_page = [&](const std::string& suffix, std::size_t panels, const std::string& title) {
    const auto [rows, cols] = layout(panels);
    os << "\nset terminal pngcairo size " << 480 * cols << "," << 400 * rows << "\n"
       << "set output " << quote(image_stem + suffix + ".png") << "\n";
    if (panels > 1) os << "set multiplot layout " << rows << "," << cols << " title " << quote(title) << "\n";
  };
  auto end_page = [&](std::size_t panels) {
    if (panels > 1) os << "unset multiplot\n";
    os << "unset output\n";
  };

  if (!curves.empty()) {
    // One panel per scheme, schemes in canonical order, all N in each panel.
    std::map<int, std::vector<const CsvSummary*>> by_scheme;
    for (const auto& c : curves) by_scheme[static_cast<int>(parse_scheme(c.scheme))].push_back(&c);
    begin_page("_curves", by_scheme.size(), "K vs Omega tau");
    for (const auto& [id, files] : by_scheme) {
      os << "set title " << quote(std::string(scheme_name(static_cast<SchemeId>(id)))) << "\n"
         << "set xlabel 'Omega tau'\nset ylabel 'K'\nset xrange [0:pi]\n"
         << "plot ";
      for (const CsvSummary* f : files)
        os << quote(f->path.string()) << " using 1:2 with lines title " << quote("N = " + std::to_string(f->n_qubits))
           << ", ";
      os << "1 with lines dashtype 2 lc rgb 'black' title 'K = 1'\n";
    }
    end_page(by_scheme.size());
  }

  if (!sweeps.empty()) {
    std::vector<std::string> schemes;
    for (const auto& s : sweeps)
      for (const auto& id : s.schemes)
        if (std::find(schemes.begin(), schemes.end(), id) == schemes.end()) schemes.push_back(id);
    begin_page("_kmax", schemes.size(), "K_max vs N");
    for (const auto& id : schemes) {
      os << "set title " << quote(id) << "\n"
         << "set xlabel 'N'\nset ylabel 'K_max'\nset autoscale x\n"
         << "plot ";
      for (const auto& s : sweeps)
        os << quote(s.path.string()) << " using 2:(stringcolumn(1) eq " << quote(id)
           << " ? $4 : 1/0) with linespoints title " << quote(s.path.stem().string()) << ", ";
      os << "1 with lines dashtype 2 lc rgb 'black' title 'K = 1'\n";
    }
    end_page(schemes.size());
  }
  return os.str();
}

std::filesystem::path cmd_plot_script(const std::vector<std::filesystem::path>& csvs,
                                      const std::filesystem::path& script_path) {
  std::string stem = script_path.stem().string();
  const std::filesystem::path image = script_path.parent_path() / (stem.empty() ? "lgsim" : stem);
  const std::string script = plot_script(csvs, image.string());
  if (script_path.has_parent_path()) std::filesystem::create_directories(script_path.parent_path());
  std::ofstream out(script_path);
  if (!out) throw IoError("cannot write plot script " + script_path.string());
  out << script;
  return script_path;
}

}  // namespace lgsim
