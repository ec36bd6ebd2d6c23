#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lgsim {

enum class CsvKind { curve, kmax_sweep };

struct CsvSummary {
  std::filesystem::path path;
  CsvKind kind;
  std::string scheme;             // curve files only
  int n_qubits = 0;               // curve files only
  std::vector<std::string> schemes;  // distinct schemes of a K_max sweep, in file order
  std::size_t rows = 0;
};

/// Reads and checks a CSV written by this tool; throws IoError for a
/// missing path and InvalidArgument (with path and line) when malformed.
CsvSummary inspect_csv(const std::filesystem::path& path);

/// A gnuplot script drawing K vs omega tau (one panel per scheme, 2 x 3 for
/// six schemes) and K_max vs N, each with the classical bound K = 1.
std::string plot_script(const std::vector<std::filesystem::path>& csvs, const std::string& image_stem = "lgsim");

/// Writes plot_script() to `script_path`; returns the path.
std::filesystem::path cmd_plot_script(const std::vector<std::filesystem::path>& csvs,
                                      const std::filesystem::path& script_path);

}  // namespace lgsim
