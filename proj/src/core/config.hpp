#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fullspace.hpp"

namespace lgsim {

/// Batch-run settings. File format: one `key = value` per line, `#` starts
/// a comment, lists are comma separated and integer lists accept `a..b`.
struct RunConfig {
  std::vector<SchemeId> schemes;
  std::vector<int> n_values;
  NoiseParams noise{};
  BackendChoice backend = BackendChoice::automatic;
  int grid_points = 0;  // 0: max(2000, 20 N) for K_max, 500 for curves
  int curve_points = 500;
  double refine_tol = 1e-6;
  BoundaryPolicy boundary = BoundaryPolicy::m0_minus;
  std::filesystem::path output_dir = ".";
  int workers = 0;  // 0: LGSIM_WORKERS, else hardware concurrency
  int full_space_cap = kFullSpaceCurveCap;

  /// Applies one key; throws ConfigError naming the field.
  void set(std::string_view key, std::string_view value);
  /// Adds to a list key (schemes, n_values) instead of replacing it.
  void append(std::string_view key, std::string_view value);
  /// Throws ConfigError on the first invalid field.
  void validate() const;
  int resolved_workers() const;
  SearchOptions search_options() const;
};

/// All recognised keys, in documentation order.
const std::vector<std::string>& config_keys();

RunConfig parse_config(std::string_view text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Parses `a..b`, `a,b,c` or mixtures thereof.
std::vector<int> parse_int_list(std::string_view text);

/// Canonical `key = value` dump; parse_config(to_text()) round-trips.
std::string config_to_text(const RunConfig& config);

}  // namespace lgsim
