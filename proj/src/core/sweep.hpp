#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace lgsim {

using LineSink = std::function<void(std::string_view)>;

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// 17 significant digits, scientific.
std::string format_number(double v);

/// Runs jobs 0..count-1 on `workers` threads. Results land by index, so the
/// outcome never depends on completion order; the lowest-index failure is
/// rethrown after all workers finish.
void run_parallel(std::size_t count, int workers, const std::function<void(std::size_t)>& job);

/// One CSV per (scheme, N): curve_<scheme>_N<N>.csv.
CommandResult cmd_curve(const RunConfig& config, const LineSink& log = {});
/// kmax_sweep.csv with one row per (scheme, N).
CommandResult cmd_kmax_sweep(const RunConfig& config, const LineSink& log = {});
/// disconnectivity.csv with one row per (scheme, N).
CommandResult cmd_disconnectivity(const RunConfig& config, const LineSink& log = {});

std::string curve_csv(const LGCurve& curve, const RunConfig& config);

}  // namespace lgsim
