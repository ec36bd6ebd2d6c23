#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lgsim {

enum class ValidationLevel { fast, full };
enum class CheckStatus { pass, fail, deviation };

std::string_view check_status_name(CheckStatus s);
ValidationLevel parse_validation_level(std::string_view text);

struct ValidationOptions {
  ValidationLevel level = ValidationLevel::fast;
  // Fault injection: scales J- by 1 + 1e-3 before the Casimir check.
  bool corrupt_jminus = false;
};

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::pass;
  double seconds = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  // Deviations are published claims this model does not reproduce; they are
  // reported but do not fail the run.
  bool ok() const;
  std::size_t count(CheckStatus s) const;
};

/// Runs the oracle suite, streaming one line per finished check:
///   CHECK <id> <PASS|FAIL|DEVIATION> <seconds> <detail>
ValidationReport run_validation(const ValidationOptions& options,
                                const std::function<void(std::string_view)>& sink = {});

std::string format_check_line(const CheckResult& r);

}  // namespace lgsim
