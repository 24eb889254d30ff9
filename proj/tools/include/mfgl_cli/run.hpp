#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfgl_cli/report.hpp"

namespace mfgl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitAuditFailed = 2;

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string input_path;
  std::string out_path;
  Format format = Format::json;
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  double tol = 1e-10;
  double damping = 0.5;
  int max_iter = 10000;
  double lambda = 1.0;
  std::vector<double> lambda_grid;
  double epsilon = 0.2;
  std::optional<double> t;
  double delta = 0.05;
  int max_n = 20;
  std::int64_t transport_max_states = 256;
  std::string suite = "all";
  int tilts = 20;
  int trials = 10000;
  bool timings = false;
};

/// Throws InvalidArgument when a field is out of range.
void validate(const RunConfig& cfg);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

struct RunOutcome {
  int exit_code = kExitOk;
  Report report;
  /// Messages for stderr.
  std::string diagnostic;
};

/// Executes the command without writing anything.
RunOutcome execute(const RunConfig& cfg);

/// execute, then serialize to cfg.out_path (atomically) or stdout.
int run(const RunConfig& cfg);

/// Parses argv (with MFGL_* environment fallbacks) and calls run.
int cli_main(int argc, char** argv);

}  // namespace mfgl::cli
