#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace hgf::cli {

enum class Command { hermite, norm, bounds, certify, scan, glgrid, covariance };

Command parse_command(const std::string& name);
const char* to_string(Command c);

/// One run of the tool. JSON config files use these member names as keys;
/// zero-valued overrides (half_width, radius, region_half_width) mean "auto".
struct RunConfig {
  Command command = Command::bounds;
  int d = 0;
  std::array<double, 4> matrix{1.0, 0.0, 0.0, 1.0};
  bool matrix_set = false;
  double step = 1.0 / 32.0;
  double half_width = 0.0;
  int K = 64;
  double radius = 0.0;
  double region_half_width = 0.0;
  double region_step = 1.0 / 16.0;
  std::string output;
  std::string format = "json";
  // command-specific
  int n = 0;
  double x = 0.0;
  double dilation = 1.0;
  std::vector<double> t_list;
  double det_max = 1.2;
  int steps = 24;
  unsigned seed = 0;
};

enum ExitCode : int { kOk = 0, kPrecondition = 2, kBudget = 3 };

/// Merges a JSON object into `cfg`; unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// Capacity, Nyquist-guard, budget and field diagnostics; empty means runnable.
std::vector<std::string> validate(const RunConfig& cfg);

/// Executes the configured pipeline. The artifact goes to cfg.output (atomic
/// temp + rename, relative paths resolved under $OUTPUT_DIR) or to `out`; the
/// one-line summary goes to `log`. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Full command-line entry point: flags override values from --config.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& log);

}  // namespace hgf::cli
