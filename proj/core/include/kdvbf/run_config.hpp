#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kdvbf {

/// Batch-driver configuration: defaults, overridden by a flat key=value file,
/// overridden in turn by command-line flags.
struct RunConfig {
  double r = 1.0;
  double alpha = 1.0;
  std::vector<double> eps_grid = {0.001, 0.002, 0.004, 0.008, 0.016};
  int n_theta = 64;
  int fourier_M = 32;
  int bloch_N = 24;
  double tol = 1e-10;
  std::string out_dir = "out";
};

/// Optional-field mirror of RunConfig used to layer file and flag overrides.
struct RunConfigOverrides {
  std::optional<double> r, alpha, tol;
  std::optional<std::vector<double>> eps_grid;
  std::optional<int> n_theta, fourier_M, bloch_N;
  std::optional<std::string> out_dir;
};

/// Parses "key = value" lines ('#' starts a comment). Recognized keys:
/// r, alpha, eps_grid (comma separated), n_theta, fourier_m, bloch_n, tol,
/// out_dir. Unknown keys raise std::invalid_argument.
RunConfigOverrides parse_config_file(const std::filesystem::path& path);

void apply(const RunConfigOverrides& overrides, RunConfig& config);

/// Comma-separated list of doubles, e.g. "0.001,0.002".
std::vector<double> parse_eps_list(const std::string& text);

/// Throws std::invalid_argument on violated invariants (positivity, ascending
/// eps grid, sizes). Does not touch the filesystem.
void validate(const RunConfig& config);

/// Creates out_dir if needed and probes it for writability; throws on failure.
void ensure_out_dir(const RunConfig& config);

}  // namespace kdvbf
