#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kdvbf/orbit.hpp"
#include "kdvbf/spectrum.hpp"

namespace kdvbf::io {

/// 17-significant-digit decimal rendering (round-trips any double).
std::string fmt17(double value);

/// Compact value rendering for file names, e.g. 0.001 -> "0.001".
std::string fmt_eps(double eps);

/// Self-description prepended (as a "# ..." first line in text outputs, as a
/// leading "meta" object in JSON ones).
struct FileMeta {
  double r = 0.0;
  double alpha = 0.0;
  double eps = 0.0;
  int fourier_M = 0;
  int bloch_N = 0;
  int n_theta = 0;
};

/// Wave profile document {r, alpha, eps, c, period, M, coeffs, residual};
/// coeffs holds component 1 only, [re, im] pairs for k = -M..M ascending.
/// Components 2 and 3 are reconstructed by spectral differentiation on load.
void save_profile(const WaveProfile& profile, const std::filesystem::path& path);
WaveProfile load_profile(const std::filesystem::path& path);

/// Spectrum CSV: comment line, header
/// eps,theta,re_lambda,im_lambda,re_lambda_scaled,im_lambda_scaled,kept_at_2N,
/// one row per kept eigenvalue, LF line endings.
void write_spectrum_csv(const FloquetSpectrum& spectrum, const FileMeta& meta,
                        const std::filesystem::path& path);

struct SpectrumCsvRow {
  double eps, theta, re_lambda, im_lambda, re_lambda_scaled, im_lambda_scaled;
  int kept_at_2N;
};
std::vector<SpectrumCsvRow> read_spectrum_csv(const std::filesystem::path& path);

/// scalings.csv: eps, amplitude, period, residual per converged profile.
void write_scalings_csv(const std::vector<WaveProfile>& family, const FileMeta& meta,
                        const std::filesystem::path& path);

/// Plain-text column data for plots (x y, or x y z ...), "# ..." first line.
void write_columns(const std::vector<std::vector<double>>& columns, const FileMeta& meta,
                   const std::string& column_names, const std::filesystem::path& path);

/// verdicts.json: array of {eps, unstable, max_re_lambda, argmax_theta}.
void write_verdicts_json(const std::vector<VerdictReport>& verdicts, const FileMeta& meta,
                         const std::filesystem::path& path);

}  // namespace kdvbf::io
