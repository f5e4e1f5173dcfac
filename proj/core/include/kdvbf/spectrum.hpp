#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "kdvbf/bloch.hpp"

namespace kdvbf {

/// Eigenvalues below this N-vs-2N discrepancy count as resolved Floquet
/// spectrum rather than truncation artifacts; sits between spectral-accuracy
/// residuals (~1e-12) and the O(1) drift of spurious modes.
inline constexpr double kTruncationFilterTol = 1e-8;

/// All eigenvalues of the dense complex Hill matrix.
std::vector<std::complex<double>> eig_dense(const Eigen::MatrixXcd& matrix);
std::vector<std::complex<double>> eig_dense(const BlochMatrix& matrix);

struct EigPairs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

/// Eigenvalues and right eigenvectors (for reconstruction and residual checks).
EigPairs eig_dense_pairs(const Eigen::MatrixXcd& matrix);

/// Spectrum at one Floquet exponent. `scaled` are the Hill-matrix eigenvalues,
/// `unscaled` the PDE eigenvalues scaled[k]/L^3, stored consistently.
/// `kept_mask[k]` records whether scaled[k] matched the 2N solve within
/// kTruncationFilterTol; `kept` is the matching count. `scaled_fine` holds the
/// 2N-truncation eigenvalues so the filter can be re-audited afterwards.
struct SpectrumSlice {
  double theta = 0.0;
  std::vector<std::complex<double>> scaled;
  std::vector<std::complex<double>> unscaled;
  std::vector<bool> kept_mask;
  int kept = 0;
  std::vector<std::complex<double>> scaled_fine;
};

/// Union of slices over the theta grid plus the instability verdict data.
struct FloquetSpectrum {
  std::vector<SpectrumSlice> slices;
  double max_real = 0.0;  // max over kept unscaled eigenvalues of Re(lambda)
  bool unstable = false;
  double eps = 0.0;
  double period = 0.0;
  double argmax_theta = 0.0;
  std::complex<double> argmax_scaled;
};

/// Builds one slice from precomputed coefficient data (assemble + eigensolve at
/// N and 2N, then filter).
SpectrumSlice spectrum_slice(double theta, const CoeffSeries& coeffs, double period, int N);

/// Uniform theta grid of n points over (-pi, pi]; contains 0 when n is even.
std::vector<double> theta_grid(int n);

/// Sweeps the Floquet exponent grid; slices are computed in parallel and
/// merged in grid order. Requires n_theta >= 3.
FloquetSpectrum floquet_sweep(const WaveProfile& profile, int n_theta, int N);

/// Same sweep for the eps = 0 constant-coefficient operator.
FloquetSpectrum floquet_sweep_constant(const Params& params, int n_theta, int N);

struct ConvergenceRow {
  double eps = 0.0;
  double distance = 0.0;  // min over theta=0 eigenvalues of |scaled - r L0^3|
};

/// Distance of the theta = 0 spectrum to the unperturbed eigenvalue r*L0^3,
/// per profile; profiles must be sorted by ascending eps.
std::vector<ConvergenceRow> convergence_study(const std::vector<WaveProfile>& profiles, int N);

/// Summary of a sweep for reporting: verdict plus the evidence used.
struct VerdictReport {
  bool unstable = false;
  double eps = 0.0;
  double max_re_lambda = 0.0;  // unscaled
  double argmax_theta = 0.0;
  std::complex<double> lambda_scaled;
  double filter_tol = kTruncationFilterTol;
  int n_theta = 0;
  int total_kept = 0;
};

VerdictReport verdict(const FloquetSpectrum& spectrum);

/// One-line human-readable rendering of the report.
std::string describe(const VerdictReport& report);

}  // namespace kdvbf
