#include "kdvbf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "kdvbf/errors.hpp"
#include "kdvbf/parallel.hpp"

namespace kdvbf {

namespace {

double min_distance(const std::complex<double>& z, const std::vector<std::complex<double>>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : set) best = std::min(best, std::abs(z - w));
  return best;
}

FloquetSpectrum sweep_slices(const CoeffSeries& coeffs, double period, double eps, int n_theta,
                             int N) {
  if (n_theta < 3) throw std::invalid_argument("require n_theta >= 3");

  const std::vector<double> grid = theta_grid(n_theta);
  FloquetSpectrum out;
  out.eps = eps;
  out.period = period;
  out.slices.resize(grid.size());

  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    try {
      out.slices[static_cast<size_t>(i)] = spectrum_slice(grid[static_cast<size_t>(i)], coeffs, period, N);
    } catch (const EigFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw EigFailure(e.what(), grid[static_cast<size_t>(i)]);
    }
  });

  out.max_real = -std::numeric_limits<double>::infinity();
  for (const SpectrumSlice& slice : out.slices) {
    for (size_t k = 0; k < slice.scaled.size(); ++k) {
      if (!slice.kept_mask[k]) continue;
      if (slice.unscaled[k].real() > out.max_real) {
        out.max_real = slice.unscaled[k].real();
        out.argmax_theta = slice.theta;
        out.argmax_scaled = slice.scaled[k];
      }
    }
  }
  out.unstable = out.max_real > 0.0;
  return out;
}

}  // namespace

std::vector<std::complex<double>> eig_dense(const Eigen::MatrixXcd& matrix) {
  if (!matrix.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw EigFailure("complex QR iteration did not converge");
  std::vector<std::complex<double>> values(static_cast<size_t>(matrix.rows()));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) values[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  return values;
}

std::vector<std::complex<double>> eig_dense(const BlochMatrix& matrix) {
  try {
    return eig_dense(matrix.entries);
  } catch (const EigFailure& e) {
    throw EigFailure(e.what(), matrix.theta);
  }
}

EigPairs eig_dense_pairs(const Eigen::MatrixXcd& matrix) {
  if (!matrix.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw EigFailure("complex QR iteration did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectrumSlice spectrum_slice(double theta, const CoeffSeries& coeffs, double period, int N) {
  const BlochMatrix coarse = assemble_bloch(theta, coeffs, period, N);
  const BlochMatrix fine = assemble_bloch(theta, coeffs, period, 2 * N);

  SpectrumSlice slice;
  slice.theta = theta;
  slice.scaled = eig_dense(coarse);
  slice.scaled_fine = eig_dense(fine);
  slice.unscaled.resize(slice.scaled.size());
  slice.kept_mask.resize(slice.scaled.size());
  slice.kept = 0;
  for (size_t k = 0; k < slice.scaled.size(); ++k) {
    slice.unscaled[k] = slice.scaled[k] / coarse.scale;
    const bool keep = min_distance(slice.scaled[k], slice.scaled_fine) <= kTruncationFilterTol;
    slice.kept_mask[k] = keep;
    if (keep) ++slice.kept;
  }
  return slice;
}

std::vector<double> theta_grid(int n) {
  std::vector<double> grid(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    grid[static_cast<size_t>(j)] = -M_PI + 2.0 * M_PI * (j + 1) / n;
  }
  // exact zero and endpoint where the grid hits them
  for (double& t : grid) {
    if (std::abs(t) < 1e-12) t = 0.0;
  }
  grid.back() = M_PI;
  return grid;
}

FloquetSpectrum floquet_sweep(const WaveProfile& profile, int n_theta, int N) {
  const CoeffSeries coeffs = linearized_coeffs(profile);
  return sweep_slices(coeffs, profile.period, profile.eps, n_theta, N);
}

FloquetSpectrum floquet_sweep_constant(const Params& params, int n_theta, int N) {
  const CoeffSeries coeffs = constant_coeff_series(params, std::max(8, N / 2));
  return sweep_slices(coeffs, params.L0, 0.0, n_theta, N);
}

std::vector<ConvergenceRow> convergence_study(const std::vector<WaveProfile>& profiles, int N) {
  for (size_t i = 1; i < profiles.size(); ++i) {
    if (!(profiles[i].eps > profiles[i - 1].eps))
      throw std::invalid_argument("profiles must be sorted by ascending eps");
  }
  std::vector<ConvergenceRow> table;
  table.reserve(profiles.size());
  for (const WaveProfile& profile : profiles) {
    const double target = profile.params.r * profile.params.L0_cubed();
    const CoeffSeries coeffs = linearized_coeffs(profile);
    const BlochMatrix matrix = assemble_bloch(0.0, coeffs, profile.period, N);
    const std::vector<std::complex<double>> values = eig_dense(matrix);
    table.push_back({profile.eps, min_distance({target, 0.0}, values)});
  }
  return table;
}

VerdictReport verdict(const FloquetSpectrum& spectrum) {
  VerdictReport report;
  report.unstable = spectrum.unstable;
  report.eps = spectrum.eps;
  report.max_re_lambda = spectrum.max_real;
  report.argmax_theta = spectrum.argmax_theta;
  report.lambda_scaled = spectrum.argmax_scaled;
  report.n_theta = static_cast<int>(spectrum.slices.size());
  report.total_kept = 0;
  for (const SpectrumSlice& slice : spectrum.slices) report.total_kept += slice.kept;
  return report;
}

std::string describe(const VerdictReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "eps=%g verdict=%s max Re(lambda)=%.10g at theta=%.10g "
                "(scaled %.10g%+.10gi); %d eigenvalues kept over %d theta points, "
                "filter tol %.1e",
                report.eps, report.unstable ? "unstable" : "stable", report.max_re_lambda,
                report.argmax_theta, report.lambda_scaled.real(), report.lambda_scaled.imag(),
                report.total_kept, report.n_theta, report.filter_tol);
  return buf;
}

}  // namespace kdvbf
