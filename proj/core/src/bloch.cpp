#include "kdvbf/bloch.hpp"

#include <cmath>
#include <stdexcept>

#include "kdvbf/errors.hpp"

namespace kdvbf {

namespace {

using fourier::at;
using fourier::cvec;

std::complex<double> series_entry(const cvec& series, int k) {
  return (std::abs(k) <= fourier::order(series)) ? at(series, k)
                                                 : std::complex<double>(0.0, 0.0);
}

}  // namespace

CoeffSeries linearized_coeffs(const WaveProfile& profile) {
  const int M = profile.M;
  const int n = 4 * M;

  // Pointwise values on the x grid; the rescaling x -> y = pi x / L keeps
  // the mode index, so transforming the x-grid samples directly yields the
  // coefficients of the period-pi functions in the e^{2iky} basis.
  const std::vector<double> phi = fourier::synth_real(profile.coeffs[0], n);
  const std::vector<double> dphi = fourier::synth_real(profile.coeffs[1], n);

  std::vector<double> a1(phi.size()), a0(phi.size());
  for (size_t j = 0; j < phi.size(); ++j) {
    a1[j] = profile.c - profile.params.alpha * phi[j];
    a0[j] = profile.params.r * (1.0 - 2.0 * phi[j]) - profile.params.alpha * dphi[j];
  }

  CoeffSeries out;
  out.a1_hat = fourier::analyze(a1, 2 * M);
  out.a0_hat = fourier::analyze(a0, 2 * M);
  out.profile_eps = profile.eps;
  return out;
}

CoeffSeries constant_coeff_series(const Params& params, int M) {
  CoeffSeries out;
  out.a1_hat = fourier::zeros(2 * M);
  out.a0_hat = fourier::zeros(2 * M);
  at(out.a1_hat, 0) = params.c0;
  at(out.a0_hat, 0) = params.r;
  out.profile_eps = 0.0;
  return out;
}

BlochMatrix assemble_bloch(double theta, const CoeffSeries& coeffs, double period, int N) {
  if (!(theta > -M_PI && theta <= M_PI)) throw ThetaOutOfRange(theta);
  if (N < 4) throw std::invalid_argument("require N >= 4");
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");

  const double L = period;
  const double L2 = L * L;
  const double L3 = L * L * L;
  const int dim = 2 * N + 1;

  BlochMatrix out;
  out.theta = theta;
  out.N = N;
  out.scale = L3;
  out.eps = coeffs.profile_eps;
  out.entries = Eigen::MatrixXcd::Zero(dim, dim);

  for (int col = 0; col < dim; ++col) {
    const int n = col - N;
    const double mu = theta + 2.0 * M_PI * n;
    const std::complex<double> z(0.0, mu);
    const std::complex<double> z2 = z * z;
    for (int row = 0; row < dim; ++row) {
      const int m = row - N;
      std::complex<double> entry =
          L2 * series_entry(coeffs.a1_hat, m - n) * z + L3 * series_entry(coeffs.a0_hat, m - n);
      if (m == n) entry += -(z2 * z) + L * z2;
      out.entries(row, col) = entry;
    }
  }
  return out;
}

BlochMatrix assemble_unperturbed(double theta, const Params& params, int N) {
  if (!(theta > -M_PI && theta <= M_PI)) throw ThetaOutOfRange(theta);
  if (N < 4) throw std::invalid_argument("require N >= 4");

  const int dim = 2 * N + 1;
  BlochMatrix out;
  out.theta = theta;
  out.N = N;
  out.scale = params.L0_cubed();
  out.eps = 0.0;
  out.entries = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    out.entries(col, col) = bloch_symbol(theta + 2.0 * M_PI * (col - N), params);
  }
  return out;
}

Eigen::MatrixXcd assemble_perturbation(double theta, const PerturbationSplit& split, int N) {
  if (!(theta > -M_PI && theta <= M_PI)) throw ThetaOutOfRange(theta);
  const int dim = 2 * N + 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int n = col - N;
    const std::complex<double> z(0.0, theta + 2.0 * M_PI * n);
    for (int row = 0; row < dim; ++row) {
      const int m = row - N;
      std::complex<double> entry =
          series_entry(split.b1_hat, m - n) * z + series_entry(split.b0_hat, m - n);
      if (m == n) entry += split.b2 * z * z;
      out(row, col) = entry;
    }
  }
  return out;
}

PerturbationSplit perturbation_split(const WaveProfile& profile) {
  if (!(profile.eps > 0.0)) throw std::invalid_argument("perturbation split needs eps > 0");

  const CoeffSeries coeffs = linearized_coeffs(profile);
  const Params& params = profile.params;
  const double L = profile.period;
  const double L2 = L * L;
  const double L3 = L * L * L;
  const double s = std::sqrt(profile.eps);

  PerturbationSplit out;
  out.sqrt_eps = s;
  out.b2 = (L - params.L0) / s;
  out.b1_hat = fourier::zeros(fourier::order(coeffs.a1_hat));
  out.b0_hat = fourier::zeros(fourier::order(coeffs.a0_hat));
  const int K = fourier::order(coeffs.a1_hat);
  for (int k = -K; k <= K; ++k) {
    std::complex<double> num1 = L2 * at(coeffs.a1_hat, k);
    std::complex<double> num0 = L3 * at(coeffs.a0_hat, k);
    if (k == 0) {
      num1 -= params.L0 * params.L0 * params.c0;
      num0 -= params.L0_cubed() * params.r;
    }
    at(out.b1_hat, k) = num1 / s;
    at(out.b0_hat, k) = num0 / s;
  }
  return out;
}

std::complex<double> bloch_symbol(double mu, const Params& params) {
  const std::complex<double> z(0.0, mu);
  const std::complex<double> z2 = z * z;
  return -(z2 * z) + params.L0 * z2 + params.L0 * params.L0 * params.c0 * z +
         params.L0_cubed() * params.r;
}

std::complex<double> quasi_periodic_eval(const cvec& eigvec, double theta, double period,
                                         double x, int m) {
  // v(x) = sum_n w_n e^{i (theta + 2 pi n) x / L}; the m-th derivative weights
  // each mode by (i mu_n / L)^m.
  const int N = fourier::order(eigvec);
  std::complex<double> sum(0.0, 0.0);
  for (int n = -N; n <= N; ++n) {
    const double mu = theta + 2.0 * M_PI * n;
    const std::complex<double> z(0.0, mu / period);
    std::complex<double> factor(1.0, 0.0);
    for (int j = 0; j < m; ++j) factor *= z;
    sum += at(eigvec, n) * factor * std::exp(std::complex<double>(0.0, mu * x / period));
  }
  return sum;
}

std::vector<std::complex<double>> quasi_periodic_reconstruct(const cvec& eigvec, double theta,
                                                             double period, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample interval");
  std::vector<std::complex<double>> out(static_cast<size_t>(n_samples) + 1);
  for (int j = 0; j <= n_samples; ++j) {
    out[static_cast<size_t>(j)] =
        quasi_periodic_eval(eigvec, theta, period, period * j / n_samples);
  }
  return out;
}

}  // namespace kdvbf
