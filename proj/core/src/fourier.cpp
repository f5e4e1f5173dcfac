#include "kdvbf/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

namespace kdvbf::fourier {

namespace {

// Packs a centered spectrum into FFT bin order (bin k = coefficient of
// e^{2*pi*i*k*j/n}, negative k wrapped to n+k).
cvec pack_bins(const cvec& coeffs, int n) {
  const int k_max = order(coeffs);
  if (n <= 2 * k_max) throw std::invalid_argument("grid too coarse for spectrum order");
  cvec bins(static_cast<size_t>(n), {0.0, 0.0});
  bins[0] = at(coeffs, 0);
  for (int k = 1; k <= k_max; ++k) {
    bins[static_cast<size_t>(k)] = at(coeffs, k);
    bins[static_cast<size_t>(n - k)] = at(coeffs, -k);
  }
  return bins;
}

cvec unpack_bins(const cvec& bins, int k_max) {
  const int n = static_cast<int>(bins.size());
  // 2*k_max == n is allowed: modes +-k_max then share the Nyquist bin.
  if (2 * k_max > n) throw std::invalid_argument("requested order exceeds grid resolution");
  cvec coeffs = zeros(k_max);
  at(coeffs, 0) = bins[0];
  for (int k = 1; k <= k_max; ++k) {
    at(coeffs, k) = bins[static_cast<size_t>(k)];
    at(coeffs, -k) = bins[static_cast<size_t>(n - k)];
  }
  return coeffs;
}

}  // namespace

cvec zeros(int k_max) { return cvec(static_cast<size_t>(2 * k_max + 1), {0.0, 0.0}); }

cvec resize_order(const cvec& coeffs, int k_max) {
  cvec out = zeros(k_max);
  const int copy = std::min(k_max, order(coeffs));
  for (int k = -copy; k <= copy; ++k) at(out, k) = at(coeffs, k);
  return out;
}

cvec synth(const cvec& coeffs, int n) {
  cvec bins = pack_bins(coeffs, n);
  Eigen::FFT<double> fft;
  cvec samples;
  fft.inv(samples, bins);  // (1/n) sum bins e^{+2 pi i j k / n}
  for (auto& s : samples) s *= static_cast<double>(n);
  return samples;
}

std::vector<double> synth_real(const cvec& coeffs, int n) {
  const cvec samples = synth(coeffs, n);
  std::vector<double> out(samples.size());
  for (size_t j = 0; j < samples.size(); ++j) out[j] = samples[j].real();
  return out;
}

cvec analyze(const cvec& samples, int k_max) {
  Eigen::FFT<double> fft;
  cvec bins;
  fft.fwd(bins, samples);
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (auto& b : bins) b *= inv_n;
  return unpack_bins(bins, k_max);
}

cvec analyze(const std::vector<double>& samples, int k_max) {
  cvec tmp(samples.size());
  for (size_t j = 0; j < samples.size(); ++j) tmp[j] = samples[j];
  return analyze(tmp, k_max);
}

cvec derivative(const cvec& coeffs, double period, int m) {
  const int k_max = order(coeffs);
  cvec out = coeffs;
  for (int k = -k_max; k <= k_max; ++k) {
    const std::complex<double> z(0.0, 2.0 * M_PI * k / period);
    std::complex<double> factor(1.0, 0.0);
    for (int j = 0; j < m; ++j) factor *= z;
    at(out, k) *= factor;
  }
  return out;
}

std::complex<double> eval(const cvec& coeffs, double period, double x, int m) {
  const int k_max = order(coeffs);
  std::complex<double> sum(0.0, 0.0);
  for (int k = -k_max; k <= k_max; ++k) {
    const std::complex<double> z(0.0, 2.0 * M_PI * k / period);
    std::complex<double> factor(1.0, 0.0);
    for (int j = 0; j < m; ++j) factor *= z;
    sum += at(coeffs, k) * factor * std::exp(std::complex<double>(0.0, 2.0 * M_PI * k * x / period));
  }
  return sum;
}

bool conjugate_symmetric(const cvec& coeffs, double tol) {
  const int k_max = order(coeffs);
  for (int k = 0; k <= k_max; ++k) {
    if (std::abs(at(coeffs, k) - std::conj(at(coeffs, -k))) > tol) return false;
  }
  return true;
}

}  // namespace kdvbf::fourier
