#pragma once

#include <complex>
#include <vector>

namespace kdvbf::fourier {

using cvec = std::vector<std::complex<double>>;

/// Coefficient vectors are stored centered: index i holds the coefficient of
/// e^{2*pi*i*k*x/period} with k = i - order, for k = -order .. order.
inline int order(const cvec& coeffs) { return (static_cast<int>(coeffs.size()) - 1) / 2; }

inline const std::complex<double>& at(const cvec& coeffs, int k) {
  return coeffs[static_cast<size_t>(k + order(coeffs))];
}
inline std::complex<double>& at(cvec& coeffs, int k) {
  return coeffs[static_cast<size_t>(k + order(coeffs))];
}

/// Zero coefficient vector holding modes -k_max .. k_max.
cvec zeros(int k_max);

/// Pads (or truncates) to modes -k_max .. k_max.
cvec resize_order(const cvec& coeffs, int k_max);

/// Samples on the uniform grid x_j = j*period/n, j = 0..n-1; requires n > 2*order.
cvec synth(const cvec& coeffs, int n);

/// Real part of synth, for conjugate-symmetric spectra.
std::vector<double> synth_real(const cvec& coeffs, int n);

/// Centered coefficients -k_max .. k_max of uniformly sampled data
/// (inverse of synth when the data is band-limited to k_max < n/2).
cvec analyze(const std::vector<double>& samples, int k_max);
cvec analyze(const cvec& samples, int k_max);

/// Coefficients of the m-th derivative: multiply by (2*pi*i*k/period)^m.
cvec derivative(const cvec& coeffs, double period, int m);

/// Pointwise evaluation of the m-th derivative at x by direct summation.
std::complex<double> eval(const cvec& coeffs, double period, double x, int m = 0);

/// True when coeffs[-k] == conj(coeffs[k]) within tol for all k.
bool conjugate_symmetric(const cvec& coeffs, double tol);

}  // namespace kdvbf::fourier
