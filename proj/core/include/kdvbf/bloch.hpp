#pragma once

#include <Eigen/Dense>
#include <complex>

#include "kdvbf/fourier.hpp"
#include "kdvbf/orbit.hpp"

namespace kdvbf {

/// Fourier data (period pi, basis e^{2iky}) of the rescaled linearization
/// coefficients a1(y) = c - alpha*phi, a0(y) = r(1 - 2 phi) - alpha*phi',
/// with y = pi x / L. Indexed -2M..2M; for these (linear in phi) coefficients
/// everything beyond |k| = M is transform noise at roundoff level.
struct CoeffSeries {
  fourier::cvec a1_hat;
  fourier::cvec a0_hat;
  double profile_eps = 0.0;
};

/// Truncated Hill matrix of the Bloch operator at one Floquet exponent theta,
/// in the basis e^{2iny}, n = -N..N, with mu_n = theta + 2*pi*n:
///   entry(m,n) = delta_mn [ -(i mu_n)^3 + L (i mu_n)^2 ]
///              + L^2 a1_hat[m-n] (i mu_n) + L^3 a0_hat[m-n].
/// Eigenvalues are the rescaled spectral parameter; scale = L^3 maps back.
struct BlochMatrix {
  double theta = 0.0;
  int N = 0;
  Eigen::MatrixXcd entries;
  double scale = 0.0;  // L^3
  double eps = 0.0;
};

/// Second-order perturbation data of the Bloch family around the constant
/// coefficient operator, all scaled by sqrt(eps):
///   b2 = (L - L0)/sqrt(eps),
///   b1 = (L^2 a1(y) - L0^2 c0)/sqrt(eps),  b0 = (L^3 a0(y) - L0^3 r)/sqrt(eps).
struct PerturbationSplit {
  double b2 = 0.0;
  fourier::cvec b1_hat;
  fourier::cvec b0_hat;
  double sqrt_eps = 0.0;
};

/// Collocates the linearized coefficients on the 4M profile grid and returns
/// their Fourier data on the rescaled period-pi domain.
CoeffSeries linearized_coeffs(const WaveProfile& profile);

/// Closed-form series of the eps = 0 (zero profile) coefficients:
/// a1 = c0 and a0 = r exactly, all other modes exactly zero.
CoeffSeries constant_coeff_series(const Params& params, int M);

/// Assembles the Hill matrix; throws ThetaOutOfRange unless theta in (-pi, pi],
/// requires N >= 4. Coefficients outside the stored range count as zero.
BlochMatrix assemble_bloch(double theta, const CoeffSeries& coeffs, double period, int N);

/// Constant-coefficient operator at truncation N (exactly diagonal).
BlochMatrix assemble_unperturbed(double theta, const Params& params, int N);

/// Matrix of the first-order perturbation operator
///   b2 (i theta + pi d_y)^2 + b1(y)(i theta + pi d_y) + b0(y).
Eigen::MatrixXcd assemble_perturbation(double theta, const PerturbationSplit& split, int N);

PerturbationSplit perturbation_split(const WaveProfile& profile);

/// Symbol of the constant-coefficient Bloch operator on e^{i mu y'} modes:
///   -(i mu)^3 + L0 (i mu)^2 + L0^2 c0 (i mu) + L0^3 r,  мu = theta + 2 pi n.
std::complex<double> bloch_symbol(double mu, const Params& params);

/// Undoes the Bloch transform: v(x) = e^{i theta x / L} w(pi x / L) for a
/// period-pi eigenvector w given by centered coefficients (basis e^{2iny}).
/// Returns the m-th derivative at x.
std::complex<double> quasi_periodic_eval(const fourier::cvec& eigvec, double theta, double period,
                                         double x, int m = 0);

/// Samples of v on the n_samples+1 uniform grid points covering [0, L]
/// (both endpoints included, so the quasi-periodic boundary pair is visible).
std::vector<std::complex<double>> quasi_periodic_reconstruct(const fourier::cvec& eigvec,
                                                             double theta, double period,
                                                             int n_samples);

}  // namespace kdvbf
