#include "kdvbf/orbit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kdvbf/errors.hpp"

namespace kdvbf {

namespace {

using fourier::at;
using fourier::cvec;

constexpr double kEpsCeiling = 0.1;    // continuation cap; beyond it we refuse rather than guess
constexpr double kZeroAmplitude = 1e-12;

// Unknowns of the harmonic-balance system: a_0 (real), a_1..a_M (complex,
// conjugate modes implied) and the period L, flattened into 2M+2 reals.
struct HbState {
  cvec half;  // a_0..a_M at indices 0..M
  double L = 0.0;
};

int unknown_count(int M) { return 2 * M + 2; }

cvec centered_from_half(const cvec& half) {
  const int M = static_cast<int>(half.size()) - 1;
  cvec full = fourier::zeros(M);
  at(full, 0) = half[0].real();
  for (int k = 1; k <= M; ++k) {
    at(full, k) = half[static_cast<size_t>(k)];
    at(full, -k) = std::conj(half[static_cast<size_t>(k)]);
  }
  return full;
}

// Applies the translation xi -> xi + s that makes a_1 real non-negative, so
// every solve starts inside the gauge Im(a_1) = 0.
void rotate_to_gauge(HbState& state) {
  const int M = static_cast<int>(state.half.size()) - 1;
  if (M < 1) return;
  const std::complex<double> a1 = state.half[1];
  if (std::abs(a1) == 0.0) return;
  const double phase = std::arg(a1);
  for (int k = 1; k <= M; ++k) {
    state.half[static_cast<size_t>(k)] *= std::exp(std::complex<double>(0.0, -phase * k));
  }
  state.half[1] = std::complex<double>(std::abs(a1), 0.0);
}

// Complex residual H_k, k = 0..M, of the profile equation projected on the
// Fourier modes:
//   H_k = p(i mu_k) a_k + ((alpha/2)(i mu_k) + r) Q_k,
// with p the characteristic cubic at speed c, mu_k = 2 pi k / L and
// Q = coefficients of phi^2 from collocation on the 4M grid.
struct HbResidual {
  cvec H;          // 0..M
  double sup = 0;  // pointwise residual on the collocation grid
};

HbResidual hb_residual(const HbState& state, double c, const Params& params) {
  const int M = static_cast<int>(state.half.size()) - 1;
  const int n = 4 * M;
  const double L = state.L;
  const cvec full = centered_from_half(state.half);

  const std::vector<double> phi = fourier::synth_real(full, n);
  const std::vector<double> d1 = fourier::synth_real(fourier::derivative(full, L, 1), n);
  const std::vector<double> d2 = fourier::synth_real(fourier::derivative(full, L, 2), n);
  const std::vector<double> d3 = fourier::synth_real(fourier::derivative(full, L, 3), n);

  std::vector<double> sq(phi.size());
  for (size_t j = 0; j < phi.size(); ++j) sq[j] = phi[j] * phi[j];
  const cvec Q = fourier::analyze(sq, 2 * M);

  HbResidual out;
  out.H.resize(static_cast<size_t>(M + 1));
  for (int k = 0; k <= M; ++k) {
    const std::complex<double> z(0.0, 2.0 * M_PI * k / L);
    const std::complex<double> p = z * z * (z - 1.0) - c * z - params.r;
    const std::complex<double> g = 0.5 * params.alpha * z + params.r;
    out.H[static_cast<size_t>(k)] = p * state.half[static_cast<size_t>(k)] + g * at(Q, k);
  }

  out.sup = 0.0;
  for (size_t j = 0; j < phi.size(); ++j) {
    const double R = -c * d1[j] + params.alpha * phi[j] * d1[j] + d3[j] - d2[j] -
                     params.r * phi[j] * (1.0 - phi[j]);
    out.sup = std::max(out.sup, std::abs(R));
  }
  return out;
}

Eigen::VectorXd flatten(const HbResidual& res, const HbState& state) {
  const int M = static_cast<int>(state.half.size()) - 1;
  Eigen::VectorXd f(unknown_count(M));
  f(0) = res.H[0].real();
  for (int k = 1; k <= M; ++k) {
    f(2 * k - 1) = res.H[static_cast<size_t>(k)].real();
    f(2 * k) = res.H[static_cast<size_t>(k)].imag();
  }
  f(2 * M + 1) = state.half[1].imag();  // phase condition
  return f;
}

// Analytic Jacobian of the flattened system. With the full centered spectrum c
// and Q = conv(c, c):
//   dH_k/da_j      = p_k delta_{kj} + 2 g_k c_{k-j}     (Wirtinger)
//   dH_k/dL        = -(z_k/L) [ (3 z_k^2 - 2 z_k - c) a_k + (alpha/2) Q_k ]
// assembled in the real parametrization (a_0, Re a_j, Im a_j, L).
Eigen::MatrixXd hb_jacobian(const HbState& state, double c, const Params& params) {
  const int M = static_cast<int>(state.half.size()) - 1;
  const int n = 4 * M;
  const double L = state.L;
  const cvec full = centered_from_half(state.half);

  const std::vector<double> phi = fourier::synth_real(full, n);
  std::vector<double> sq(phi.size());
  for (size_t j = 0; j < phi.size(); ++j) sq[j] = phi[j] * phi[j];
  const cvec Q = fourier::analyze(sq, 2 * M);

  auto mode = [&](int k) -> std::complex<double> {
    return (std::abs(k) <= M) ? at(full, k) : std::complex<double>(0.0, 0.0);
  };

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(unknown_count(M), unknown_count(M));
  for (int k = 0; k <= M; ++k) {
    const std::complex<double> z(0.0, 2.0 * M_PI * k / L);
    const std::complex<double> p = z * z * (z - 1.0) - c * z - params.r;
    const std::complex<double> g = 0.5 * params.alpha * z + params.r;

    // column for a_0
    std::complex<double> d = (k == 0 ? p : std::complex<double>(0.0, 0.0)) + 2.0 * g * mode(k);
    const int row_re = (k == 0) ? 0 : 2 * k - 1;
    J(row_re, 0) = d.real();
    if (k > 0) J(2 * k, 0) = d.imag();

    // columns for Re a_j, Im a_j
    for (int j = 1; j <= M; ++j) {
      const std::complex<double> conv_m = mode(k - j);
      const std::complex<double> conv_p = mode(k + j);
      std::complex<double> d_re = 2.0 * g * (conv_m + conv_p);
      std::complex<double> d_im = std::complex<double>(0.0, 2.0) * g * (conv_m - conv_p);
      if (j == k) {
        d_re += p;
        d_im += std::complex<double>(0.0, 1.0) * p;
      }
      J(row_re, 2 * j - 1) = d_re.real();
      J(row_re, 2 * j) = d_im.real();
      if (k > 0) {
        J(2 * k, 2 * j - 1) = d_re.imag();
        J(2 * k, 2 * j) = d_im.imag();
      }
    }

    // column for L
    const std::complex<double> dp = (3.0 * z * z - 2.0 * z - c);
    const std::complex<double> dL =
        -(z / L) * (dp * state.half[static_cast<size_t>(k)] + 0.5 * params.alpha * at(Q, k));
    J(row_re, 2 * M + 1) = dL.real();
    if (k > 0) J(2 * k, 2 * M + 1) = dL.imag();
  }
  J(2 * M + 1, 2) = 1.0;  // d(Im a_1)/d(Im a_1)
  return J;
}

void apply_step(HbState& state, const Eigen::VectorXd& dx, double scale) {
  const int M = static_cast<int>(state.half.size()) - 1;
  state.half[0] -= scale * dx(0);
  for (int k = 1; k <= M; ++k) {
    state.half[static_cast<size_t>(k)] -=
        scale * std::complex<double>(dx(2 * k - 1), dx(2 * k));
  }
  state.L -= scale * dx(2 * M + 1);
}

WaveProfile profile_from_state(const HbState& state, double eps, double c, const Params& params,
                               double residual) {
  const int M = static_cast<int>(state.half.size()) - 1;
  WaveProfile out;
  out.params = params;
  out.eps = eps;
  out.c = c;
  out.period = state.L;
  out.M = M;
  out.coeffs[0] = centered_from_half(state.half);
  out.coeffs[1] = fourier::derivative(out.coeffs[0], state.L, 1);
  out.coeffs[2] = fourier::derivative(out.coeffs[1], state.L, 1);
  out.residual = residual;
  return out;
}

}  // namespace

double profile_equation_residual(const cvec& coeffs1, double period, double c,
                                 const Params& params, int n_grid) {
  const std::vector<double> phi = fourier::synth_real(coeffs1, n_grid);
  const std::vector<double> d1 =
      fourier::synth_real(fourier::derivative(coeffs1, period, 1), n_grid);
  const std::vector<double> d2 =
      fourier::synth_real(fourier::derivative(coeffs1, period, 2), n_grid);
  const std::vector<double> d3 =
      fourier::synth_real(fourier::derivative(coeffs1, period, 3), n_grid);
  double sup = 0.0;
  for (int j = 0; j < n_grid; ++j) {
    const double R = -c * d1[j] + params.alpha * phi[j] * d1[j] + d3[j] - d2[j] -
                     params.r * phi[j] * (1.0 - phi[j]);
    sup = std::max(sup, std::abs(R));
  }
  return sup;
}

WaveProfile initial_guess(double eps, const Params& params) {
  if (eps < 0.0) throw std::invalid_argument("eps must be non-negative");
  if (eps > kEpsCeiling) throw std::invalid_argument("eps above continuation ceiling 0.1");

  WaveProfile out;
  out.params = params;
  out.eps = eps;
  out.c = -params.r + eps;
  out.period = 2.0 * M_PI / params.omega0;
  out.M = 1;
  out.coeffs[0] = fourier::zeros(1);
  const double amp = std::sqrt(eps);
  at(out.coeffs[0], 1) = amp;   // 2 sqrt(eps) cos(omega0 xi)
  at(out.coeffs[0], -1) = amp;
  out.coeffs[1] = fourier::derivative(out.coeffs[0], out.period, 1);
  out.coeffs[2] = fourier::derivative(out.coeffs[1], out.period, 1);
  out.residual = profile_equation_residual(out.coeffs[0], out.period, out.c, params, 64);
  return out;
}

WaveProfile solve_orbit(const WaveProfile& guess, int M, double tol, SolveOptions options) {
  if (M < 8) throw std::invalid_argument("require M >= 8");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(guess.period > 0.0)) throw std::invalid_argument("guess period must be positive");

  const Params& params = guess.params;
  const double eps = guess.eps;
  const double c = -params.r + eps;  // held fixed through the iteration

  HbState state;
  const cvec padded = fourier::resize_order(guess.coeffs[0], M);
  state.half.assign(static_cast<size_t>(M + 1), {0.0, 0.0});
  state.half[0] = at(padded, 0).real();
  for (int k = 1; k <= M; ++k) state.half[static_cast<size_t>(k)] = at(padded, k);
  state.L = guess.period;
  rotate_to_gauge(state);

  double guess_amp = 0.0;
  for (const auto& a : state.half) guess_amp = std::max(guess_amp, std::abs(a));
  if (guess_amp == 0.0) throw std::invalid_argument("guess must be nonzero");

  bool converged = false;
  double sup = 0.0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    HbResidual res = hb_residual(state, c, params);
    sup = res.sup;
    if (sup <= tol) {
      converged = true;
      break;
    }

    const Eigen::MatrixXd J = hb_jacobian(state, c, params);
    const Eigen::VectorXd f = flatten(res, state);
    const Eigen::VectorXd dx = Eigen::PartialPivLU<Eigen::MatrixXd>(J).solve(f);
    if (!dx.allFinite()) throw NoConvergence(eps, it, sup);

    // damped update: halve while the pointwise residual would increase
    double scale = 1.0;
    HbState trial = state;
    apply_step(trial, dx, scale);
    double trial_sup = hb_residual(trial, c, params).sup;
    for (int h = 0; h < options.max_halvings && trial_sup > sup; ++h) {
      scale *= 0.5;
      trial = state;
      apply_step(trial, dx, scale);
      trial_sup = hb_residual(trial, c, params).sup;
    }
    state = trial;
  }
  if (!converged) throw NoConvergence(eps, it, sup);

  WaveProfile out = profile_from_state(state, eps, c, params, sup);
  if (amplitude(out) < kZeroAmplitude) throw CollapsedToZero(eps);
  return out;
}

std::vector<WaveProfile> continue_family(const std::vector<double>& eps_grid,
                                         const Params& params, int M, double tol,
                                         SolveOptions options) {
  if (eps_grid.empty()) throw std::invalid_argument("eps grid must be nonempty");
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || eps_grid[i] > kEpsCeiling)
      throw std::invalid_argument("eps values must lie in (0, 0.1]");
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))
      throw std::invalid_argument("eps grid must be ascending");
  }

  std::vector<WaveProfile> family;
  family.reserve(eps_grid.size());
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    WaveProfile guess = family.empty() ? initial_guess(eps_grid[i], params) : family.back();
    guess.eps = eps_grid[i];
    guess.c = -params.r + eps_grid[i];
    family.push_back(solve_orbit(guess, M, tol, options));
  }
  return family;
}

StateVec evaluate_profile(const WaveProfile& profile, double xi) {
  StateVec s;
  s.phi1 = fourier::eval(profile.coeffs[0], profile.period, xi).real();
  s.phi2 = fourier::eval(profile.coeffs[1], profile.period, xi).real();
  s.phi3 = fourier::eval(profile.coeffs[2], profile.period, xi).real();
  return s;
}

double amplitude(const WaveProfile& profile) {
  const int n = std::max(4 * profile.M, 64);
  const std::vector<double> phi = fourier::synth_real(profile.coeffs[0], n);
  double amp = 0.0;
  for (double v : phi) amp = std::max(amp, std::abs(v));
  return amp;
}

}  // namespace kdvbf
