#pragma once

#include <array>
#include <vector>

#include "kdvbf/fourier.hpp"
#include "kdvbf/params.hpp"

namespace kdvbf {

/// One periodic orbit of the profile system: Fourier coefficients of the
/// three components (phi, phi', phi''), fundamental period, speed, and the
/// sup-norm of the profile-equation residual on the collocation grid.
///
/// Components 2 and 3 are spectral derivatives of component 1, and the
/// coefficient vectors are conjugate-symmetric (the profile is real).
struct WaveProfile {
  Params params;
  double eps = 0.0;     // bifurcation parameter, c = -r + eps
  double c = 0.0;
  double period = 0.0;  // L_eps
  int M = 0;            // modes -M..M
  std::array<fourier::cvec, 3> coeffs;
  double residual = 0.0;
};

struct SolveOptions {
  int max_iterations = 50;
  int max_halvings = 8;
};

/// Linear Hopf predictor 2*sqrt(eps)*Re(e^{i*omega0*xi} v) with v the marginal
/// eigenvector (1, i*omega0, -omega0^2) of the origin Jacobian at c0.
/// Accepts eps = 0 (zero profile); requires eps <= 0.1.
WaveProfile initial_guess(double eps, const Params& params);

/// Newton iteration on the harmonic-balance system with unknowns
/// (coefficients 0..M of component 1, period) at fixed speed c = -r + eps.
/// Phase condition Im(a_1) = 0 pins the translation. Nonlinear terms are
/// collocated on a 4M grid (2x zero padding), and the converged profile has
/// pointwise residual <= tol there.
///
/// Throws NoConvergence, or CollapsedToZero when the converged amplitude
/// falls below 1e-12 (an iteration collapsing onto the trivial solution may
/// stop above that threshold if tol is loose; tighten tol to discriminate).
WaveProfile solve_orbit(const WaveProfile& guess, int M, double tol, SolveOptions options = {});

/// Natural-parameter continuation along an ascending eps grid in (0, 0.1]:
/// the smallest eps starts from initial_guess, each subsequent one from the
/// previous solution. Errors propagate tagged with the failing eps.
std::vector<WaveProfile> continue_family(const std::vector<double>& eps_grid,
                                         const Params& params, int M, double tol,
                                         SolveOptions options = {});

/// Fourier synthesis of the three components at xi (L-periodic).
StateVec evaluate_profile(const WaveProfile& profile, double xi);

/// max |phi_1| over the 4M-point collocation grid.
double amplitude(const WaveProfile& profile);

/// Sup-norm of the profile-equation residual of component-1 coefficients on an
/// n-point grid. Exposed for tests and for reporting on unconverged guesses.
double profile_equation_residual(const fourier::cvec& coeffs1, double period, double c,
                                 const Params& params, int n_grid);

}  // namespace kdvbf
