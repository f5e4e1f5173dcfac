#pragma once

#include <cmath>

namespace kdvbf {

/// Physical constants of u_t + alpha u u_x + u_xxx = u_xx + r u(1-u), together
/// with the derived quantities of the bifurcation at the origin:
/// critical speed c0 = -r, frequency omega0 = sqrt(r), period L0 = 2*pi/omega0.
struct Params {
  double r = 1.0;
  double alpha = 1.0;
  double c0 = -1.0;
  double omega0 = 1.0;
  double L0 = 2.0 * M_PI;

  /// Validating factory; throws std::invalid_argument unless r > 0 and alpha > 0.
  static Params make(double r, double alpha);

  /// L0^3, evaluated as L0*L0*L0 everywhere so that the unperturbed eigenvalue
  /// r*L0^3 compares bit-for-bit across modules.
  double L0_cubed() const { return L0 * L0 * L0; }
};

/// One point of the profile phase space: (phi, phi', phi'').
struct StateVec {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;

  bool finite() const {
    return std::isfinite(phi1) && std::isfinite(phi2) && std::isfinite(phi3);
  }
};

}  // namespace kdvbf
