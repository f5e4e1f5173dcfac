#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "kdvbf/params.hpp"

namespace kdvbf {

/// Roots of the characteristic cubic p(lambda, c) = lambda^2(lambda - 1) - c lambda - r,
/// sorted descending by (Re, Im). Non-real roots come in conjugate pairs.
struct CubicRootSet {
  std::array<std::complex<double>, 3> roots;
};

/// Evaluates p(lambda, c) = lambda^2 (lambda - 1) - c lambda - r.
std::complex<double> char_poly_eval(std::complex<double> lambda, double c, const Params& params);

/// All three roots of p(., c), computed as the eigenvalues of the 3x3 companion
/// matrix (which is exactly the Jacobian of the profile field at the origin).
/// Each returned root satisfies |p(root, c)| <= 1e-10 * (1 + |root|^3).
CubicRootSet char_roots(double c, const Params& params);

/// Right-hand side of the first-order profile system Phi' = F(Phi).
StateVec vector_field(const StateVec& state, double c, const Params& params);

/// Jacobian A(Phi) = dF/dPhi. At the origin this is the companion matrix of
/// the characteristic cubic.
Eigen::Matrix3d jacobian(const StateVec& state, double c, const Params& params);

}  // namespace kdvbf
