#include "kdvbf/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "kdvbf/errors.hpp"

namespace kdvbf {

Params Params::make(double r, double alpha) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  Params p;
  p.r = r;
  p.alpha = alpha;
  p.c0 = -r;
  p.omega0 = std::sqrt(r);
  p.L0 = 2.0 * M_PI / p.omega0;
  return p;
}

std::complex<double> char_poly_eval(std::complex<double> lambda, double c, const Params& params) {
  return lambda * lambda * (lambda - 1.0) - lambda * c - params.r;
}

CubicRootSet char_roots(double c, const Params& params) {
  Eigen::Matrix3d a0;
  a0 << 0.0, 1.0, 0.0,  //
      0.0, 0.0, 1.0,    //
      params.r, c, 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(a0, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigFailure("companion eigensolve failed for c = " + std::to_string(c));
  }

  CubicRootSet out;
  for (int i = 0; i < 3; ++i) out.roots[i] = solver.eigenvalues()(i);
  std::sort(out.roots.begin(), out.roots.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });

  for (const auto& root : out.roots) {
    const double mag = std::abs(root);
    if (std::abs(char_poly_eval(root, c, params)) > 1e-10 * (1.0 + mag * mag * mag)) {
      throw EigFailure("companion root residual out of tolerance at c = " + std::to_string(c));
    }
  }
  return out;
}

StateVec vector_field(const StateVec& s, double c, const Params& params) {
  StateVec out;
  out.phi1 = s.phi2;
  out.phi2 = s.phi3;
  out.phi3 = s.phi3 + params.r * s.phi1 * (1.0 - s.phi1) - params.alpha * s.phi1 * s.phi2 +
             c * s.phi2;
  return out;
}

Eigen::Matrix3d jacobian(const StateVec& s, double c, const Params& params) {
  Eigen::Matrix3d j;
  j << 0.0, 1.0, 0.0,  //
      0.0, 0.0, 1.0,   //
      params.r * (1.0 - 2.0 * s.phi1) - params.alpha * s.phi2, c - params.alpha * s.phi1, 1.0;
  return j;
}

}  // namespace kdvbf
