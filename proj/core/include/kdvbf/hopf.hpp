#pragma once

#include <vector>

#include "kdvbf/params.hpp"

namespace kdvbf {

/// Real and imaginary part of the complex-conjugate root pair along a speed grid
/// (the positive-imaginary member is recorded).
struct RootTrace {
  std::vector<double> c_values;  // ascending
  std::vector<double> eta;       // Re of the pair
  std::vector<double> zeta;      // Im of the pair, positive branch
};

/// Location and transversality data of the Hopf point.
struct HopfResult {
  double c_star = 0.0;      // detected critical speed
  double omega_star = 0.0;  // Im of the pair at the crossing
  double slope = 0.0;       // d Re(lambda)/dc at c_star, by central difference
};

/// Follows the complex pair of char_roots over a uniform grid on [c_min, c_max].
/// Throws PairLost if all three roots become real at some grid point.
RootTrace track_complex_pair(double c_min, double c_max, int n_steps, const Params& params);

/// Locates the zero crossing of eta(c) on an explicit bracket by grid scan plus
/// bisection; throws NoCrossing if eta does not change sign on [c_lo, c_hi].
HopfResult detect_hopf_on(double c_lo, double c_hi, const Params& params, double tol);

/// detect_hopf_on over the default bracket [-2r, 0], which contains the
/// critical speed c0 = -r for every admissible r.
HopfResult detect_hopf(const Params& params, double tol);

}  // namespace kdvbf
