#include "kdvbf/hopf.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "kdvbf/errors.hpp"
#include "kdvbf/model.hpp"

namespace kdvbf {

namespace {

// Re/Im of the conjugate pair (positive-imaginary member). A real cubic has at
// most one such pair, so no matching across roots is needed at a single c.
std::optional<std::pair<double, double>> complex_pair(double c, const Params& params) {
  const CubicRootSet set = char_roots(c, params);
  for (const auto& root : set.roots) {
    if (root.imag() > 1e-12) return std::make_pair(root.real(), root.imag());
  }
  return std::nullopt;
}

double eta_at(double c, const Params& params) {
  const auto pair = complex_pair(c, params);
  if (!pair) throw PairLost(c);
  return pair->first;
}

}  // namespace

RootTrace track_complex_pair(double c_min, double c_max, int n_steps, const Params& params) {
  if (!(c_min < c_max)) throw std::invalid_argument("require c_min < c_max");
  if (n_steps < 2) throw std::invalid_argument("require n_steps >= 2");

  RootTrace trace;
  trace.c_values.reserve(n_steps);
  trace.eta.reserve(n_steps);
  trace.zeta.reserve(n_steps);

  const double dc = (c_max - c_min) / (n_steps - 1);
  for (int k = 0; k < n_steps; ++k) {
    const double c = (k == n_steps - 1) ? c_max : c_min + k * dc;
    const auto pair = complex_pair(c, params);
    if (!pair) throw PairLost(c);
    trace.c_values.push_back(c);
    trace.eta.push_back(pair->first);
    trace.zeta.push_back(pair->second);
  }
  return trace;
}

HopfResult detect_hopf_on(double c_lo, double c_hi, const Params& params, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  // Grid scan to bracket the crossing; the pair's real part is not monotone
  // over the whole bracket, so endpoint signs alone are not enough.
  constexpr int kScanSteps = 200;
  const RootTrace trace = track_complex_pair(c_lo, c_hi, kScanSteps, params);

  double lo = 0.0, hi = 0.0, f_lo = 0.0;
  bool found = false;
  for (int k = 0; k + 1 < kScanSteps; ++k) {
    if (trace.eta[k] == 0.0) {
      lo = hi = trace.c_values[k];
      f_lo = 0.0;
      found = true;
      break;
    }
    if (trace.eta[k] * trace.eta[k + 1] < 0.0) {
      lo = trace.c_values[k];
      hi = trace.c_values[k + 1];
      f_lo = trace.eta[k];
      found = true;
      break;
    }
  }
  if (!found) throw NoCrossing(c_lo, c_hi);

  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = eta_at(mid, params);
    if (f_lo * f_mid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }

  HopfResult result;
  result.c_star = 0.5 * (lo + hi);
  if (std::abs(eta_at(result.c_star, params)) > tol) {
    throw NoCrossing(c_lo, c_hi);
  }
  const auto pair = complex_pair(result.c_star, params);
  result.omega_star = pair->second;

  const double h = 1e-5;
  result.slope = (eta_at(result.c_star + h, params) - eta_at(result.c_star - h, params)) / (2.0 * h);
  return result;
}

HopfResult detect_hopf(const Params& params, double tol) {
  return detect_hopf_on(-2.0 * params.r, 0.0, params, tol);
}

}  // namespace kdvbf
