#pragma once

#include <stdexcept>
#include <string>

namespace kdvbf {

/// Root-pair tracking left the region where the cubic has a complex pair.
class PairLost : public std::runtime_error {
 public:
  explicit PairLost(double c)
      : std::runtime_error("all characteristic roots became real at c = " + std::to_string(c)),
        c_(c) {}
  double c() const { return c_; }

 private:
  double c_;
};

/// The real part of the tracked pair does not change sign on the bracket.
class NoCrossing : public std::runtime_error {
 public:
  NoCrossing(double c_lo, double c_hi)
      : std::runtime_error("no sign change of Re(lambda) on [" + std::to_string(c_lo) + ", " +
                           std::to_string(c_hi) + "]") {}
};

/// Newton iteration on the harmonic-balance system did not converge.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(double eps, int iterations, double residual)
      : std::runtime_error("orbit solve at eps = " + std::to_string(eps) + " stalled after " +
                           std::to_string(iterations) +
                           " iterations, residual = " + std::to_string(residual)),
        eps_(eps) {}
  double eps() const { return eps_; }

 private:
  double eps_;
};

/// Newton converged, but to the trivial (zero) solution.
class CollapsedToZero : public std::runtime_error {
 public:
  explicit CollapsedToZero(double eps)
      : std::runtime_error("orbit solve at eps = " + std::to_string(eps) +
                           " collapsed to the zero solution"),
        eps_(eps) {}
  double eps() const { return eps_; }

 private:
  double eps_;
};

/// Floquet exponent outside the fundamental interval (-pi, pi].
class ThetaOutOfRange : public std::invalid_argument {
 public:
  explicit ThetaOutOfRange(double theta)
      : std::invalid_argument("theta = " + std::to_string(theta) + " outside (-pi, pi]") {}
};

/// Dense eigenvalue iteration failed to converge.
class EigFailure : public std::runtime_error {
 public:
  explicit EigFailure(const std::string& what) : std::runtime_error(what) {}
  EigFailure(const std::string& what, double theta)
      : std::runtime_error(what + " (theta = " + std::to_string(theta) + ")") {}
};

}  // namespace kdvbf
