#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "kdvbf/errors.hpp"
#include "kdvbf/model.hpp"
#include "kdvbf/orbit.hpp"

using namespace kdvbf;
using fourier::at;

namespace {

// Test-local shooting oracle: fixed-step RK4 around one period, using only the
// model vector field and the synthesized initial state.
double rk4_return_gap(const WaveProfile& p, int n_steps) {
  StateVec s = evaluate_profile(p, 0.0);
  const StateVec start = s;
  const double h = p.period / n_steps;
  auto axpy = [](const StateVec& a, double w, const StateVec& b) {
    return StateVec{a.phi1 + w * b.phi1, a.phi2 + w * b.phi2, a.phi3 + w * b.phi3};
  };
  for (int i = 0; i < n_steps; ++i) {
    const StateVec k1 = vector_field(s, p.c, p.params);
    const StateVec k2 = vector_field(axpy(s, 0.5 * h, k1), p.c, p.params);
    const StateVec k3 = vector_field(axpy(s, 0.5 * h, k2), p.c, p.params);
    const StateVec k4 = vector_field(axpy(s, h, k3), p.c, p.params);
    s.phi1 += (h / 6.0) * (k1.phi1 + 2 * k2.phi1 + 2 * k3.phi1 + k4.phi1);
    s.phi2 += (h / 6.0) * (k1.phi2 + 2 * k2.phi2 + 2 * k3.phi2 + k4.phi2);
    s.phi3 += (h / 6.0) * (k1.phi3 + 2 * k2.phi3 + 2 * k3.phi3 + k4.phi3);
  }
  return std::max({std::abs(s.phi1 - start.phi1), std::abs(s.phi2 - start.phi2),
                   std::abs(s.phi3 - start.phi3)});
}

const std::vector<double> kEpsGrid = {0.001, 0.002, 0.004, 0.008, 0.016};

const std::vector<WaveProfile>& family_r1() {
  static const std::vector<WaveProfile> family =
      continue_family(kEpsGrid, Params::make(1.0, 1.0), 32, 1e-10);
  return family;
}

}  // namespace

TEST_CASE("initial guess: zero at eps=0, Hopf predictor amplitude at eps=0.01") {
  const Params p = Params::make(1.0, 1.0);

  const WaveProfile zero = initial_guess(0.0, p);
  CHECK(amplitude(zero) == 0.0);
  CHECK(zero.period == doctest::Approx(2.0 * M_PI).epsilon(1e-15));

  const WaveProfile guess = initial_guess(0.01, p);
  CHECK(amplitude(guess) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(guess.period == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(guess.residual > 0.0);

  CHECK_THROWS_AS(initial_guess(-0.001, p), std::invalid_argument);
  CHECK_THROWS_AS(initial_guess(0.2, p), std::invalid_argument);
}

TEST_CASE("Hopf predictor eigenvector satisfies A0 v = i omega0 v") {
  const Params p = Params::make(2.5, 1.0);
  const Eigen::Matrix3d a0 = jacobian({0, 0, 0}, p.c0, p);
  Eigen::Vector3cd v;
  v << std::complex<double>(1.0, 0.0), std::complex<double>(0.0, p.omega0),
      std::complex<double>(-p.omega0 * p.omega0, 0.0);
  const Eigen::Vector3cd residual =
      a0.cast<std::complex<double>>() * v - std::complex<double>(0.0, p.omega0) * v;
  CHECK(residual.norm() <= 1e-12);
}

TEST_CASE("solve_orbit at eps=0.001 reproduces the frozen solution data") {
  const Params p = Params::make(1.0, 1.0);
  const WaveProfile orbit = solve_orbit(initial_guess(0.001, p), 32, 1e-10);

  CHECK(orbit.residual <= 1e-10);
  // frozen from an independent reference run of the same formulation
  CHECK(std::abs(amplitude(orbit) - 0.02617193050885097) <= 1e-9);
  CHECK(std::abs(orbit.period - 6.2854556237101535) <= 1e-9);
  CHECK(std::abs(orbit.period - 2.0 * M_PI) <= 5.0 * orbit.eps);
  CHECK(std::abs(at(orbit.coeffs[0], 0).real() - 3.333576828283425e-4) <= 1e-9);
  // amplitude order sqrt(eps)
  CHECK(amplitude(orbit) > 0.5 * std::sqrt(0.001));
  CHECK(amplitude(orbit) < 2.0 * std::sqrt(0.001));
}

TEST_CASE("profile invariants: symmetry, spectral derivatives, gauge") {
  const WaveProfile& orbit = family_r1().front();
  CHECK(fourier::conjugate_symmetric(orbit.coeffs[0], 1e-14));
  CHECK(at(orbit.coeffs[0], 1).imag() == 0.0);  // phase condition

  const fourier::cvec d1 = fourier::derivative(orbit.coeffs[0], orbit.period, 1);
  const fourier::cvec d2 = fourier::derivative(d1, orbit.period, 1);
  for (int k = -orbit.M; k <= orbit.M; ++k) {
    CHECK(at(orbit.coeffs[1], k) == at(d1, k));
    CHECK(at(orbit.coeffs[2], k) == at(d2, k));
  }
}

TEST_CASE("family continuation: residuals, scalings, mean decay") {
  const auto& family = family_r1();
  REQUIRE(family.size() == kEpsGrid.size());

  std::vector<double> eps, amp;
  for (const WaveProfile& orbit : family) {
    CHECK(orbit.residual <= 1e-9);
    CHECK(std::abs(orbit.period - orbit.params.L0) <= 5.0 * orbit.eps);
    eps.push_back(orbit.eps);
    amp.push_back(amplitude(orbit));
  }

  double mx = 0, my = 0;
  for (size_t i = 0; i < eps.size(); ++i) {
    mx += std::log(eps[i]);
    my += std::log(amp[i]);
  }
  mx /= eps.size();
  my /= eps.size();
  double cov = 0, var = 0;
  for (size_t i = 0; i < eps.size(); ++i) {
    cov += (std::log(eps[i]) - mx) * (std::log(amp[i]) - my);
    var += (std::log(eps[i]) - mx) * (std::log(eps[i]) - mx);
  }
  const double slope = cov / var;
  CHECK(std::abs(slope - 0.5) <= 0.05);
  CHECK(slope == doctest::Approx(0.513593).epsilon(1e-3));

  // orbit shrinks onto the origin: the mean of phi1 decays monotonically
  for (size_t i = 0; i + 1 < family.size(); ++i) {
    const double mean_lo = at(family[i].coeffs[0], 0).real();
    const double mean_hi = at(family[i + 1].coeffs[0], 0).real();
    CHECK(std::abs(mean_lo) < std::abs(mean_hi));
  }
  CHECK(std::abs(at(family.front().coeffs[0], 0).real()) < 1e-3);
}

TEST_CASE("shooting oracle: RK4 closes the orbit within 1e-6") {
  for (const WaveProfile& orbit : family_r1()) {
    CHECK(rk4_return_gap(orbit, 4096) <= 1e-6);
  }
}

TEST_CASE("Newton converges quadratically from the linear predictor") {
  // The pointwise residual of the eps = 0.016 predictor is ~1e-3; reaching
  // 1e-10 within a handful of iterations requires the quadratic rate of an
  // exact Jacobian (a finite-difference-quality Jacobian would need far more).
  const Params p = Params::make(1.0, 1.0);
  SolveOptions budget;
  budget.max_iterations = 8;
  CHECK_NOTHROW(solve_orbit(initial_guess(0.016, p), 32, 1e-10, budget));
}

TEST_CASE("spectral accuracy: doubling M leaves the amplitude unchanged") {
  WaveProfile guess = family_r1().back();  // eps = 0.016, the least sinusoidal
  const WaveProfile at32 = solve_orbit(guess, 32, 1e-10);
  const WaveProfile at64 = solve_orbit(guess, 64, 1e-10);
  // compare the sup on a common grid so only the solutions differ
  auto sup_on = [](const WaveProfile& w, int n) {
    double amp = 0.0;
    for (double v : fourier::synth_real(fourier::resize_order(w.coeffs[0], 64), n)) {
      amp = std::max(amp, std::abs(v));
    }
    return amp;
  };
  CHECK(std::abs(sup_on(at32, 256) - sup_on(at64, 256)) <= 1e-10);
}

TEST_CASE("translation gauge: shifted guesses land on the same orbit") {
  const WaveProfile& reference = family_r1()[2];  // eps = 0.004
  WaveProfile shifted = reference;
  const double shift = 0.37 * reference.period;
  for (int comp = 0; comp < 3; ++comp) {
    for (int k = -reference.M; k <= reference.M; ++k) {
      at(shifted.coeffs[comp], k) *=
          std::exp(std::complex<double>(0.0, 2.0 * M_PI * k * shift / reference.period));
    }
  }
  const WaveProfile resolved = solve_orbit(shifted, 32, 1e-10);
  CHECK(std::abs(amplitude(resolved) - amplitude(reference)) <= 1e-9);
  CHECK(std::abs(resolved.period - reference.period) <= 1e-9);
}

TEST_CASE("evaluate_profile: periodicity and derivative consistency") {
  const WaveProfile& orbit = family_r1()[1];

  for (double xi : {0.13, 1.7, 4.0}) {
    const StateVec a = evaluate_profile(orbit, xi);
    const StateVec b = evaluate_profile(orbit, xi + orbit.period);
    CHECK(std::abs(a.phi1 - b.phi1) <= 1e-12);
    CHECK(std::abs(a.phi2 - b.phi2) <= 1e-12);
    CHECK(std::abs(a.phi3 - b.phi3) <= 1e-12);
  }

  const double h = 1e-5;
  for (double xi : {0.4, 2.9}) {
    const double d_fd = (evaluate_profile(orbit, xi + h).phi1 - evaluate_profile(orbit, xi - h).phi1) / (2 * h);
    CHECK(std::abs(d_fd - evaluate_profile(orbit, xi).phi2) <= 1e-6);
  }

  const Params p = Params::make(1.0, 1.0);
  const WaveProfile zero = initial_guess(0.0, p);
  const StateVec z = evaluate_profile(zero, 0.77);
  CHECK(z.phi1 == 0.0);
  CHECK(z.phi2 == 0.0);
  CHECK(z.phi3 == 0.0);
}

TEST_CASE("error paths: collapse outside the bifurcation range, stalled Newton") {
  const Params p = Params::make(1.0, 1.0);

  // no orbit on the eps < 0 side: Newton converges to the trivial solution.
  // The tolerance must be tight enough to drive the amplitude below the
  // collapse threshold (the iterate plateaus near 1.6e-11 at looser tol).
  WaveProfile bad = initial_guess(0.001, p);
  bad.eps = -0.001;
  bad.c = -p.r + bad.eps;
  CHECK_THROWS_AS(solve_orbit(bad, 32, 1e-13), CollapsedToZero);

  // one iteration cannot reach the tolerance from the linear predictor
  SolveOptions strict;
  strict.max_iterations = 1;
  CHECK_THROWS_AS(solve_orbit(initial_guess(0.016, p), 32, 1e-10, strict), NoConvergence);

  CHECK_THROWS_AS(solve_orbit(initial_guess(0.0, p), 32, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(solve_orbit(initial_guess(0.001, p), 4, 1e-10), std::invalid_argument);
}

TEST_CASE("continue_family validates its grid") {
  const Params p = Params::make(1.0, 1.0);
  CHECK_THROWS_AS(continue_family({}, p, 32, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(continue_family({0.002, 0.001}, p, 32, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(continue_family({-0.001, 0.001}, p, 32, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(continue_family({0.001, 0.2}, p, 32, 1e-10), std::invalid_argument);
}
