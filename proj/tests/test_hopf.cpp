#include <doctest.h>

#include <cmath>

#include "kdvbf/errors.hpp"
#include "kdvbf/hopf.hpp"
#include "kdvbf/model.hpp"

using namespace kdvbf;

TEST_CASE("tracked pair crosses the axis at c0 with unit frequency (r=1)") {
  const Params p = Params::make(1.0, 1.0);
  const RootTrace trace = track_complex_pair(-1.2, -0.8, 81, p);

  REQUIRE(trace.c_values.size() == 81);
  // c = -1 sits on this grid; eta vanishes and zeta = 1 there
  const size_t mid = 40;
  CHECK(trace.c_values[mid] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(trace.eta[mid]) <= 1e-10);
  CHECK(trace.zeta[mid] == doctest::Approx(1.0).epsilon(1e-10));

  bool sign_change = false;
  for (size_t k = 0; k + 1 < trace.eta.size(); ++k) {
    if (trace.eta[k] * trace.eta[k + 1] < 0.0) sign_change = true;
  }
  CHECK(sign_change);
}

TEST_CASE("pair real part at c=-1.1 against the deflation oracle") {
  // Oracle: the real root of lambda^3 - lambda^2 + 1.1 lambda - 1 by bisection,
  // then Re(pair) = (1 - rho)/2 from the root sum. The pair sits in the
  // right half plane before the crossing.
  auto poly = [](double x) { return x * x * (x - 1.0) + 1.1 * x - 1.0; };
  double lo = 0.9, hi = 1.0;
  REQUIRE(poly(lo) * poly(hi) < 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (poly(lo) * poly(mid) <= 0.0 ? hi : lo) = mid;
  }
  const double rho = 0.5 * (lo + hi);
  const double eta_oracle = 0.5 * (1.0 - rho);
  CHECK(eta_oracle > 0.0);

  const Params p = Params::make(1.0, 1.0);
  const RootTrace trace = track_complex_pair(-1.1, -1.0, 2, p);
  CHECK(trace.eta[0] == doctest::Approx(eta_oracle).epsilon(1e-9));
  CHECK(trace.eta[0] == doctest::Approx(0.024967236682).epsilon(1e-8));
}

TEST_CASE("trace is continuous on the default-scale grid") {
  const Params p = Params::make(1.0, 1.0);
  const RootTrace trace = track_complex_pair(-2.0, 0.0, 200, p);
  for (size_t k = 0; k + 1 < trace.eta.size(); ++k) {
    CHECK(std::abs(trace.eta[k + 1] - trace.eta[k]) <= 0.1);
  }
}

TEST_CASE("tracking reports PairLost where the cubic goes all-real") {
  // At c = 10, r = 1 the cubic has three real roots.
  const Params p = Params::make(1.0, 1.0);
  CHECK_THROWS_AS(track_complex_pair(9.0, 11.0, 21, p), PairLost);
}

TEST_CASE("hopf detection against the closed forms across r") {
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const Params p = Params::make(r, 1.0);
    const HopfResult h = detect_hopf(p, 1e-12);
    CHECK(std::abs(h.c_star + r) <= 1e-8);
    CHECK(std::abs(h.omega_star - std::sqrt(r)) <= 1e-6);
    // The crossing slope: |slope| equals the closed form 1/(2(r+1)), and the
    // sign is negative. The root sum is exactly 1 while the real root grows
    // with c at rate 1/(1+r), so the pair's real part must shrink at half
    // that rate: d(eta)/dc = -1/(2(r+1)).
    CHECK(std::abs(h.slope + 1.0 / (2.0 * (r + 1.0))) <= 1e-5);
  }
}

TEST_CASE("eta is strictly monotone (decreasing) through the crossing") {
  const Params p = Params::make(1.0, 1.0);
  const RootTrace trace = track_complex_pair(-1.1, -0.9, 41, p);
  for (size_t k = 0; k + 1 < trace.eta.size(); ++k) {
    CHECK(trace.eta[k + 1] < trace.eta[k]);
  }
}

TEST_CASE("NoCrossing on a bracket that misses the critical speed") {
  const Params p = Params::make(1.0, 1.0);
  CHECK_THROWS_AS(detect_hopf_on(-0.5, -0.1, p, 1e-10), NoCrossing);
}

TEST_CASE("input validation") {
  const Params p = Params::make(1.0, 1.0);
  CHECK_THROWS_AS(track_complex_pair(0.0, -1.0, 10, p), std::invalid_argument);
  CHECK_THROWS_AS(track_complex_pair(-1.0, 0.0, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(detect_hopf(p, 0.0), std::invalid_argument);
}
