#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "kdvbf/errors.hpp"
#include "kdvbf/spectrum.hpp"

using namespace kdvbf;
using complexd = std::complex<double>;

namespace {

const std::vector<double> kEpsGrid = {0.001, 0.002, 0.004, 0.008, 0.016};

const std::vector<WaveProfile>& family_r1() {
  static const std::vector<WaveProfile> family =
      continue_family(kEpsGrid, Params::make(1.0, 1.0), 32, 1e-10);
  return family;
}

// set distance after optimal matching by nearest neighbor
double set_distance(std::vector<complexd> a, const std::vector<complexd>& b) {
  double worst = 0.0;
  for (const complexd& z : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const complexd& w : b) best = std::min(best, std::abs(z - w));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("eig_dense: diagonal input, rotation matrix, validation") {
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(4, 4);
  diag(0, 0) = complexd(2.0, 1.0);
  diag(1, 1) = complexd(-3.0, 0.0);
  diag(2, 2) = complexd(0.0, 5.0);
  diag(3, 3) = complexd(1.5, -0.5);
  std::vector<complexd> values = eig_dense(diag);
  std::vector<complexd> expected = {diag(0, 0), diag(1, 1), diag(2, 2), diag(3, 3)};
  CHECK(set_distance(values, expected) <= 1e-14);

  Eigen::MatrixXcd rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  values = eig_dense(rot);
  CHECK(set_distance(values, {complexd(0.0, 1.0), complexd(0.0, -1.0)}) <= 1e-14);

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Constant(2, 2, std::nan(""));
  CHECK_THROWS_AS(eig_dense(bad), std::invalid_argument);
}

TEST_CASE("eigenpair backward error is at solver accuracy") {
  const WaveProfile& orbit = family_r1()[2];
  const BlochMatrix matrix = assemble_bloch(0.4, linearized_coeffs(orbit), orbit.period, 16);
  const EigPairs pairs = eig_dense_pairs(matrix.entries);
  const double norm_a = matrix.entries.norm();

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pairs.values.size()) - 1);
  for (int trial = 0; trial < 5; ++trial) {
    const int i = pick(rng);
    const Eigen::VectorXcd v = pairs.vectors.col(i);
    const double backward =
        (matrix.entries * v - pairs.values(i) * v).norm() / v.norm();
    CHECK(backward <= 1e-10 * norm_a);
  }
}

TEST_CASE("eps=0 slice equals the closed-form symbol set") {
  const Params p = Params::make(1.0, 1.0);
  const FloquetSpectrum sweep = floquet_sweep_constant(p, 64, 24);
  REQUIRE(sweep.slices.size() == 64);

  double worst = 0.0;
  for (const SpectrumSlice& slice : sweep.slices) {
    std::vector<complexd> symbol;
    for (int n = -24; n <= 24; ++n) symbol.push_back(bloch_symbol(slice.theta + 2 * M_PI * n, p));
    worst = std::max(worst, set_distance(slice.scaled, symbol));
    CHECK(slice.kept == static_cast<int>(slice.scaled.size()));  // diagonal: everything resolved
  }
  CHECK(worst <= 1e-10);

  // max of Re over the sweep is r L0^3, attained at theta = 0 (unscaled: r)
  CHECK(sweep.unstable);
  CHECK(sweep.argmax_theta == 0.0);
  CHECK(sweep.max_real == doctest::Approx(p.r).epsilon(1e-12));
  CHECK(sweep.argmax_scaled == complexd(p.r * p.L0_cubed(), 0.0));

  // the unperturbed eigenvalue r L0^3 is present exactly
  const auto& zero_slice = *std::find_if(sweep.slices.begin(), sweep.slices.end(),
                                         [](const SpectrumSlice& s) { return s.theta == 0.0; });
  bool exact = false;
  for (const complexd& v : zero_slice.scaled) {
    if (std::abs(v - complexd(p.r * p.L0_cubed(), 0.0)) == 0.0) exact = true;
  }
  CHECK(exact);
}

TEST_CASE("observed multiplicity of the unperturbed eigenvalue at theta=0 is one") {
  const Params p = Params::make(1.0, 1.0);
  const BlochMatrix matrix = assemble_bloch(0.0, constant_coeff_series(p, 8), p.L0, 24);
  const std::vector<complexd> values = eig_dense(matrix);
  const double target = p.r * p.L0_cubed();
  int hits = 0;
  for (const complexd& v : values) {
    if (std::abs(v - complexd(target, 0.0)) <= 1e-6 * target) ++hits;
  }
  CHECK(hits == 1);
}

TEST_CASE("floquet sweep of the smallest wave: unstable with the eigenvalue near r L0^3") {
  const WaveProfile& orbit = family_r1().front();  // eps = 0.001
  const FloquetSpectrum sweep = floquet_sweep(orbit, 64, 24);
  const double lambda0 = orbit.params.r * orbit.params.L0_cubed();

  CHECK(sweep.unstable);
  CHECK(sweep.eps == orbit.eps);
  CHECK(sweep.argmax_theta == 0.0);

  const auto& zero_slice = *std::find_if(sweep.slices.begin(), sweep.slices.end(),
                                         [](const SpectrumSlice& s) { return s.theta == 0.0; });
  double dist = std::numeric_limits<double>::infinity();
  for (const complexd& v : zero_slice.scaled) dist = std::min(dist, std::abs(v - lambda0));
  CHECK(dist <= 3.0 * std::sqrt(orbit.eps) * lambda0);

  // scaling consistency, exactly as stored
  for (const SpectrumSlice& slice : sweep.slices) {
    for (size_t k = 0; k < slice.scaled.size(); ++k) {
      CHECK(slice.unscaled[k] == slice.scaled[k] / (orbit.period * orbit.period * orbit.period));
    }
  }
}

TEST_CASE("conjugation symmetry of slices across theta -> -theta") {
  const WaveProfile& orbit = family_r1()[1];
  const CoeffSeries coeffs = linearized_coeffs(orbit);

  for (double theta : {0.7, 2.1}) {
    const SpectrumSlice plus = spectrum_slice(theta, coeffs, orbit.period, 12);
    const SpectrumSlice minus = spectrum_slice(-theta, coeffs, orbit.period, 12);
    std::vector<complexd> conj_minus;
    for (const complexd& v : minus.scaled) conj_minus.push_back(std::conj(v));
    CHECK(set_distance(plus.scaled, conj_minus) <= 1e-8);
  }

  // theta = 0 and theta = pi: the slice is closed under conjugation. At
  // theta = pi the truncated mode set {pi + 2 pi n} is edge-asymmetric, so
  // the check is restricted to the region of interest |lambda~| <= 2 r L0^3,
  // where every conjugate partner mode is inside the truncation.
  const double window = 2.0 * orbit.params.r * orbit.params.L0_cubed();
  for (double theta : {0.0, M_PI}) {
    const SpectrumSlice slice = spectrum_slice(theta, coeffs, orbit.period, 12);
    std::vector<complexd> interior, conj_self;
    for (const complexd& v : slice.scaled) {
      if (std::abs(v) <= window) interior.push_back(v);
      conj_self.push_back(std::conj(v));
    }
    CHECK(!interior.empty());
    CHECK(set_distance(interior, conj_self) <= 1e-8);
  }
}

TEST_CASE("convergence study: distances shrink monotonically toward r L0^3") {
  const auto table = convergence_study(family_r1(), 24);
  REQUIRE(table.size() == kEpsGrid.size());

  // frozen distances from the reference run (N = 24, M = 32)
  const double frozen[] = {0.434179542, 0.868545541, 1.73785555, 3.47891659, 6.9718141};
  for (size_t i = 0; i < table.size(); ++i) {
    CHECK(table[i].eps == kEpsGrid[i]);
    CHECK(std::abs(table[i].distance - frozen[i]) <= 1e-5);
    if (i > 0) CHECK(table[i].distance >= table[i - 1].distance - 1e-10);
  }

  // empirical branch exponent in kappa = sqrt(eps): report-style fit, >= 0.9
  double mx = 0, my = 0;
  for (const auto& row : table) {
    mx += std::log(std::sqrt(row.eps));
    my += std::log(row.distance);
  }
  mx /= table.size();
  my /= table.size();
  double cov = 0, var = 0;
  for (const auto& row : table) {
    const double dx = std::log(std::sqrt(row.eps)) - mx;
    cov += dx * (std::log(row.distance) - my);
    var += dx * dx;
  }
  CHECK(cov / var >= 0.9);

  std::vector<WaveProfile> unordered = {family_r1()[1], family_r1()[0]};
  CHECK_THROWS_AS(convergence_study(unordered, 24), std::invalid_argument);
}

TEST_CASE("verdict reporting: family unstable, shifted operator stable") {
  const WaveProfile& orbit = family_r1().back();
  const FloquetSpectrum sweep = floquet_sweep(orbit, 32, 24);
  const VerdictReport report = verdict(sweep);
  CHECK(report.unstable);
  CHECK(report.eps == orbit.eps);
  CHECK(report.max_re_lambda == doctest::Approx(1.0103174090245166).epsilon(1e-6));
  CHECK(report.argmax_theta == 0.0);
  CHECK(describe(report).find("unstable") != std::string::npos);

  // manufactured stable case: shift the whole operator deep into the left
  // half plane and rebuild the slices
  const CoeffSeries coeffs = linearized_coeffs(orbit);
  const double shift = 10.0 * orbit.params.r * orbit.params.L0_cubed();
  FloquetSpectrum shifted;
  shifted.eps = orbit.eps;
  shifted.period = orbit.period;
  shifted.max_real = -std::numeric_limits<double>::infinity();
  for (double theta : theta_grid(8)) {
    const BlochMatrix coarse = assemble_bloch(theta, coeffs, orbit.period, 12);
    const BlochMatrix fine = assemble_bloch(theta, coeffs, orbit.period, 24);
    SpectrumSlice slice;
    slice.theta = theta;
    slice.scaled = eig_dense(Eigen::MatrixXcd(coarse.entries -
                                              shift * Eigen::MatrixXcd::Identity(
                                                          coarse.entries.rows(), coarse.entries.cols())));
    slice.scaled_fine = eig_dense(Eigen::MatrixXcd(fine.entries -
                                                   shift * Eigen::MatrixXcd::Identity(
                                                               fine.entries.rows(), fine.entries.cols())));
    for (const complexd& v : slice.scaled) {
      slice.unscaled.push_back(v / coarse.scale);
      double best = std::numeric_limits<double>::infinity();
      for (const complexd& w : slice.scaled_fine) best = std::min(best, std::abs(v - w));
      slice.kept_mask.push_back(best <= kTruncationFilterTol);
    }
    slice.kept = static_cast<int>(std::count(slice.kept_mask.begin(), slice.kept_mask.end(), true));
    for (size_t k = 0; k < slice.scaled.size(); ++k) {
      if (slice.kept_mask[k] && slice.unscaled[k].real() > shifted.max_real) {
        shifted.max_real = slice.unscaled[k].real();
        shifted.argmax_theta = slice.theta;
        shifted.argmax_scaled = slice.scaled[k];
      }
    }
    shifted.slices.push_back(std::move(slice));
  }
  shifted.unstable = shifted.max_real > 0.0;
  const VerdictReport stable_report = verdict(shifted);
  CHECK(!stable_report.unstable);
  CHECK(stable_report.max_re_lambda < 0.0);
}

TEST_CASE("theta grid covers (-pi, pi] and hits zero for even sizes") {
  const std::vector<double> grid = theta_grid(64);
  CHECK(grid.size() == 64);
  CHECK(grid.front() > -M_PI);
  CHECK(grid.back() == M_PI);
  CHECK(std::count(grid.begin(), grid.end(), 0.0) == 1);
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("sweep propagates failures tagged with theta") {
  const WaveProfile& orbit = family_r1().front();
  CHECK_THROWS_AS(floquet_sweep(orbit, 2, 12), std::invalid_argument);
}
