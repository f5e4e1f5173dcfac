// Batch driver for the periodic-wave pipeline: locate the Hopf point, continue
// the orbit family, sweep Floquet spectra, and run the verification table.
//
// Exit codes: 0 ok, 1 config error, 2 no crossing, 3 no convergence,
// 4 verification failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kdvbf/acceptance.hpp"
#include "kdvbf/errors.hpp"
#include "kdvbf/hopf.hpp"
#include "kdvbf/orbit.hpp"
#include "kdvbf/profile_io.hpp"
#include "kdvbf/run_config.hpp"
#include "kdvbf/spectrum.hpp"
#include "kdvbf/version.hpp"

namespace {

namespace fs = std::filesystem;
using kdvbf::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNoCrossing = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailed = 4;

struct CliOverrides {
  std::string config_path;
  std::optional<double> r, alpha;
  std::optional<std::string> eps;
  std::optional<int> n_theta, fourier_M, bloch_N;
  std::optional<std::string> out_dir;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "flat key=value configuration file");
  cmd->add_option("--r", o.r, "reaction rate r > 0");
  cmd->add_option("--alpha", o.alpha, "convection strength alpha > 0");
  cmd->add_option("--eps", o.eps, "comma-separated ascending eps values in (0, 0.1]");
  cmd->add_option("--n-theta", o.n_theta, "Floquet grid size over (-pi, pi]");
  cmd->add_option("--fourier-m", o.fourier_M, "profile Fourier modes (>= 8)");
  cmd->add_option("--bloch-n", o.bloch_N, "Hill truncation (>= 4)");
  cmd->add_option("--out", o.out_dir, "output directory");
}

RunConfig build_config(const CliOverrides& o) {
  RunConfig config;
  if (!o.config_path.empty()) {
    kdvbf::apply(kdvbf::parse_config_file(o.config_path), config);
  }
  kdvbf::RunConfigOverrides flags;
  flags.r = o.r;
  flags.alpha = o.alpha;
  if (o.eps) flags.eps_grid = kdvbf::parse_eps_list(*o.eps);
  flags.n_theta = o.n_theta;
  flags.fourier_M = o.fourier_M;
  flags.bloch_N = o.bloch_N;
  flags.out_dir = o.out_dir;
  kdvbf::apply(flags, config);
  kdvbf::validate(config);
  return config;
}

kdvbf::io::FileMeta make_meta(const RunConfig& config, double eps) {
  kdvbf::io::FileMeta meta;
  meta.r = config.r;
  meta.alpha = config.alpha;
  meta.eps = eps;
  meta.fourier_M = config.fourier_M;
  meta.bloch_N = config.bloch_N;
  meta.n_theta = config.n_theta;
  return meta;
}

int cmd_hopf(const RunConfig& config) {
  const auto params = kdvbf::Params::make(config.r, config.alpha);
  kdvbf::HopfResult result;
  try {
    result = kdvbf::detect_hopf(params, config.tol);
  } catch (const kdvbf::NoCrossing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoCrossing;
  }
  nlohmann::ordered_json j;
  j["r"] = config.r;
  j["c_star"] = result.c_star;
  j["omega_star"] = result.omega_star;
  j["slope"] = result.slope;
  std::cout << j.dump() << "\n";
  return kExitOk;
}

void write_profile_outputs(const kdvbf::WaveProfile& profile, const RunConfig& config) {
  const fs::path dir(config.out_dir);
  const std::string tag = kdvbf::io::fmt_eps(profile.eps);
  const auto meta = make_meta(config, profile.eps);

  kdvbf::io::save_profile(profile, dir / ("wave_eps" + tag + ".json"));

  constexpr int kPlotPoints = 512;
  std::vector<double> xi(kPlotPoints + 1), p1(kPlotPoints + 1), p2(kPlotPoints + 1),
      p3(kPlotPoints + 1);
  for (int j = 0; j <= kPlotPoints; ++j) {
    xi[j] = profile.period * j / kPlotPoints;
    const kdvbf::StateVec s = kdvbf::evaluate_profile(profile, xi[j]);
    p1[j] = s.phi1;
    p2[j] = s.phi2;
    p3[j] = s.phi3;
  }
  kdvbf::io::write_columns({xi, p1}, meta, "xi phi1", dir / ("profile_eps" + tag + ".dat"));
  kdvbf::io::write_columns({p1, p2, p3}, meta, "phi1 phi2 phi3",
                           dir / ("phase_eps" + tag + ".dat"));
}

int cmd_orbit(const RunConfig& config) {
  kdvbf::ensure_out_dir(config);
  const auto params = kdvbf::Params::make(config.r, config.alpha);
  const fs::path dir(config.out_dir);

  std::vector<kdvbf::WaveProfile> family;
  int exit_code = kExitOk;
  try {
    for (double eps : config.eps_grid) {
      kdvbf::WaveProfile guess =
          family.empty() ? kdvbf::initial_guess(eps, params) : family.back();
      guess.eps = eps;
      guess.c = -params.r + eps;
      family.push_back(kdvbf::solve_orbit(guess, config.fourier_M, config.tol));
      write_profile_outputs(family.back(), config);
    }
  } catch (const kdvbf::NoConvergence& e) {
    std::cerr << "error: " << e.what() << " (partial results kept)\n";
    exit_code = kExitNoConvergence;
  } catch (const kdvbf::CollapsedToZero& e) {
    std::cerr << "error: " << e.what() << " (partial results kept)\n";
    exit_code = kExitNoConvergence;
  }

  if (!family.empty()) {
    kdvbf::io::write_scalings_csv(family, make_meta(config, family.front().eps),
                                  dir / "scalings.csv");
    std::vector<double> sqrt_eps, amp;
    for (const auto& profile : family) {
      sqrt_eps.push_back(std::sqrt(profile.eps));
      amp.push_back(kdvbf::amplitude(profile));
    }
    kdvbf::io::write_columns({sqrt_eps, amp}, make_meta(config, family.front().eps),
                             "sqrt_eps amplitude", dir / "amplitude_vs_sqrt_eps.dat");
    std::cout << "wrote " << family.size() << " profiles to " << dir.string() << "\n";
  }
  return exit_code;
}

int cmd_spectrum(const RunConfig& config, bool constant_coeff) {
  kdvbf::ensure_out_dir(config);
  const fs::path dir(config.out_dir);
  std::vector<kdvbf::VerdictReport> verdicts;

  if (constant_coeff) {
    const auto params = kdvbf::Params::make(config.r, config.alpha);
    const kdvbf::FloquetSpectrum sweep =
        kdvbf::floquet_sweep_constant(params, config.n_theta, config.bloch_N);
    kdvbf::io::write_spectrum_csv(sweep, make_meta(config, 0.0), dir / "spectrum_eps0.csv");
    verdicts.push_back(kdvbf::verdict(sweep));
    std::cout << kdvbf::describe(verdicts.back()) << "\n";
  } else {
    for (double eps : config.eps_grid) {
      const std::string tag = kdvbf::io::fmt_eps(eps);
      const fs::path profile_path = dir / ("wave_eps" + tag + ".json");
      if (!fs::exists(profile_path)) {
        std::cerr << "error: missing profile file " << profile_path.string()
                  << " (run the orbit subcommand first)\n";
        return kExitConfig;
      }
      const kdvbf::WaveProfile profile = kdvbf::io::load_profile(profile_path);
      const kdvbf::FloquetSpectrum sweep =
          kdvbf::floquet_sweep(profile, config.n_theta, config.bloch_N);
      kdvbf::io::write_spectrum_csv(sweep, make_meta(config, eps),
                                    dir / ("spectrum_eps" + tag + ".csv"));
      verdicts.push_back(kdvbf::verdict(sweep));
      std::cout << kdvbf::describe(verdicts.back()) << "\n";
    }
  }
  kdvbf::io::write_verdicts_json(verdicts, make_meta(config, 0.0), dir / "verdicts.json");
  return kExitOk;
}

int cmd_verify(const RunConfig& config) {
  const auto results = kdvbf::run_acceptance(config);
  kdvbf::print_results(results, std::cout);
  return kdvbf::all_passed(results) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic traveling waves of the KdV-Burgers-Fisher equation and their "
               "Floquet spectra (Hill's method)"};
  app.set_version_flag("--version", kdvbf::kVersion);
  app.require_subcommand(1);

  CliOverrides o;
  bool constant_coeff = false;

  CLI::App* hopf = app.add_subcommand("hopf", "locate the Hopf point and its crossing data");
  add_common_options(hopf, o);
  CLI::App* orbit = app.add_subcommand("orbit", "continue the periodic orbit family over eps");
  add_common_options(orbit, o);
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Floquet spectra of stored profiles via Hill's method");
  add_common_options(spectrum, o);
  spectrum->add_flag("--constant-coeff", constant_coeff,
                     "sweep the eps=0 constant-coefficient operator instead of stored profiles");
  CLI::App* verify = app.add_subcommand("verify", "run the verification table");
  add_common_options(verify, o);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = build_config(o);
    if (hopf->parsed()) return cmd_hopf(config);
    if (orbit->parsed()) return cmd_orbit(config);
    if (spectrum->parsed()) return cmd_spectrum(config, constant_coeff);
    if (verify->parsed()) return cmd_verify(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
