#include "kdvbf/run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdvbf {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad eps value: " + item);
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty eps list");
  return values;
}

RunConfigOverrides parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());

  RunConfigOverrides o;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    try {
      if (key == "r") o.r = std::stod(value);
      else if (key == "alpha") o.alpha = std::stod(value);
      else if (key == "eps_grid") o.eps_grid = parse_eps_list(value);
      else if (key == "n_theta") o.n_theta = std::stoi(value);
      else if (key == "fourier_m") o.fourier_M = std::stoi(value);
      else if (key == "bloch_n") o.bloch_N = std::stoi(value);
      else if (key == "tol") o.tol = std::stod(value);
      else if (key == "out_dir") o.out_dir = value;
      else throw std::invalid_argument("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": bad value for " + key);
    }
  }
  return o;
}

void apply(const RunConfigOverrides& o, RunConfig& config) {
  if (o.r) config.r = *o.r;
  if (o.alpha) config.alpha = *o.alpha;
  if (o.eps_grid) config.eps_grid = *o.eps_grid;
  if (o.n_theta) config.n_theta = *o.n_theta;
  if (o.fourier_M) config.fourier_M = *o.fourier_M;
  if (o.bloch_N) config.bloch_N = *o.bloch_N;
  if (o.tol) config.tol = *o.tol;
  if (o.out_dir) config.out_dir = *o.out_dir;
}

void validate(const RunConfig& config) {
  if (!(config.r > 0.0)) throw std::invalid_argument("r must be positive");
  if (!(config.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (config.eps_grid.empty()) throw std::invalid_argument("eps_grid must be nonempty");
  for (size_t i = 0; i < config.eps_grid.size(); ++i) {
    if (!(config.eps_grid[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
    if (i > 0 && !(config.eps_grid[i] > config.eps_grid[i - 1]))
      throw std::invalid_argument("eps_grid must be ascending");
  }
  if (config.n_theta < 3) throw std::invalid_argument("n_theta must be at least 3");
  if (config.fourier_M < 8) throw std::invalid_argument("fourier_m must be at least 8");
  if (config.bloch_N < 4) throw std::invalid_argument("bloch_n must be at least 4");
}

void ensure_out_dir(const RunConfig& config) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::invalid_argument("cannot create out_dir: " + dir.string());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::invalid_argument("out_dir is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

}  // namespace kdvbf
