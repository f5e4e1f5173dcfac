#include "kdvbf/profile_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kdvbf/version.hpp"

namespace kdvbf::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string meta_comment(const FileMeta& meta) {
  std::ostringstream os;
  os << "# floquet_kdvbf " << kVersion << " r=" << fmt17(meta.r) << " alpha=" << fmt17(meta.alpha)
     << " eps=" << fmt17(meta.eps) << " fourier_M=" << meta.fourier_M
     << " bloch_N=" << meta.bloch_N << " n_theta=" << meta.n_theta;
  return os.str();
}

ordered_json meta_json(const FileMeta& meta) {
  ordered_json j;
  j["tool"] = "floquet_kdvbf";
  j["version"] = kVersion;
  j["r"] = meta.r;
  j["alpha"] = meta.alpha;
  j["eps"] = meta.eps;
  j["fourier_M"] = meta.fourier_M;
  j["bloch_N"] = meta.bloch_N;
  j["n_theta"] = meta.n_theta;
  return j;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings on every platform
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string fmt_eps(double eps) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

void save_profile(const WaveProfile& profile, const std::filesystem::path& path) {
  ordered_json j;
  FileMeta meta;
  meta.r = profile.params.r;
  meta.alpha = profile.params.alpha;
  meta.eps = profile.eps;
  meta.fourier_M = profile.M;
  j["meta"] = meta_json(meta);
  j["r"] = profile.params.r;
  j["alpha"] = profile.params.alpha;
  j["eps"] = profile.eps;
  j["c"] = profile.c;
  j["period"] = profile.period;
  j["M"] = profile.M;
  ordered_json coeffs = ordered_json::array();
  for (int k = -profile.M; k <= profile.M; ++k) {
    const auto& a = fourier::at(profile.coeffs[0], k);
    coeffs.push_back({a.real(), a.imag()});
  }
  j["coeffs"] = coeffs;
  j["residual"] = profile.residual;

  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

WaveProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path.string());
  ordered_json j;
  in >> j;

  const Params params = Params::make(j.at("r").get<double>(), j.at("alpha").get<double>());
  WaveProfile profile;
  profile.params = params;
  profile.eps = j.at("eps").get<double>();
  profile.c = j.at("c").get<double>();
  profile.period = j.at("period").get<double>();
  profile.M = j.at("M").get<int>();
  const auto& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != 2 * profile.M + 1)
    throw std::runtime_error("profile file has wrong coefficient count: " + path.string());
  profile.coeffs[0] = fourier::zeros(profile.M);
  for (int k = -profile.M; k <= profile.M; ++k) {
    const auto& pair = coeffs.at(static_cast<size_t>(k + profile.M));
    fourier::at(profile.coeffs[0], k) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
  }
  profile.coeffs[1] = fourier::derivative(profile.coeffs[0], profile.period, 1);
  profile.coeffs[2] = fourier::derivative(profile.coeffs[1], profile.period, 1);
  profile.residual = j.at("residual").get<double>();
  return profile;
}

void write_spectrum_csv(const FloquetSpectrum& spectrum, const FileMeta& meta,
                        const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << meta_comment(meta) << "\n";
  out << "eps,theta,re_lambda,im_lambda,re_lambda_scaled,im_lambda_scaled,kept_at_2N\n";
  for (const SpectrumSlice& slice : spectrum.slices) {
    for (size_t k = 0; k < slice.scaled.size(); ++k) {
      if (!slice.kept_mask[k]) continue;
      out << fmt17(spectrum.eps) << ',' << fmt17(slice.theta) << ','
          << fmt17(slice.unscaled[k].real()) << ',' << fmt17(slice.unscaled[k].imag()) << ','
          << fmt17(slice.scaled[k].real()) << ',' << fmt17(slice.scaled[k].imag()) << ",1\n";
    }
  }
}

std::vector<SpectrumCsvRow> read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv: " + path.string());
  std::vector<SpectrumCsvRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    SpectrumCsvRow row{};
    std::istringstream ls(line);
    std::string field;
    double* fields[6] = {&row.eps, &row.theta, &row.re_lambda, &row.im_lambda,
                         &row.re_lambda_scaled, &row.im_lambda_scaled};
    for (double* f : fields) {
      if (!std::getline(ls, field, ',')) throw std::runtime_error("short csv row in " + path.string());
      *f = std::stod(field);
    }
    if (!std::getline(ls, field, ',')) throw std::runtime_error("short csv row in " + path.string());
    row.kept_at_2N = std::stoi(field);
    rows.push_back(row);
  }
  return rows;
}

void write_scalings_csv(const std::vector<WaveProfile>& family, const FileMeta& meta,
                        const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << meta_comment(meta) << "\n";
  out << "eps,amplitude,period,residual\n";
  for (const WaveProfile& profile : family) {
    out << fmt17(profile.eps) << ',' << fmt17(amplitude(profile)) << ',' << fmt17(profile.period)
        << ',' << fmt17(profile.residual) << "\n";
  }
}

void write_columns(const std::vector<std::vector<double>>& columns, const FileMeta& meta,
                   const std::string& column_names, const std::filesystem::path& path) {
  if (columns.empty()) throw std::invalid_argument("no columns");
  const size_t n = columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != n) throw std::invalid_argument("ragged columns");
  }
  std::ofstream out = open_out(path);
  out << meta_comment(meta) << " columns=" << column_names << "\n";
  for (size_t row = 0; row < n; ++row) {
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ' ';
      out << fmt17(columns[c][row]);
    }
    out << "\n";
  }
}

void write_verdicts_json(const std::vector<VerdictReport>& verdicts, const FileMeta& meta,
                         const std::filesystem::path& path) {
  ordered_json j;
  j["meta"] = meta_json(meta);
  ordered_json list = ordered_json::array();
  for (const VerdictReport& v : verdicts) {
    ordered_json entry;
    entry["eps"] = v.eps;
    entry["unstable"] = v.unstable;
    entry["max_re_lambda"] = v.max_re_lambda;
    entry["argmax_theta"] = v.argmax_theta;
    list.push_back(entry);
  }
  j["verdicts"] = list;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

}  // namespace kdvbf::io
