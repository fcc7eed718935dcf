#include "asbeam/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace asbeam {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
}

std::string field_slice_csv(const FieldSlice& slice) {
  std::ostringstream out;
  out << "iy,ix,x,y,re_x,im_x,re_y,im_y,re_z,im_z\n";
  const int n = slice.grid.n;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const CVec3& v = slice.values[slice.grid.flat(iy, ix)];
      out << iy << ',' << ix << ',' << format_double(slice.grid.coord(ix)) << ','
          << format_double(slice.grid.coord(iy));
      for (int c = 0; c < 3; ++c)
        out << ',' << format_double(v[c].real()) << ',' << format_double(v[c].imag());
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::json field_slice_sidecar(const FieldSlice& slice, const UnitSystem& units) {
  nlohmann::json j;
  j["format"] = "field_slice_csv_v1";
  j["grid"] = {{"n", slice.grid.n}, {"limit", slice.grid.limit}, {"spacing", slice.grid.spacing}};
  j["z"] = slice.z;
  j["t"] = slice.t;
  j["units"] = unit_mode_name(units.mode);
  for (const auto& [key, value] : slice.metadata) j["metadata"][key] = value;
  return j;
}

std::string spectrum_csv(const AngularSpectrum& spec) {
  std::ostringstream out;
  out << "lambda,s,iw,iy,ix,re,im\n";
  const int n = spec.grid.n;
  for (int lam = 0; lam < 2; ++lam)
    for (int si = 0; si < 2; ++si)
      for (int iw = 0; iw < spec.freq.count(); ++iw)
        for (int iy = 0; iy < n; ++iy)
          for (int ix = 0; ix < n; ++ix) {
            const Complex& v = spec.amps[lam][si][spec.flat(iw, iy, ix)];
            if (v == Complex{}) continue;
            out << (lam + 1) << ',' << s_from_index(si) << ',' << iw << ',' << iy << ',' << ix
                << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
          }
  return out.str();
}

nlohmann::json spectrum_sidecar(const AngularSpectrum& spec, const UnitSystem& units) {
  nlohmann::json j;
  j["format"] = "angular_spectrum_csv_v1";
  j["grid"] = {{"n", spec.grid.n}, {"limit", spec.grid.limit}, {"spacing", spec.grid.spacing}};
  j["omegas"] = spec.freq.omegas;
  j["weights"] = spec.freq.weights;
  j["units"] = unit_mode_name(units.mode);
  j["masked_power_fraction"] = spec.masked_power_fraction;
  j["clipping_warning"] = spec.clipping_warning;
  // |a|^2 dq^2 domega is a dimensionless occupation
  j["amplitude_normalization"] = "mode_occupation";
  return j;
}

AngularSpectrum read_spectrum(const std::filesystem::path& csv_path,
                              const std::filesystem::path& sidecar_path) {
  std::ifstream side(sidecar_path);
  if (!side) throw Error("cannot open " + sidecar_path.string());
  nlohmann::json j = nlohmann::json::parse(side);

  TransverseGrid grid;
  grid.n = j.at("grid").at("n").get<int>();
  grid.limit = j.at("grid").at("limit").get<double>();
  grid.spacing = j.at("grid").at("spacing").get<double>();
  FrequencyGrid freq;
  freq.omegas = j.at("omegas").get<std::vector<double>>();
  freq.weights = j.at("weights").get<std::vector<double>>();

  AngularSpectrum spec = AngularSpectrum::zeros(grid, freq);
  spec.masked_power_fraction = j.at("masked_power_fraction").get<double>();
  spec.clipping_warning = j.at("clipping_warning").get<bool>();

  std::ifstream csv(csv_path);
  if (!csv) throw Error("cannot open " + csv_path.string());
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    auto next = [&]() {
      if (!std::getline(row, cell, ',')) throw Error("short CSV row in " + csv_path.string());
      return cell;
    };
    const int lam = std::stoi(next()) - 1;
    const int s = std::stoi(next());
    const int iw = std::stoi(next());
    const int iy = std::stoi(next());
    const int ix = std::stoi(next());
    const double re = std::strtod(next().c_str(), nullptr);
    const double im = std::strtod(next().c_str(), nullptr);
    spec.at(lam, s, iw, iy, ix) = Complex(re, im);
  }
  return spec;
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["residual_norm"] = report.residual_norm;
  j["reference_norm"] = report.reference_norm;
  j["relative_residual"] = report.relative_residual;
  if (report.has_order) j["convergence_order"] = report.convergence_order;
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed;
  return j;
}

}  // namespace asbeam
