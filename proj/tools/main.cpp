// asbeam: angular-spectrum beam synthesis and verification CLI.
//
// Subcommands:
//   propagate        synthesize field slices for a config, write CSV + manifest
//   verify           run the verification suite, write a JSON report array
//   dispersion-table tabulate f, df/domega, c|k|, q_max over the grid
//
// Exit codes: 0 success, 1 verification failure, 2 invalid config,
// 3 numerical failure (non-finite output).

#include <ctime>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "asbeam/config.hpp"
#include "asbeam/io.hpp"
#include "asbeam/observables.hpp"
#include "asbeam/verify.hpp"

namespace fs = std::filesystem;
using namespace asbeam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;

struct CliOptions {
  std::string config_path;
  std::string out_dir;  // overrides config output_dir when nonempty
  std::string units;    // "", "natural", "si"
  std::uint64_t seed = 12345;
  bool timestamp = false;
};

RunConfig load(const CliOptions& opt) {
  RunConfig cfg = load_config(opt.config_path);
  if (!opt.units.empty()) {
    cfg.units = opt.units == "si" ? UnitSystem::si() : UnitSystem::natural();
    cfg.validate();
  }
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  return cfg;
}

AngularSpectrum build_source_spectrum(const RunConfig& cfg, const DispersionRelation& rel) {
  GridPair grids = make_paired_grids(cfg.grid_n, cfg.q_lim);
  FrequencyGrid freq = cfg.frequency_grid();
  AngularSpectrum total = AngularSpectrum::zeros(grids.spectral, freq);
  for (int branch : cfg.branches) {
    BeamSource src = cfg.source;
    src.s = branch;
    AngularSpectrum part = make_source(src, grids.spectral, freq, rel);
    total.clipping_warning = total.clipping_warning || part.clipping_warning;
    for (int lam = 0; lam < 2; ++lam)
      for (int si = 0; si < 2; ++si)
        for (std::size_t i = 0; i < total.node_count(); ++i)
          total.amps[lam][si][i] += part.amps[lam][si][i];
  }
  const double occ = occupation(total);
  if (!(occ > 0.0)) throw InvalidArgumentError("combined source has zero occupation");
  const double scale = 1.0 / std::sqrt(occ);
  for (auto& per_lambda : total.amps)
    for (auto& a : per_lambda)
      for (Complex& v : a) v *= scale;
  total.masked_power_fraction = 0.0;
  apply_mask(total, rel);  // refresh the masked-power bookkeeping
  return total;
}

int cmd_propagate(const CliOptions& opt) {
  RunConfig cfg = load(opt);
  const DispersionRelation rel = cfg.relation();
  AngularSpectrum spec = build_source_spectrum(cfg, rel);

  fs::create_directories(cfg.output_dir);
  nlohmann::json manifest;
  manifest["config"] = config_echo(cfg);
  manifest["masked_power_fraction"] = spec.masked_power_fraction;
  manifest["clipping_warning"] = spec.clipping_warning;
  manifest["occupation"] = occupation(spec);

  const EnergyReport e = energy(spec, rel);
  manifest["energy"] = {{"total", e.total},
                        {"per_s_plus", e.per_s[0]},
                        {"per_s_minus", e.per_s[1]},
                        {"per_lambda_1", e.per_lambda[0]},
                        {"per_lambda_2", e.per_lambda[1]},
                        {"mean_ck", e.mean_ck}};

  std::vector<std::string> outputs;
  for (std::size_t iz = 0; iz < cfg.zs.size(); ++iz) {
    for (std::size_t it = 0; it < cfg.ts.size(); ++it) {
      FieldSlice slice = field_slice(spec, rel, cfg.kernel, cfg.zs[iz], cfg.ts[it]);
      if (!slice.all_finite()) {
        std::cerr << "non-finite field values at z index " << iz << ", t index " << it << "\n";
        return kExitNumerical;
      }
      const std::string stem = "slice_z" + std::to_string(iz) + "_t" + std::to_string(it);
      write_text_file(fs::path(cfg.output_dir) / (stem + ".csv"), field_slice_csv(slice));
      write_text_file(fs::path(cfg.output_dir) / (stem + ".json"),
                      field_slice_sidecar(slice, cfg.units).dump(2) + "\n");
      outputs.push_back(stem + ".csv");
    }
  }
  manifest["outputs"] = outputs;
  if (opt.timestamp) manifest["generated_at"] = static_cast<long long>(std::time(nullptr));
  write_text_file(fs::path(cfg.output_dir) / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << outputs.size() << " slice(s) to " << cfg.output_dir << "\n";
  return kExitOk;
}

int cmd_verify(const CliOptions& opt) {
  RunConfig cfg = load(opt);
  const VerifyConfig& v = cfg.verify;
  const double omega = cfg.omegas.front();

  std::vector<VerificationReport> reports;
  reports.push_back(checks::jacobian_fd_agreement(cfg.units, cfg.dispersion, v.closure_samples,
                                                  opt.seed, omega));
  reports.push_back(checks::plane_wave_frequency_closure(cfg.units, cfg.dispersion,
                                                         v.closure_samples, opt.seed, omega));
  reports.push_back(
      checks::triad_orthonormality(cfg.units, cfg.dispersion, cfg.grid_n, cfg.q_lim, omega));
  reports.push_back(checks::roundtrip_identity(cfg.units, cfg.dispersion, omega));
  reports.push_back(checks::invariance_per_node(cfg.units, cfg.dispersion, omega));
  reports.push_back(
      checks::invariance_midpoint_order(cfg.units, cfg.dispersion, omega, v.min_order));
  reports.push_back(checks::conservation_under_kernel(cfg.units, cfg.kernel, omega));
  reports.push_back(checks::fft_direct_agreement(cfg.units, cfg.kernel, 32, omega));
  reports.push_back(checks::fubini_agreement(cfg.units, cfg.dispersion, omega));

  if (cfg.dispersion != DispersionKind::Exact)
    reports.push_back(checks::pde_residual_order(cfg.units, cfg.dispersion, omega,
                                                 v.residual_grid, v.z, v.t,
                                                 v.residual_tolerance, v.min_order));
  VerificationReport dal = checks::dalembert_residual_order(
      cfg.units, cfg.kernel, omega, v.residual_grid, v.z, v.t, v.residual_tolerance, v.min_order);
  reports.push_back(dal);
  reports.push_back(checks::negative_control_ratio(cfg.units, cfg.dispersion, omega,
                                                   v.residual_grid, dal.relative_residual));

  std::vector<double> q_lims;
  for (double q : v.paraxial_q_lims) q_lims.push_back(q * omega / cfg.units.c);
  reports.push_back(
      checks::paraxial_exponent(cfg.units, omega, v.paraxial_z * cfg.units.c / omega, q_lims));

  if (cfg.dispersion == DispersionKind::TimeIndependentParaxial)
    reports.push_back(checks::gaussian_width_oracle(
        cfg.units, 20.0 * cfg.units.c / omega, 0.4 * omega / cfg.units.c, 128,
        {0.0, 100.0 * cfg.units.c / omega, 200.0 * cfg.units.c / omega}, omega));

  bool all_passed = true;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& report : reports) {
    out.push_back(report_to_json(report));
    all_passed = all_passed && report.passed;
    std::cout << (report.passed ? "PASS " : "FAIL ") << report.name
              << "  metric=" << format_double(report.relative_residual);
    if (report.has_order) std::cout << "  order=" << format_double(report.convergence_order);
    std::cout << "  tol=" << format_double(report.tolerance) << "\n";
  }
  fs::create_directories(cfg.output_dir);
  write_text_file(fs::path(cfg.output_dir) / "verification.json", out.dump(2) + "\n");
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int cmd_dispersion_table(const CliOptions& opt) {
  RunConfig cfg = load(opt);
  const DispersionRelation rel = cfg.relation();
  GridPair grids = make_paired_grids(cfg.grid_n, cfg.q_lim);

  std::string csv = "omega,q,f,dfdomega,c_k,q_max\n";
  for (double omega : cfg.omegas) {
    const double qm = q_max(rel, omega);
    // radial nodes: the nonnegative qx axis of the grid
    for (int ix = cfg.grid_n / 2; ix < cfg.grid_n; ++ix) {
      const double q = grids.spectral.coord(ix);
      if (!in_domain(rel, q, omega)) continue;
      csv += format_double(omega) + "," + format_double(q) + "," +
             format_double(f_value(rel, q, omega)) + "," +
             format_double(jacobian(rel, q, omega)) + "," +
             format_double(plane_wave_frequency(rel, q, omega)) + "," + format_double(qm) + "\n";
    }
  }
  fs::create_directories(cfg.output_dir);
  write_text_file(fs::path(cfg.output_dir) / "dispersion_table.csv", csv);
  std::cout << "wrote dispersion_table.csv to " << cfg.output_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized angular-spectrum beam engine"};
  app.require_subcommand(1);

  CliOptions opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "path to the run config JSON")->required();
    sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
    sub->add_option("--units", opt.units, "unit system override: natural or si")
        ->check(CLI::IsMember({"natural", "si"}));
    sub->add_option("--seed", opt.seed, "seed for randomized property sampling");
    sub->add_flag("--timestamp", opt.timestamp, "record a timestamp in the manifest");
  };

  CLI::App* propagate = app.add_subcommand("propagate", "synthesize and write field slices");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  CLI::App* table = app.add_subcommand("dispersion-table", "tabulate the dispersion relation");
  add_common(propagate);
  add_common(verify);
  add_common(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitBadConfig : kExitOk;
  }

  try {
    if (propagate->parsed()) return cmd_propagate(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (table->parsed()) return cmd_dispersion_table(opt);
  } catch (const InvalidArgumentError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const KindMismatchError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
