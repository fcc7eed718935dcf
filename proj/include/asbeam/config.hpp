#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "asbeam/dispersion.hpp"
#include "asbeam/propagation.hpp"
#include "asbeam/spectrum.hpp"
#include "asbeam/verify.hpp"

namespace asbeam {

// Verification knobs: stencil geometry, study parameters, tolerances.
struct VerifyConfig {
  ResidualGrid residual_grid{64, 40.0, 0.02, 0.02};
  double z = 5.0;
  double t = 0.0;
  double residual_tolerance = 1e-3;
  double min_order = 1.9;
  std::vector<double> paraxial_q_lims{0.05, 0.1, 0.2};
  double paraxial_z = 10.0;
  int closure_samples = 1000;
};

// One run: schema-versioned JSON, unknown keys are errors.
struct RunConfig {
  UnitSystem units = UnitSystem::natural();
  DispersionKind dispersion = DispersionKind::TimeIndependentParaxial;
  KernelKind kernel = KernelKind::FresnelTI;
  BeamSource source;
  int grid_n = 64;
  double q_lim = 0.2;
  std::vector<double> omegas{1.0};
  std::vector<double> weights;  // empty: monochromatic weight 1 / uniform spacing
  std::vector<int> branches{+1};
  std::vector<double> zs{0.0};
  std::vector<double> ts{0.0};
  std::string output_dir = "out";
  VerifyConfig verify;

  FrequencyGrid frequency_grid() const;
  DispersionRelation relation() const;
  // throws InvalidArgumentError on kernel/dispersion mismatch or empty lists
  void validate() const;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace asbeam
