#include "asbeam/config.hpp"

#include <fstream>
#include <set>

namespace asbeam {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!j.is_object()) throw InvalidArgumentError("config section '" + where + "' must be an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw InvalidArgumentError("unknown config key '" + item.key() + "' in " + where);
}

DispersionKind parse_dispersion(const std::string& name) {
  if (name == "ti_paraxial") return DispersionKind::TimeIndependentParaxial;
  if (name == "td_paraxial") return DispersionKind::TimeDependentParaxial;
  if (name == "exact") return DispersionKind::Exact;
  throw InvalidArgumentError("unknown dispersion kind '" + name +
                             "' (custom relations are library-only)");
}

KernelKind parse_kernel(const std::string& name) {
  if (name == "fresnel_ti") return KernelKind::FresnelTI;
  if (name == "half_fresnel_td") return KernelKind::HalfFresnelTD;
  if (name == "exact_as") return KernelKind::ExactAS;
  throw InvalidArgumentError("unknown kernel kind '" + name + "'");
}

Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidArgumentError(where + " must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

BeamSource parse_source(const nlohmann::json& j) {
  require_keys(j, {"kind", "waist", "ring_radius", "node_ix", "node_iy", "c1", "c2",
                   "polarization", "flatten_mode_weight"},
               "source");
  BeamSource src;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    src.kind = SourceKind::Gaussian;
    src.waist = j.at("waist").get<double>();
  } else if (kind == "ring_delta") {
    src.kind = SourceKind::RingDelta;
    src.ring_radius = j.at("ring_radius").get<double>();
  } else if (kind == "node_impulse") {
    src.kind = SourceKind::NodeImpulse;
    src.node_ix = j.at("node_ix").get<int>();
    src.node_iy = j.at("node_iy").get<int>();
  } else {
    throw InvalidArgumentError("unknown source kind '" + kind + "'");
  }
  if (j.contains("c1")) src.c1 = parse_complex(j["c1"], "source.c1");
  if (j.contains("c2")) src.c2 = parse_complex(j["c2"], "source.c2");
  if (j.contains("polarization")) {
    const std::string pol = j["polarization"].get<std::string>();
    if (pol == "triad_weights")
      src.polarization = PolarizationConvention::TriadWeights;
    else if (pol == "transverse_projection")
      src.polarization = PolarizationConvention::TransverseProjection;
    else
      throw InvalidArgumentError("unknown polarization convention '" + pol + "'");
  }
  if (j.contains("flatten_mode_weight"))
    src.flatten_mode_weight = j["flatten_mode_weight"].get<bool>();
  return src;
}

VerifyConfig parse_verify(const nlohmann::json& j) {
  require_keys(j, {"n_eval", "extent", "hz", "ht", "z", "t", "residual_tolerance", "min_order",
                   "paraxial_q_lims", "paraxial_z", "closure_samples"},
               "verify");
  VerifyConfig v;
  if (j.contains("n_eval")) v.residual_grid.n_eval = j["n_eval"].get<int>();
  if (j.contains("extent")) v.residual_grid.extent = j["extent"].get<double>();
  if (j.contains("hz")) v.residual_grid.hz = j["hz"].get<double>();
  if (j.contains("ht")) v.residual_grid.ht = j["ht"].get<double>();
  if (j.contains("z")) v.z = j["z"].get<double>();
  if (j.contains("t")) v.t = j["t"].get<double>();
  if (j.contains("residual_tolerance")) v.residual_tolerance = j["residual_tolerance"].get<double>();
  if (j.contains("min_order")) v.min_order = j["min_order"].get<double>();
  if (j.contains("paraxial_q_lims"))
    v.paraxial_q_lims = j["paraxial_q_lims"].get<std::vector<double>>();
  if (j.contains("paraxial_z")) v.paraxial_z = j["paraxial_z"].get<double>();
  if (j.contains("closure_samples")) v.closure_samples = j["closure_samples"].get<int>();
  return v;
}

}  // namespace

FrequencyGrid RunConfig::frequency_grid() const {
  FrequencyGrid g;
  g.omegas = omegas;
  if (!weights.empty()) {
    g.weights = weights;
  } else if (omegas.size() == 1) {
    g.weights = {1.0};
  } else {
    for (std::size_t i = 0; i < omegas.size(); ++i)
      g.weights.push_back(i + 1 < omegas.size() ? omegas[i + 1] - omegas[i]
                                                : omegas[i] - omegas[i - 1]);
  }
  g.validate();
  return g;
}

DispersionRelation RunConfig::relation() const {
  switch (dispersion) {
    case DispersionKind::TimeIndependentParaxial: return DispersionRelation::ti_paraxial(units);
    case DispersionKind::TimeDependentParaxial: return DispersionRelation::td_paraxial(units);
    case DispersionKind::Exact: return DispersionRelation::exact(units);
    default: throw InvalidArgumentError("config cannot carry a custom dispersion");
  }
}

void RunConfig::validate() const {
  units.validate();
  if (kernel_dispersion(kernel) != dispersion)
    throw InvalidArgumentError(std::string("kernel ") + kernel_name(kernel) +
                               " is incompatible with dispersion " + kind_name(dispersion) +
                               "; it requires " + kind_name(kernel_dispersion(kernel)));
  if (omegas.empty() || zs.empty() || ts.empty() || branches.empty())
    throw InvalidArgumentError("omega, z, t, and branch lists must be nonempty");
  for (int b : branches)
    if (b != 1 && b != -1) throw InvalidArgumentError("branches must be +1 or -1");
  frequency_grid();
  make_paired_grids(grid_n, q_lim);
}

RunConfig parse_config(const nlohmann::json& j) {
  require_keys(j, {"schema_version", "units", "dispersion", "kernel", "source", "grid", "omegas",
                   "weights", "branches", "z", "t", "output_dir", "verify"},
               "config");
  const int version = j.at("schema_version").get<int>();
  if (version != 1)
    throw InvalidArgumentError("unsupported schema_version " + std::to_string(version));

  RunConfig cfg;
  const std::string units = j.at("units").get<std::string>();
  if (units == "natural")
    cfg.units = UnitSystem::natural();
  else if (units == "si")
    cfg.units = UnitSystem::si();
  else
    throw InvalidArgumentError("units must be 'natural' or 'si'");

  cfg.dispersion = parse_dispersion(j.at("dispersion").get<std::string>());
  cfg.kernel = parse_kernel(j.at("kernel").get<std::string>());
  cfg.source = parse_source(j.at("source"));

  require_keys(j.at("grid"), {"n", "q_lim"}, "grid");
  cfg.grid_n = j.at("grid").at("n").get<int>();
  cfg.q_lim = j.at("grid").at("q_lim").get<double>();

  cfg.omegas = j.at("omegas").get<std::vector<double>>();
  if (j.contains("weights")) cfg.weights = j["weights"].get<std::vector<double>>();
  if (j.contains("branches")) cfg.branches = j["branches"].get<std::vector<int>>();
  cfg.zs = j.at("z").get<std::vector<double>>();
  cfg.ts = j.at("t").get<std::vector<double>>();
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("verify")) cfg.verify = parse_verify(j["verify"]);

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgumentError("malformed config JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["units"] = unit_mode_name(cfg.units.mode);
  j["dispersion"] = kind_name(cfg.dispersion);
  j["kernel"] = kernel_name(cfg.kernel);
  j["grid"] = {{"n", cfg.grid_n}, {"q_lim", cfg.q_lim}};
  j["omegas"] = cfg.omegas;
  j["branches"] = cfg.branches;
  j["z"] = cfg.zs;
  j["t"] = cfg.ts;
  nlohmann::json src;
  switch (cfg.source.kind) {
    case SourceKind::Gaussian:
      src["kind"] = "gaussian";
      src["waist"] = cfg.source.waist;
      break;
    case SourceKind::RingDelta:
      src["kind"] = "ring_delta";
      src["ring_radius"] = cfg.source.ring_radius;
      break;
    case SourceKind::NodeImpulse:
      src["kind"] = "node_impulse";
      src["node_ix"] = cfg.source.node_ix;
      src["node_iy"] = cfg.source.node_iy;
      break;
  }
  src["c1"] = {cfg.source.c1.real(), cfg.source.c1.imag()};
  src["c2"] = {cfg.source.c2.real(), cfg.source.c2.imag()};
  src["polarization"] = cfg.source.polarization == PolarizationConvention::TriadWeights
                            ? "triad_weights"
                            : "transverse_projection";
  src["flatten_mode_weight"] = cfg.source.flatten_mode_weight;
  j["source"] = src;
  return j;
}

}  // namespace asbeam
