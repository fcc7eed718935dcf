#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

int run_cli(const std::string& args) {
  const int status = std::system((g_cli_path + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json base_config() {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["units"] = "natural";
  j["dispersion"] = "ti_paraxial";
  j["kernel"] = "fresnel_ti";
  j["grid"] = {{"n", 16}, {"q_lim", 0.3}};
  j["omegas"] = {1.0};
  j["z"] = {0.0, 5.0};
  j["t"] = {0.0};
  j["source"] = {{"kind", "gaussian"},
                 {"waist", 20.0},
                 {"polarization", "transverse_projection"}};
  return j;
}

fs::path write_config(const nlohmann::json& j, const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "asbeam_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p;
}

}  // namespace

TEST_CASE("propagate writes slices and a manifest, byte-identically on rerun") {
  const fs::path dir = fs::temp_directory_path() / "asbeam_cli_test";
  const fs::path cfg = write_config(base_config(), "ok.json");

  const fs::path out1 = dir / "run1";
  const fs::path out2 = dir / "run2";
  REQUIRE(run_cli("propagate --config " + cfg.string() + " --out " + out1.string()) == 0);
  REQUIRE(run_cli("propagate --config " + cfg.string() + " --out " + out2.string()) == 0);

  for (const char* name : {"slice_z0_t0.csv", "slice_z1_t0.csv", "slice_z0_t0.json",
                           "manifest.json"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(out1 / name));
    CHECK(slurp(out1 / name) == slurp(out2 / name));
  }

  nlohmann::json manifest = nlohmann::json::parse(slurp(out1 / "manifest.json"));
  CHECK(manifest["occupation"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(manifest["config"]["kernel"] == "fresnel_ti");
}

TEST_CASE("incompatible kernel/dispersion pairing exits 2 naming both kinds") {
  nlohmann::json j = base_config();
  j["kernel"] = "exact_as";
  const fs::path cfg = write_config(j, "mismatch.json");

  const fs::path dir = fs::temp_directory_path() / "asbeam_cli_test";
  const fs::path err = dir / "mismatch.err";
  const int status = std::system((g_cli_path + " propagate --config " + cfg.string() +
                                  " --out " + (dir / "m").string() + " 2> " + err.string() +
                                  " > /dev/null")
                                     .c_str());
  CHECK(WEXITSTATUS(status) == 2);
  const std::string message = slurp(err);
  CHECK(message.find("exact_as") != std::string::npos);
  CHECK(message.find("ti_paraxial") != std::string::npos);
}

TEST_CASE("malformed and unknown-key configs exit 2") {
  const fs::path dir = fs::temp_directory_path() / "asbeam_cli_test";
  fs::create_directories(dir);
  const fs::path broken = dir / "broken.json";
  std::ofstream(broken) << "{ not json";
  CHECK(run_cli("propagate --config " + broken.string() + " --out " + (dir / "b").string()) == 2);

  nlohmann::json j = base_config();
  j["surprise"] = 1;
  const fs::path unknown = write_config(j, "unknown.json");
  CHECK(run_cli("propagate --config " + unknown.string() + " --out " + (dir / "u").string()) ==
        2);

  nlohmann::json odd = base_config();
  odd["grid"]["n"] = 15;
  const fs::path oddcfg = write_config(odd, "odd.json");
  CHECK(run_cli("propagate --config " + oddcfg.string() + " --out " + (dir / "o").string()) == 2);
}

TEST_CASE("dispersion-table contains the hand-checked exact row") {
  nlohmann::json j = base_config();
  j["dispersion"] = "exact";
  j["kernel"] = "exact_as";
  j["grid"] = {{"n", 16}, {"q_lim", 0.8}};  // dq = 0.1: q = 0.6 is a radial node
  const fs::path cfg = write_config(j, "table.json");

  const fs::path dir = fs::temp_directory_path() / "asbeam_cli_test";
  const fs::path out = dir / "table";
  REQUIRE(run_cli("dispersion-table --config " + cfg.string() + " --out " + out.string()) == 0);

  std::ifstream csv(out / "dispersion_table.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "omega,q,f,dfdomega,c_k,q_max");
  bool found = false;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
    REQUIRE(vals.size() == 6);
    if (std::abs(vals[1] - 0.6) < 1e-12) {
      found = true;
      CHECK(vals[2] == doctest::Approx(0.8).epsilon(1e-12));   // f
      CHECK(vals[3] == doctest::Approx(1.25).epsilon(1e-12));  // df/domega
      CHECK(vals[4] == doctest::Approx(1.0).epsilon(1e-12));   // c|k|
      CHECK(vals[5] == doctest::Approx(1.0).epsilon(1e-12));   // q_max
    }
  }
  CHECK(found);
}

int main(int argc, char** argv) {
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  if (argc > 1 && argv[argc - 1][0] != '-') g_cli_path = argv[argc - 1];
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-asbeam-binary>\n");
    return 1;
  }
  return context.run();
}
