#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "glauert/config.hpp"
#include "glauert/runner.hpp"

using namespace glauert;

TEST_CASE("toml subset parser") {
  const std::string text = R"(
# case file
formulation = "stable"   # top-level
eta_re = 1.5

[mesh]
source = "builtin"
subdivisions = 2
inner_semiaxes = [0.3, 0.3, 0.5]

[solver]
precondition = true
tol = 1e-7
)";
  const TomlTable t = parse_toml(text);
  CHECK(t.get_string("formulation", "") == "stable");
  CHECK(t.get_number("eta_re", 0) == doctest::Approx(1.5));
  CHECK(t.get_string("mesh.source", "") == "builtin");
  CHECK(t.get_number("mesh.subdivisions", 0) == doctest::Approx(2));
  const auto axes = t.get_numbers("mesh.inner_semiaxes", {});
  REQUIRE(axes.size() == 3);
  CHECK(axes[2] == doctest::Approx(0.5));
  CHECK(t.get_bool("solver.precondition", false));
  CHECK(t.get_number("solver.tol", 0) == doctest::Approx(1e-7));

  CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml("novalue\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml("bad = [1, \"x\"]\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml("s = \"unterminated\n"), ConfigError);
}

namespace {

TomlTable minimal_table() {
  return parse_toml(R"(
[ambient]
k_hat = 1.0
)");
}

}  // namespace

TEST_CASE("case config validation") {
  SUBCASE("minimal config resolves") {
    const CaseConfig c = CaseConfig::from_table(minimal_table());
    CHECK(c.resolved_k_hat() == doctest::Approx(1.0));
  }
  SUBCASE("unknown keys are rejected") {
    TomlTable t = minimal_table();
    t.values["mesh.subdivisionz"] = 2.0;
    CHECK_THROWS_AS(CaseConfig::from_table(t), ConfigError);
  }
  SUBCASE("frequency and k_hat are exclusive") {
    TomlTable t = minimal_table();
    t.values["ambient.frequency_hz"] = 100.0;
    CHECK_THROWS_AS(CaseConfig::from_table(t), ConfigError);
    CHECK_THROWS_AS(CaseConfig::from_table(TomlTable{}), ConfigError);
  }
  SUBCASE("frequency converts through the transformed wavenumber") {
    TomlTable t;
    t.values["ambient.frequency_hz"] = 100.0;
    t.values["ambient.c"] = 340.0;
    t.values["ambient.mach"] = 0.3;
    const CaseConfig c = CaseConfig::from_table(t);
    const double gamma = 1.0 / std::sqrt(1.0 - 0.09);
    CHECK(c.resolved_k_hat() ==
          doctest::Approx(gamma * 2.0 * M_PI * 100.0 / 340.0).epsilon(1e-14));
  }
  SUBCASE("purely imaginary eta is rejected for the stable formulation") {
    TomlTable t = minimal_table();
    t.values["formulation"] = std::string("stable");
    t.values["eta_re"] = 0.0;
    t.values["eta_im"] = 1.0;
    CHECK_THROWS_AS(CaseConfig::from_table(t), EtaError);
  }
  SUBCASE("supersonic ambient is rejected") {
    TomlTable t = minimal_table();
    t.values["ambient.mach"] = 1.2;
    CHECK_THROWS_AS(CaseConfig::from_table(t), ConfigError);
  }
  SUBCASE("file source needs a path") {
    TomlTable t = minimal_table();
    t.values["mesh.source"] = std::string("file");
    CHECK_THROWS_AS(CaseConfig::from_table(t), ConfigError);
  }
}

TEST_CASE("reruns produce bit-identical artifacts") {
  CaseConfig config;
  config.mesh_source = MeshSource::Builtin;
  config.inner_semiaxes = Vec3(1.0, 1.0, 1.0);
  config.outer_radius = 1.3;
  config.subdivisions = 1;
  config.layers = 1;
  config.mach = 0.0;
  config.k_hat = 1.0;
  config.incident_kind = IncidentKind::PlaneWave;
  config.probe_radius = 3.0;
  config.probe_count = 16;

  auto run_into = [&](const std::string& dir) {
    CaseConfig c = config;
    c.out_dir = (std::filesystem::temp_directory_path() / dir).string();
    std::filesystem::remove_all(c.out_dir);
    const RunOutcome outcome = run_case(c);
    CHECK(outcome.exit_code == 0);
    return c.out_dir;
  };
  const std::string a = run_into("glauert_det_a");
  const std::string b = run_into("glauert_det_b");
  for (const std::string name :
       {"probes.csv", "summary.json", "solution.vtk", "residuals.csv"}) {
    std::ifstream fa(a + "/" + name), fb(b + "/" + name);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
  }
}
