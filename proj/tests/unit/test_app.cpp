#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app/acceptance.hpp"
#include "app/commands.hpp"
#include "app/manifest.hpp"
#include "core/csv.hpp"
#include "core/error.hpp"

using namespace iaw;
namespace fs = std::filesystem;

static std::string fresh(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "iaw_unit" / name;
  fs::remove_all(p);
  return p.string();
}

static std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST_CASE("metric kinds") {
  CHECK(Metric::within("a", 1.05, 1.0, 0.1).pass);
  CHECK_FALSE(Metric::within("a", 1.2, 1.0, 0.1).pass);
  CHECK(Metric::relative("b", 1.04, 1.0, 0.05).pass);
  CHECK_FALSE(Metric::relative("b", 0.9, 1.0, 0.05).pass);
  CHECK(Metric::at_most("c", 1e-9, 1e-8).pass);
  CHECK_FALSE(Metric::at_least("d", 1.8, 1.9).pass);
  CHECK(Metric::info("e", NAN).pass);
  CHECK_FALSE(Metric::at_most("f", NAN, 1.0).pass);
}

TEST_CASE("manifest id and json round trip") {
  RunManifest a("profile");
  a.set_config(Config::parse("profile.eps = 0.1\n"));
  RunManifest b("profile");
  b.set_config(Config::parse("profile.eps = 0.2\n"));
  CHECK(a.run_id() != b.run_id());
  RunManifest a2("profile");
  a2.set_config(Config::parse("profile.eps = 0.1\n"));
  CHECK(a.run_id() == a2.run_id());

  a.add(Metric::within("x", 2.0, 2.1, 0.3, "note"));
  a.add(Metric::at_most("y", NAN, 1.0));
  a.add_output("p.csv", "profile");
  const RunManifest r = RunManifest::from_json(a.to_json());
  CHECK(r.run_id() == a.run_id());
  REQUIRE(r.metrics().size() == 2);
  CHECK(r.metrics()[0].pass);
  CHECK_FALSE(r.metrics()[1].pass);
  CHECK(std::isnan(r.metrics()[1].value));
  CHECK_FALSE(r.passed());
}

TEST_CASE("profile command writes csv and manifest") {
  const std::string dir = fresh("cmd_profile");
  const RunManifest m = run_command("profile", Config::parse("profile.eps = 0.1\n"), dir);
  CHECK(m.passed());
  CHECK(fs::exists(dir + "/manifest.json"));
  const CsvTable t = CsvTable::read(dir + "/profile_eps0.1.csv");
  CHECK(t.columns() == std::vector<std::string>{"x", "n_c", "u_c", "phi_c"});
  CHECK(t.rows() == 2048);
  bool found = false;
  for (const auto& x : m.metrics())
    if (x.name == "eps=0.1/amplitude") {
      found = true;
      CHECK(x.kind == "relative");
      CHECK(x.target == doctest::Approx(0.01 * 3.0 / std::sqrt(2.0)));
      CHECK(x.pass);
    }
  CHECK(found);

  // same options, same bytes
  const std::string dir2 = fresh("cmd_profile2");
  run_command("profile", Config::parse("profile.eps = 0.1\n"), dir2);
  CHECK(slurp(dir + "/profile_eps0.1.csv") == slurp(dir2 + "/profile_eps0.1.csv"));
}

TEST_CASE("commands reject unknown names and keys") {
  const std::string dir = fresh("cmd_bad");
  auto code = [&](const std::string& cmd, const std::string& text) {
    try {
      run_command(cmd, Config::parse(text), dir);
    } catch (const Error& e) {
      return static_cast<int>(e.code());
    }
    return 0;
  };
  CHECK(code("frobnicate", "") == static_cast<int>(Errc::invalid_argument));
  CHECK(code("profile", "profile.epsilon = 0.1\n") == static_cast<int>(Errc::invalid_argument));
  CHECK(code("eigencurve", "eigencurve.model = kp\neigencurve.ahat = 0.3\n") == static_cast<int>(Errc::invalid_argument));
  CHECK(code("dispersion", "dispersion.mode = radial\ndispersion.p = 2\n") == static_cast<int>(Errc::invalid_argument));
  CHECK(code("simulate", "simulate.check = everything\n") == static_cast<int>(Errc::invalid_argument));
}

TEST_CASE("report rebuilds tables from manifests") {
  const std::string dir = fresh("cmd_report");
  run_command("eigencurve", Config::parse("eigencurve.model = kp\n"), dir + "/kp");
  run_command("modulation", Config::parse("modulation.part = semigroup\n"), dir + "/semi");
  std::vector<std::string> lines;
  const RunManifest r = run_command("report", Config::parse("report.in = " + dir + "\n"), "",
                                    [&](const std::string& l) { lines.push_back(l); });
  CHECK(r.passed());
  CHECK(r.metrics().size() == 5);
  CHECK(lines.size() == 4);
  CHECK(lines[0].find("kp") != std::string::npos);
  CHECK(!fs::exists(dir + "/manifest.json"));

  // a failing metric makes the report fail
  RunManifest bad("simulate");
  bad.add(Metric::at_most("mass_drift", 1.0, 1e-8));
  bad.write(dir + "/bad");
  CHECK_FALSE(run_command("report", Config::parse("report.in = " + dir + "\n"), "").passed());

  try {
    run_command("report", Config::parse("report.in = " + fresh("empty_dir_missing") + "\n"), "");
    FAIL("missing directory accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io);
  }
}

TEST_CASE("shipped configs match the embedded ones") {
  const std::string root = IAW_SOURCE_DIR;
  CHECK(slurp(root + "/configs/stability_1d.cfg") == stability_1d_config);
  CHECK(slurp(root + "/configs/stability_2d.cfg") == stability_2d_config);
  CHECK(slurp(root + "/configs/smoke_2d.cfg") == smoke_2d_config);
  for (const char* text : {stability_1d_config, stability_2d_config, smoke_2d_config})
    CHECK_NOTHROW(ExperimentConfig::from(Config::parse(text)));
}

TEST_CASE("acceptance rejects an unknown suite") {
  CHECK_THROWS_AS(run_acceptance("medium", fresh("acc_bad")), Error);
}
