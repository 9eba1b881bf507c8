#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "surfbath/emit.hpp"
#include "surfbath/errors.hpp"
#include "surfbath/runconfig.hpp"
#include "surfbath/runner.hpp"

using namespace surfbath;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "inline");
  } catch (const config_error& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "surfbath_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (const char ch : text)
    if (ch == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("configuration parsing accepts a full document") {
  const RunConfig cfg = parse_config_text(R"({
    "lattice": {"n": 2, "m": 3, "spacing": 0.5},
    "model": {"nn": {"re_j": -1.5, "im_j": 0.25}},
    "sweep": {"beta_min": 0.1, "beta_max": 0.9, "points": 5},
    "cam": {"sizes": [1, 2], "connected": false},
    "correlators": {"d_min": 0.2, "d_max": 2.0, "points": 7},
    "pmap": {"beta_min": 0.0, "beta_max": 2.0, "points": 9}
  })",
                                          "inline");
  CHECK(cfg.lattice.n == 2);
  CHECK(cfg.lattice.m == 3);
  CHECK(cfg.lattice.spacing == 0.5);
  CHECK_FALSE(cfg.model.use_bath);
  CHECK(cfg.model.j_nn == std::complex<double>(-1.5, 0.25));
  CHECK(cfg.sweep.points == 5);
  CHECK(cfg.cam.sizes == std::vector<int>{1, 2});
  CHECK(cfg.correlators.lo == 0.2);
  CHECK(cfg.pmap.points == 9);
  CHECK(cfg.sections.count("cam") == 1);
  CHECK(cfg.sections.count("pmap") == 1);

  const RunConfig bath_cfg = parse_config_text(R"({
    "model": {"bath": {"s": 0.5, "delta": 1.7, "v": 0.8, "omega0": 1.1,
                       "cutoff": 6.0}}
  })",
                                               "inline");
  CHECK(bath_cfg.model.use_bath);
  CHECK(bath_cfg.model.bath.s == 0.5);
  CHECK(bath_cfg.model.bath.cutoff == 6.0);
}

TEST_CASE("configuration rejections carry the offending key path") {
  CHECK(error_of(R"({"sweep": {"betaMax": 2}})").find("sweep.betaMax") !=
        std::string::npos);
  CHECK(error_of(R"({"lattice": {"n": "three"}})").find("lattice.n") !=
        std::string::npos);
  CHECK(error_of(R"({"model": {}})").find("exactly one") !=
        std::string::npos);
  CHECK(error_of(
            R"({"model": {"nn": {"re_j": -1}, "bath": {"s": 0}}})")
            .find("exactly one") != std::string::npos);
  CHECK(error_of(R"({"model": {"nn": {"re_j": 0, "im_j": 0}}})")
            .find("nonzero") != std::string::npos);
  CHECK(error_of(R"({"model": {"bath": {"s": 0.3}}})").find("model.bath") !=
        std::string::npos);
  CHECK(error_of(R"({"lattice": {"n": 0}})").find(">= 1") !=
        std::string::npos);
  CHECK(error_of(R"({"sweep": {"beta_min": -0.5}})").find("beta_min") !=
        std::string::npos);
  CHECK(error_of(R"({"cam": {"sizes": []}})").find("cam.sizes") !=
        std::string::npos);
  CHECK(error_of(R"({"cam": {"sizes": [2, 0]}})").find("cam.sizes") !=
        std::string::npos);
  CHECK(error_of(R"({"correlators": {"d_min": 0.0}})").find("d_min") !=
        std::string::npos);
  CHECK(error_of(R"({"pmap": {"beta_min": -1.0}})").find("pmap") !=
        std::string::npos);
  CHECK(error_of(R"(not json)").find("inline") != std::string::npos);
  CHECK(error_of(R"({"topLevel": 1})").find("topLevel") != std::string::npos);
}

TEST_CASE("sections must be consumed by the subcommand") {
  const RunConfig cfg = parse_config_text(
      R"({"model": {"nn": {"re_j": -1}}, "cam": {"sizes": [1, 2]}})",
      "inline");
  CHECK_NOTHROW(require_sections(cfg, {"model", "cam", "sweep"}));
  try {
    require_sections(cfg, {"model", "sweep"});
    FAIL("expected a config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("cam") != std::string::npos);
  }
}

TEST_CASE("linear grids hit both endpoints exactly") {
  const auto grid = linear_grid(0.1, 0.7, 4);
  REQUIRE(grid.size() == 4);
  CHECK(grid.front() == 0.1);
  CHECK(grid.back() == 0.7);
  const auto mid = linear_grid(0.0, 1.0, 3);
  CHECK(mid == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(linear_grid(2.5, 9.0, 1) == std::vector<double>{2.5});
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), precondition_error);
}

TEST_CASE("doubles format to the shortest round-trip representation") {
  for (const double v : {0.1, 1.0 / 3.0, 6.02e23, 1e-300, 12345.6789, 2.0,
                         -7.25}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-7.25) == "-7.25");
}

TEST_CASE("table serialization") {
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.5, 2.0}, {3.25, 4.75}};
  CHECK(to_csv(t) == "a,b\n1.5,2\n3.25,4.75\n");
  CHECK(to_json(t) ==
        "[\n  {\"a\": 1.5, \"b\": 2},\n  {\"a\": 3.25, \"b\": 4.75}\n]\n");
  Table ragged;
  ragged.columns = {"a", "b"};
  ragged.rows = {{1.0}};
  CHECK_THROWS_AS(to_csv(ragged), error);
  CHECK_THROWS_AS(to_json(ragged), error);
}

TEST_CASE("checksums match the published test vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("file writing round trips") {
  const fs::path path = scratch_dir() / "roundtrip.txt";
  write_file(path.string(), "line one\nline two\n");
  CHECK(slurp(path) == "line one\nline two\n");
  CHECK_THROWS_AS(write_file((scratch_dir() / "no_such_dir" / "x").string(),
                             "content"),
                  error);
}

TEST_CASE("fidelity runner produces output and a faithful manifest") {
  const fs::path dir = scratch_dir();
  const fs::path config = dir / "fidelity.json";
  const fs::path out = dir / "fidelity.csv";
  write_file(config.string(), R"({
    "lattice": {"n": 2, "m": 2},
    "model": {"nn": {"re_j": -1.0}},
    "sweep": {"beta_min": 0.0, "beta_max": 0.4, "points": 5}
  })");

  RunnerOptions opt;
  opt.config_path = config.string();
  opt.out_path = out.string();
  opt.workers = 2;
  opt.seedless = true;
  REQUIRE(run_fidelity(opt) == 0);

  const std::string body = slurp(out);
  CHECK(body.rfind("beta,re_A,im_A,re_B,im_B,fidelity,n,m,re_J,im_J\n", 0) ==
        0);
  CHECK(count_lines(body) == 6);  // header + 5 sweep points

  const fs::path manifest_path = out.string() + ".manifest.json";
  REQUIRE(fs::exists(manifest_path));
  const std::string manifest_text = slurp(manifest_path);
  const nlohmann::json manifest = nlohmann::json::parse(manifest_text);
  CHECK(manifest.at("command") == "fidelity");
  CHECK(manifest.at("format") == "csv");
  CHECK(manifest.at("workers") == 2);
  CHECK_FALSE(manifest.contains("timings_ms"));  // seedless
  const nlohmann::json& entry = manifest.at("outputs").at(out.string());
  CHECK(entry.at("bytes") == body.size());
  CHECK(entry.at("fnv1a64") == fnv1a64_hex(body));
  CHECK(manifest.at("results").at("n_qubits") == 13);
  CHECK(manifest.at("conventions").contains("fidelity"));
  CHECK(manifest.at("conventions").contains("cam"));

  // Seedless reruns are byte-identical, including the manifest.
  REQUIRE(run_fidelity(opt) == 0);
  CHECK(slurp(manifest_path) == manifest_text);
  CHECK(slurp(out) == body);
}

TEST_CASE("runners reject configs with sections they do not consume") {
  const fs::path dir = scratch_dir();
  const fs::path config = dir / "stray.json";
  write_file(config.string(), R"({
    "model": {"nn": {"re_j": -1.0}},
    "cam": {"sizes": [1, 2]}
  })");
  RunnerOptions opt;
  opt.config_path = config.string();
  CHECK(run_fidelity(opt) == 1);
}

TEST_CASE("correlator runner requires a bath model") {
  const fs::path dir = scratch_dir();
  const fs::path nn_config = dir / "corr_nn.json";
  write_file(nn_config.string(), R"({"model": {"nn": {"re_j": -1.0}}})");
  RunnerOptions opt;
  opt.config_path = nn_config.string();
  CHECK(run_correlators(opt) == 1);

  const fs::path bath_config = dir / "corr_bath.json";
  write_file(bath_config.string(), R"({
    "model": {"bath": {"s": 0.0, "delta": 1.7, "v": 0.8, "omega0": 1.1}},
    "correlators": {"d_min": 0.3, "d_max": 2.5, "points": 9}
  })");
  const fs::path out = dir / "corr.json";
  opt.config_path = bath_config.string();
  opt.out_path = out.string();
  opt.format = "json";
  opt.seedless = true;
  REQUIRE(run_correlators(opt) == 0);
  const nlohmann::json rows = nlohmann::json::parse(slurp(out));
  REQUIRE(rows.is_array());
  CHECK(rows.size() == 9);
  CHECK(rows.front().contains("g_real"));
  CHECK(rows.front().at("vdelta") == doctest::Approx(0.8 * 1.7));
}

TEST_CASE("probability-map and cam runners run end to end") {
  const fs::path dir = scratch_dir();
  RunnerOptions opt;
  opt.seedless = true;

  const fs::path pmap_config = dir / "pmap.json";
  write_file(pmap_config.string(), R"({
    "model": {"bath": {"s": 0.0, "delta": 1.7, "v": 0.8, "omega0": 1.1,
                       "cutoff": 6.0}},
    "pmap": {"beta_min": 0.0, "beta_max": 1.0, "points": 6}
  })");
  const fs::path pmap_out = dir / "pmap.csv";
  opt.config_path = pmap_config.string();
  opt.out_path = pmap_out.string();
  REQUIRE(run_pmap(opt) == 0);
  const std::string pmap_body = slurp(pmap_out);
  CHECK(pmap_body.rfind("beta,p\n", 0) == 0);
  CHECK(count_lines(pmap_body) == 7);

  const fs::path cam_config = dir / "cam.json";
  write_file(cam_config.string(), R"({"cam": {"sizes": [1, 2]}})");
  const fs::path cam_out = dir / "cam.csv";
  opt.config_path = cam_config.string();
  opt.out_path = cam_out.string();
  REQUIRE(run_cam(opt) == 0);
  const std::string cam_body = slurp(cam_out);
  CHECK(cam_body.rfind(
            "size,x_c,t_c,beta_c,beta_c_stderr,intercept,slope\n", 0) == 0);
  CHECK(count_lines(cam_body) == 3);

  RunnerOptions est;
  CHECK(run_estimate(est, 2.64, 4) == 0);
  CHECK(run_estimate(est, 0.8, 4) == 1);  // branching number must exceed 1
}
