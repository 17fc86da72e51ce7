#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mael/config.hpp"
#include "mael/io.hpp"

using namespace mael;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("function CSV round-trips bit-exactly") {
  auto dom = build_domain(Preset::Disc, 17);
  GridFunction u = zero_function(dom);
  Rng rng(7);
  for (std::int64_t idx : dom->interior()) u.values[idx] = -rng.uniform(0.0, 1.0) * 1e-3;
  // exercise awkward representations too
  const auto& in = dom->interior();
  u.values[in[0]] = -0.1;
  u.values[in[1]] = -1.0 / 3.0;
  u.values[in[2]] = -1e-300;

  std::string path = tmp_path("mael_rt.csv");
  write_function_csv(path, u);
  GridFunction v = read_function_csv(path, dom);
  REQUIRE(v.values.size() == u.values.size());
  CHECK(hash_doubles(v.values) == hash_doubles(u.values));
  std::remove(path.c_str());
}

TEST_CASE("function CSV shape and row-count mismatches are rejected") {
  auto dom = build_domain(Preset::Disc, 17);
  GridFunction u = radial_paraboloid(dom, 1.0);
  std::string path = tmp_path("mael_shape.csv");
  write_function_csv(path, u);

  auto other = build_domain(Preset::Disc, 33);
  CHECK_THROWS(read_function_csv(path, other));

  // drop the last row
  std::string text = slurp(path);
  text.erase(text.find_last_of('\n', text.size() - 2) + 1);
  std::ofstream(path) << text;
  CHECK_THROWS(read_function_csv(path, dom));

  std::remove(path.c_str());
  CHECK_THROWS(read_function_csv(path, dom));  // missing file
}

TEST_CASE("measure CSV round-trip and negative-density rejection") {
  auto dom = build_domain(Preset::Disc, 17);
  MeasureSpec spec;
  spec.params = {4.0};
  DiscreteMeasure mu = realize(spec, dom);

  std::string path = tmp_path("mael_mu.csv");
  write_measure_csv(path, mu);
  DiscreteMeasure back = read_measure_csv(path, dom);
  CHECK(hash_doubles(back.density) == hash_doubles(mu.density));
  CHECK(back.total_mass == doctest::Approx(mu.total_mass));

  DiscreteMeasure bad = mu;
  bad.density[dom->interior()[0]] = -1.0;
  write_measure_csv(path, bad);
  CHECK_THROWS(read_measure_csv(path, dom));
  std::remove(path.c_str());
}

TEST_CASE("format_double and report lines") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");

  CheckRecord rec;
  rec.name = "holder";
  rec.inputs_hash = 42;
  rec.samples = 7;
  rec.worst_gap = -0.5;
  rec.tolerance = 0.02;
  rec.pass = true;
  std::string line = report_line(rec);
  CHECK(line.find("\"name\":\"holder\"") != std::string::npos);
  CHECK(line.find("\"samples\":7") != std::string::npos);
  CHECK(line.find("\"verdict\":\"pass\"") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);

  std::string path = tmp_path("mael_rep.jsonl");
  std::remove(path.c_str());
  append_report_line(path, rec);
  append_report_line(path, rec);
  std::string text = slurp(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  std::remove(path.c_str());
}

TEST_CASE("config parsing: full file") {
  RunConfig cfg = parse_config_text(
      "# comment\n"
      "[domain]\n"
      "preset = ball\n"
      "resolution = 13\n"
      "[measure]\n"
      "kind = gaussian-bump\n"
      "params = 1.0, 0.25\n"
      "normalization = 2.5\n"
      "[solver]\n"
      "max_iters = 50\n"
      "tol_residual = 1e-4\n"
      "start = random-admissible\n"
      "seed = 9\n"
      "[envelope]\n"
      "omega = 1.5\n"
      "[family]\n"
      "kind = singular-probe\n"
      "size = 4\n"
      "[output]\n"
      "dir = /tmp/out\n");
  CHECK(cfg.preset == Preset::BallC2);
  CHECK(cfg.resolution == 13);
  CHECK(cfg.measure.kind == MeasureSpec::Kind::GaussianBump);
  REQUIRE(cfg.measure.params.size() == 2);
  CHECK(cfg.measure.params[1] == 0.25);
  REQUIRE(cfg.measure.normalization.has_value());
  CHECK(*cfg.measure.normalization == 2.5);
  CHECK(cfg.solver.max_iters == 50);
  CHECK(cfg.solver.tol_residual == 1e-4);
  CHECK(cfg.solver.start == SolveOptions::Start::RandomAdmissible);
  CHECK(cfg.solver.seed == 9);
  CHECK(cfg.solver.env.omega == 1.5);
  CHECK(cfg.family.kind == FamilySpec::Kind::SingularProbe);
  CHECK(cfg.family.size == 4);
  CHECK(cfg.output_dir == "/tmp/out");
}

TEST_CASE("config parsing: errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config_text("[domain]\nresolutoin = 5\n"),
                       doctest::Contains("[domain] resolutoin"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[domain]\nresolution = five\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[nosuch]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[domain]\npreset = cube\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[measure]\nkind = dirac\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[solver]\nstart = warm\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("stray = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("/nonexistent/mael.ini"), ConfigError);
}

TEST_CASE("config parse from file matches text parse") {
  std::string path = tmp_path("mael_cfg.ini");
  std::ofstream(path) << "[domain]\npreset = polydisc\nresolution = 9\n";
  RunConfig cfg = parse_config(path);
  CHECK(cfg.preset == Preset::PolydiscC2);
  CHECK(cfg.resolution == 9);
  std::remove(path.c_str());
}
