#include <cmath>
#include <cstdio>
#include <numbers>

#include "doctest.h"
#include "mael/io.hpp"
#include "mael/measures.hpp"

using namespace mael;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant density mass matches the area oracle") {
  auto dom = build_domain(Preset::Disc, 65);
  MeasureSpec spec;
  spec.params = {4.0};
  DiscreteMeasure mu = realize(spec, dom);
  CHECK(std::abs(mu.total_mass - 4.0 * kPi) < 4.0 * kPi * 2.0 * dom->h());

  spec.params = {0.0};
  CHECK(realize(spec, dom).total_mass == 0.0);
}

TEST_CASE("ma-of measure reproduces the determinant") {
  auto dom = build_domain(Preset::BallC2, 9);
  GridFunction u = radial_paraboloid(dom, 1.0);
  MeasureSpec spec;
  spec.kind = MeasureSpec::Kind::MaOf;
  spec.source = &u;
  DiscreteMeasure mu = realize(spec, dom);
  for (std::int64_t idx : dom->interior_core())
    CHECK(mu.density[idx] == doctest::Approx(32.0).epsilon(1e-12));
}

TEST_CASE("radial profile and gaussian bump sampling") {
  auto dom = build_domain(Preset::Disc, 33);
  MeasureSpec prof;
  prof.kind = MeasureSpec::Kind::RadialProfile;
  prof.params = {1.0, 2.0};  // 1 + 2 r^2
  DiscreteMeasure mu = realize(prof, dom);
  double z[2];
  for (std::int64_t idx : dom->interior()) {
    dom->node_coords(idx, z);
    double r2 = z[0] * z[0] + z[1] * z[1];
    CHECK(mu.density[idx] == doctest::Approx(1.0 + 2.0 * r2));
  }

  MeasureSpec bump;
  bump.kind = MeasureSpec::Kind::GaussianBump;
  bump.params = {3.0, 0.2, 0.1, -0.1};
  DiscreteMeasure g = realize(bump, dom);
  for (std::int64_t idx : dom->interior()) {
    dom->node_coords(idx, z);
    double s = (z[0] - 0.1) * (z[0] - 0.1) + (z[1] + 0.1) * (z[1] + 0.1);
    CHECK(g.density[idx] == doctest::Approx(3.0 * std::exp(-s / 0.08)));
  }

  MeasureSpec neg;
  neg.kind = MeasureSpec::Kind::RadialProfile;
  neg.params = {-1.0};
  CHECK_THROWS_AS(realize(neg, dom), std::invalid_argument);
}

TEST_CASE("normalization rescales total mass") {
  auto dom = build_domain(Preset::Disc, 33);
  MeasureSpec spec;
  spec.params = {4.0};
  spec.normalization = 1.0;
  DiscreteMeasure mu = realize(spec, dom);
  CHECK(mu.total_mass == doctest::Approx(1.0).epsilon(1e-12));

  MeasureSpec zero;
  zero.params = {0.0};
  zero.normalization = 1.0;
  CHECK_THROWS_AS(realize(zero, dom), std::invalid_argument);
}

TEST_CASE("truncation: identity, zero, monotone mass, clipped integral") {
  auto dom = build_domain(Preset::Disc, 65);
  MeasureSpec bump;
  bump.kind = MeasureSpec::Kind::GaussianBump;
  bump.params = {100.0, 0.2};
  DiscreteMeasure mu = realize(bump, dom);

  DiscreteMeasure same = truncate(mu, 1000.0);
  CHECK(same.total_mass == doctest::Approx(mu.total_mass));
  CHECK(truncate(mu, 0.0).total_mass == 0.0);
  CHECK_THROWS_AS(truncate(mu, -1.0), std::invalid_argument);

  double prev = 0;
  for (double level : {1.0, 10.0, 50.0, 100.0}) {
    double m = truncate(mu, level).total_mass;
    CHECK(m >= prev);
    prev = m;
  }
  CHECK(prev == doctest::Approx(mu.total_mass));

  // quadrature oracle for the clipped integral at level 10
  double expect = 0;
  double z[2];
  for (std::int64_t idx : dom->interior()) {
    dom->node_coords(idx, z);
    double s = z[0] * z[0] + z[1] * z[1];
    expect += std::min(100.0 * std::exp(-s / 0.08), 10.0);
  }
  expect *= dom->h() * dom->h();
  CHECK(truncate(mu, 10.0).total_mass == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("csv measures reject bad files") {
  auto dom = build_domain(Preset::Disc, 5);
  std::string path = "bad_measure_test.csv";
  {
    DiscreteMeasure mu(dom);
    mu.density[dom->interior()[0]] = 1.0;
    update_mass(mu);
    write_measure_csv(path, mu);
  }
  MeasureSpec spec;
  spec.kind = MeasureSpec::Kind::CsvPath;
  spec.path = path;
  CHECK_NOTHROW(realize(spec, dom));

  auto other = build_domain(Preset::Disc, 9);
  CHECK_THROWS(read_measure_csv(path, other));  // shape mismatch

  // negative density in file
  GridFunction f(dom);
  f.values[dom->interior()[0]] = -2.0;
  write_function_csv(path, f);
  CHECK_THROWS(read_measure_csv(path, dom));
  std::remove(path.c_str());
}
