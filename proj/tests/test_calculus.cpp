#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mael/calculus.hpp"

using namespace mael;

namespace {
constexpr double kPi = std::numbers::pi;

// index into the per-interior-node Hessian arrays
std::size_t interior_pos(const GridDomain& dom, std::int64_t idx) {
  const auto& nodes = dom.interior();
  return std::lower_bound(nodes.begin(), nodes.end(), idx) - nodes.begin();
}
}  // namespace

TEST_CASE("hessian is exact on |z|^2 at core nodes") {
  for (auto [p, res] : {std::pair{Preset::Disc, 33}, {Preset::BallC2, 11}}) {
    auto dom = build_domain(p, res);
    GridFunction u = radial_paraboloid(dom, 1.0);
    HessianField H = complex_hessian(u);
    for (std::int64_t idx : dom->interior_core()) {
      std::size_t k = interior_pos(*dom, idx);
      CHECK(H.h11[k] == doctest::Approx(1.0).epsilon(1e-12));
      if (dom->n() == 2) {
        CHECK(H.h22[k] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(H.re12[k] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(H.im12[k] == doctest::Approx(0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pluriharmonic kernel: Re(z^2) has vanishing complex hessian") {
  auto dom = build_domain(Preset::Disc, 33);
  GridFunction u = make_function(dom, [](const double* z) {
    return z[0] * z[0] - z[1] * z[1];  // Re((x+iy)^2)
  });
  HessianField H = complex_hessian(u);
  for (std::int64_t idx : dom->interior_core())
    CHECK(std::abs(H.h11[interior_pos(*dom, idx)]) < 1e-12);
}

TEST_CASE("hessian of x^4 matches 3x^2 to O(h^2)") {
  auto dom = build_domain(Preset::Disc, 129);
  GridFunction u = make_function(dom, [](const double* z) {
    return z[0] * z[0] * z[0] * z[0];
  });
  HessianField H = complex_hessian(u);
  const double h = dom->h();
  double z[2];
  for (std::int64_t idx : dom->interior_core()) {
    dom->node_coords(idx, z);
    double expect = 0.25 * 12.0 * z[0] * z[0];  // (1/4) d^2/dx^2 x^4
    CHECK(std::abs(H.h11[interior_pos(*dom, idx)] - expect) < 4.0 * h * h);
  }
}

TEST_CASE("monge-ampere densities of the exact solutions") {
  auto disc = build_domain(Preset::Disc, 33);
  DiscreteMeasure m1 = monge_ampere(radial_paraboloid(disc, 1.0));
  for (std::int64_t idx : disc->interior_core())
    CHECK(m1.density[idx] == doctest::Approx(4.0).epsilon(1e-12));

  auto ball = build_domain(Preset::BallC2, 11);
  DiscreteMeasure m2 = monge_ampere(radial_paraboloid(ball, 1.0));
  for (std::int64_t idx : ball->interior_core())
    CHECK(m2.density[idx] == doctest::Approx(32.0).epsilon(1e-12));
}

TEST_CASE("monge-ampere of log(|z|^2 + 1/4) profile") {
  auto dom = build_domain(Preset::Disc, 129);
  // shifted to be <= 0 inside: log(r^2 + 1/4) - log(5/4)
  GridFunction u = make_function(dom, [](const double* z) {
    double r2 = z[0] * z[0] + z[1] * z[1];
    return std::log(r2 + 0.25) - std::log(1.25);
  });
  DiscreteMeasure m = monge_ampere(u);
  double z[2];
  double h = dom->h();
  for (std::int64_t idx : dom->interior_core()) {
    dom->node_coords(idx, z);
    double r2 = z[0] * z[0] + z[1] * z[1];
    double expect = 1.0 / ((r2 + 0.25) * (r2 + 0.25));
    CHECK(std::abs(m.density[idx] - expect) < 100.0 * h * h);
  }
}

TEST_CASE("psh check failure reports worst node") {
  auto dom = build_domain(Preset::Disc, 33);
  GridFunction u = make_function(dom, [](const double* z) {
    double r2 = z[0] * z[0] + z[1] * z[1];
    return -(1 - r2) * (1 - r2);  // concave near the origin
  });
  CHECK_THROWS_AS(monge_ampere(u), PshViolation);
  try {
    monge_ampere(u);
  } catch (const PshViolation& e) {
    CHECK(e.node >= 0);
    CHECK(e.eigenvalue < 0);
  }
}

TEST_CASE("monge-ampere degree-n homogeneity") {
  for (auto [p, res] : {std::pair{Preset::Disc, 33}, {Preset::BallC2, 11}}) {
    auto dom = build_domain(p, res);
    GridFunction u = radial_paraboloid(dom, 1.0);
    const int n = dom->n();
    for (double t : {0.5, 2.0, 5.0}) {
      DiscreteMeasure a = monge_ampere(scaled(u, t));
      DiscreteMeasure b = monge_ampere(u);
      for (std::int64_t idx : dom->interior()) {
        double expect = std::pow(t, n) * b.density[idx];
        CHECK(a.density[idx] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("mixed monge-ampere: diagonal, symmetry, and the 64 example") {
  auto dom = build_domain(Preset::BallC2, 9);
  GridFunction u = radial_paraboloid(dom, 1.0);
  GridFunction v = radial_paraboloid(dom, 2.0);

  DiscreteMeasure diag = mixed_monge_ampere({u, u});
  DiscreteMeasure ma = monge_ampere(u);
  for (std::int64_t idx : dom->interior())
    CHECK(diag.density[idx] == doctest::Approx(ma.density[idx]).epsilon(1e-12));

  DiscreteMeasure uv = mixed_monge_ampere({u, v});
  DiscreteMeasure vu = mixed_monge_ampere({v, u});
  for (std::int64_t idx : dom->interior()) {
    CHECK(uv.density[idx] == doctest::Approx(vu.density[idx]).epsilon(1e-12));
    if (dom->is_core(idx)) CHECK(uv.density[idx] == doctest::Approx(64.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(mixed_monge_ampere({u}), std::invalid_argument);
}

TEST_CASE("polarization consistency before clamping") {
  auto dom = build_domain(Preset::BallC2, 9);
  GridFunction u = radial_paraboloid(dom, 1.0);
  GridFunction v = make_function(dom, [](const double* z) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += (z[i] - 0.1 * i) * (z[i] - 0.1 * i);
    return 0.7 * (s - 2.0);
  });
  std::vector<double> sum = ma_density_raw(lincomb(1.0, u, 1.0, v));
  std::vector<double> mu = ma_density_raw(u), mv = ma_density_raw(v);
  std::vector<double> mix = mixed_density_raw({u, v});
  for (std::size_t k = 0; k < sum.size(); ++k) {
    double lhs = sum[k] - mu[k] - mv[k];
    CHECK(lhs == doctest::Approx(2.0 * mix[k]).epsilon(1e-11));
  }
}

TEST_CASE("quadrature against the area oracle") {
  auto dom = build_domain(Preset::Disc, 65);
  DiscreteMeasure m(dom);
  for (std::int64_t idx : dom->interior()) m.density[idx] = 4.0;
  update_mass(m);
  CHECK(std::abs(m.total_mass - 4.0 * kPi) < 4.0 * kPi * 2.0 * dom->h());

  GridFunction f = radial_paraboloid(dom, 1.0);  // integrate (1-|z|^2) * 4
  CHECK(std::abs(-integrate(f, m) - 2.0 * kPi) < 2.0 * kPi * 2.0 * dom->h());
  GridFunction zero = zero_function(dom);
  CHECK(integrate(zero, m) == 0.0);
}

TEST_CASE("clamped mass is reported") {
  auto dom = build_domain(Preset::Disc, 33);
  GridFunction u = radial_paraboloid(dom, 1.0);
  MAResult r = monge_ampere_ex(u);
  CHECK(r.clamped_mass >= 0.0);
  for (std::int64_t idx : dom->interior()) CHECK(r.measure.density[idx] >= 0.0);
}
