#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mael/energy.hpp"
#include "mael/measures.hpp"

using namespace mael;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("e_1 of the exact solutions vs the closed-form values") {
  auto disc = build_domain(Preset::Disc, 65);
  double e1 = energy_ep(radial_paraboloid(disc, 1.0), 1.0);
  CHECK(std::abs(e1 - 2.0 * kPi) < 2.0 * kPi * 4.0 * disc->h());

  auto ball = build_domain(Preset::BallC2, 13);
  double e2 = energy_ep(radial_paraboloid(ball, 1.0), 1.0);
  double expect = 16.0 * kPi * kPi / 3.0;  // 32 * vol integral of (1-|z|^2)
  CHECK(std::abs(e2 - expect) < expect * 4.0 * ball->h());

  CHECK(energy_ep(zero_function(disc), 1.0) == 0.0);
  CHECK_THROWS_AS(energy_ep(radial_paraboloid(disc, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("J identity and the solution value -(n/(n+1)) e_1") {
  auto dom = build_domain(Preset::Disc, 65);
  GridFunction u = radial_paraboloid(dom, 1.0);
  DiscreteMeasure mu = monge_ampere(u);
  double e1 = energy_ep(u, 1.0);
  double J = functional_J(u, mu);
  CHECK(J == doctest::Approx(-0.5 * e1).epsilon(1e-12));

  EnergyReport rep = energy_report(u, 1.0, &mu);
  CHECK(rep.J == doctest::Approx(rep.e_p / 2.0 - rep.mu_pairing).epsilon(1e-12));

  // zero measure: J = e1/(n+1) > 0 unless u = 0
  DiscreteMeasure zero(dom);
  CHECK(functional_J(u, zero) == doctest::Approx(e1 / 2.0).epsilon(1e-12));
  CHECK(functional_J(zero_function(dom), mu) == 0.0);
}

TEST_CASE("e_p homogeneity e_p(tu) = t^{n+1} e_p(u) for p = 1") {
  for (auto [p, res] : {std::pair{Preset::Disc, 33}, {Preset::BallC2, 11}}) {
    auto dom = build_domain(p, res);
    GridFunction u = radial_paraboloid(dom, 1.0);
    double e1 = energy_ep(u, 1.0);
    const int np1 = dom->n() + 1;
    for (double t : {0.5, 2.0, 5.0}) {
      double expect = std::pow(t, np1) * e1;
      CHECK(energy_ep(scaled(u, t), 1.0) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("holder gap: equality case and the scaled pair") {
  auto dom = build_domain(Preset::Disc, 65);
  GridFunction u = radial_paraboloid(dom, 1.0);
  double e1 = energy_ep(u, 1.0);

  double eq = holder_gap({u, u});
  CHECK(std::abs(eq) <= 1e-10 * e1);

  // (u, 2u): homogeneity e_1(2u) = 2^{n+1} e_1(u) makes this an equality case
  // too: LHS = 2 e_1, RHS = e_1^{1/2} (4 e_1)^{1/2} = 2 e_1.
  GridFunction u2 = scaled(u, 2.0);
  double gap = holder_gap({u, u2});
  CHECK(std::abs(gap) <= 1e-10 * 2.0 * e1);

  CHECK_THROWS_AS(holder_gap({u, u, u}), std::invalid_argument);
}

TEST_CASE("holder gap nonnegative on seeded tuples") {
  for (auto [p, res] : {std::pair{Preset::Disc, 33}, {Preset::BallC2, 9}}) {
    auto dom = build_domain(p, res);
    Rng rng(11);
    const int n = dom->n();
    for (int i = 0; i < 10; ++i) {
      std::vector<GridFunction> tuple;
      for (int j = 0; j < n + 1; ++j) tuple.push_back(random_admissible(dom, rng));
      CHECK(holder_gap(tuple) >= -tol_disc(1.0));
    }
  }
}

TEST_CASE("triangle inequality gap") {
  auto dom = build_domain(Preset::Disc, 33);
  GridFunction u = radial_paraboloid(dom, 1.0);
  CHECK(triangle_gap(u, zero_function(dom)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(triangle_gap(u, u)) <= 1e-10 * std::pow(energy_ep(u, 1.0), 0.5));
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    GridFunction a = random_admissible(dom, rng);
    GridFunction b = random_admissible(dom, rng);
    CHECK(triangle_gap(a, b) >= -tol_disc(1.0));
  }
}

TEST_CASE("J is convex along segments") {
  auto dom = build_domain(Preset::Disc, 33);
  MeasureSpec spec;
  spec.params = {4.0};
  DiscreteMeasure mu = realize(spec, dom);
  Rng rng(17);
  for (int i = 0; i < 5; ++i) {
    GridFunction u = random_admissible(dom, rng);
    GridFunction v = random_admissible(dom, rng);
    double Ju = functional_J(u, mu), Jv = functional_J(v, mu);
    for (double t : {0.25, 0.5, 0.75}) {
      double Jmix = functional_J(lincomb(t, u, 1.0 - t, v), mu);
      CHECK(Jmix <= t * Ju + (1.0 - t) * Jv + tol_disc(std::abs(Ju) + std::abs(Jv)));
    }
  }
}

TEST_CASE("coercivity along rays") {
  auto dom = build_domain(Preset::Disc, 33);
  MeasureSpec spec;
  spec.params = {4.0};
  DiscreteMeasure mu = realize(spec, dom);
  GridFunction u0 = radial_paraboloid(dom, 1.0);
  double e1 = energy_ep(u0, 1.0);
  FamilySpec fam;
  fam.size = 8;
  double B = admissibility_estimate(mu, fam).B_hat;
  double prev = -1e300;
  for (double t : {1.0, 2.0, 4.0, 8.0}) {
    double J = functional_J(scaled(u0, t), mu);
    double lower = std::pow(t, dom->n() + 1) * e1 / (dom->n() + 1) -
                   B * t * std::pow(e1, 1.0 / (dom->n() + 1));
    CHECK(J >= lower - tol_disc(std::abs(lower) + 1.0));
    CHECK(J > prev);  // blows up along the ray
    prev = J;
  }
}

TEST_CASE("admissibility estimate: Lebesgue density stays bounded") {
  auto dom = build_domain(Preset::Disc, 65);
  MeasureSpec spec;
  spec.params = {4.0};
  DiscreteMeasure mu = realize(spec, dom);
  FamilySpec fam;
  fam.size = 10;
  AdmissibilityReport rep = admissibility_estimate(mu, fam);
  CHECK(rep.family_size == 10);
  CHECK(rep.B_hat > 0.0);
  // Theorem-level bound with the known solution: B = e_1(u*)^{n/(n+1)}
  double e1 = energy_ep(radial_paraboloid(dom, 1.0), 1.0);
  CHECK(rep.B_hat <= std::pow(e1, 0.5) * 1.05);
  CHECK(!rep.divergence_flag);

  DiscreteMeasure zero(dom);
  FamilySpec small;
  small.size = 3;
  CHECK(admissibility_estimate(zero, small).B_hat == 0.0);
}

TEST_CASE("divergence flag fires on a spike and not on a resolvable bump") {
  auto dom = build_domain(Preset::Disc, 129);
  FamilySpec probes;
  probes.kind = FamilySpec::Kind::SingularProbe;

  MeasureSpec spike;
  spike.kind = MeasureSpec::Kind::GaussianBump;
  spike.params = {1.0, 1e-3};  // sigma well under h: a delta approximant
  spike.normalization = 1.0;
  AdmissibilityReport r1 = admissibility_estimate(realize(spike, dom), probes);
  CHECK(r1.divergence_flag);

  MeasureSpec bump;
  bump.kind = MeasureSpec::Kind::GaussianBump;
  bump.params = {1.0, 0.3};
  bump.normalization = 1.0;
  AdmissibilityReport r2 = admissibility_estimate(realize(bump, dom), probes);
  CHECK(!r2.divergence_flag);
}

TEST_CASE("tol_disc scaling") {
  CHECK(tol_disc(1.0) == doctest::Approx(0.02));
  CHECK(tol_disc(-5.0) == doctest::Approx(0.1));
}
