// Pluricomplex p-energies, the variational functional J_mu, and inequality
// gap computations (Holder with constant 1, triangle, admissibility ratios).
#pragma once

#include "mael/families.hpp"

namespace mael {

struct EnergyReport {
  double e_p = 0.0;
  double p = 1.0;
  double J = 0.0;           // valid when mu supplied
  double mu_pairing = 0.0;  // integral of (-u) d mu
  bool has_mu = false;
};

// integrate((-u)^p, monge_ampere(u))
double energy_ep(const GridFunction& u, double p);

// e_1(u)/(n+1) + integral of u d mu
double functional_J(const GridFunction& u, const DiscreteMeasure& mu);

EnergyReport energy_report(const GridFunction& u, double p,
                           const DiscreteMeasure* mu = nullptr);

// prod e_1(u_i)^{1/(n+1)} - integrate(-u_0, dd^c u_1 ^ ... ^ dd^c u_n);
// us has n+1 entries, u_0 first. Nonnegative up to discretization error.
double holder_gap(const std::vector<GridFunction>& us);

// e_1(u)^{1/(n+1)} + e_1(v)^{1/(n+1)} - e_1(u+v)^{1/(n+1)}
double triangle_gap(const GridFunction& u, const GridFunction& v);

struct AdmissibilityReport {
  double B_hat = 0.0;  // max over family of int(-phi)dmu / e_1(phi)^{1/(n+1)}
  double A_hat = 0.0;  // max over family of int phi^2 dmu / e_1(phi)^{2/(n+1)}
  int family_size = 0;
  bool divergence_flag = false;       // singular-probe ratios blowing up
  std::vector<double> probe_ratios;   // L^1 ratio per probe eps (singular family)
  std::vector<double> probe_ratios_sq;
};

AdmissibilityReport admissibility_estimate(const DiscreteMeasure& mu,
                                           const FamilySpec& family,
                                           const EnvelopeOptions& opts = {});

// grid-calibrated default inequality tolerance: 0.02 * scale
double tol_disc(double scale);

}  // namespace mael
