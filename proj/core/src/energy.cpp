#include "mael/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace mael {

double energy_ep(const GridFunction& u, double p) {
  if (!(p > 0)) throw std::invalid_argument("energy_ep: p must be positive");
  DiscreteMeasure ma = monge_ampere(u);
  std::vector<double> w(u.values.size(), 0.0);
  for (std::int64_t idx : u.domain->interior())
    w[idx] = std::pow(-u[idx], p);
  return integrate(w, ma);
}

double functional_J(const GridFunction& u, const DiscreteMeasure& mu) {
  if (!u.domain->same_grid(*mu.domain)) throw std::invalid_argument("grid mismatch");
  return energy_ep(u, 1.0) / (u.domain->n() + 1) + integrate(u, mu);
}

EnergyReport energy_report(const GridFunction& u, double p, const DiscreteMeasure* mu) {
  EnergyReport r;
  r.p = p;
  r.e_p = energy_ep(u, p);
  if (mu) {
    r.has_mu = true;
    r.mu_pairing = -integrate(u, *mu);
    double e1 = p == 1.0 ? r.e_p : energy_ep(u, 1.0);
    r.J = e1 / (u.domain->n() + 1) - r.mu_pairing;
  }
  return r;
}

double holder_gap(const std::vector<GridFunction>& us) {
  if (us.empty()) throw std::invalid_argument("holder_gap: empty tuple");
  const int n = us[0].domain->n();
  if (static_cast<int>(us.size()) != n + 1)
    throw std::invalid_argument("holder_gap: need n+1 functions");
  std::vector<GridFunction> rest(us.begin() + 1, us.end());
  DiscreteMeasure mix = mixed_monge_ampere(rest);
  double lhs = -integrate(us[0], mix);
  double rhs = 1.0;
  for (const auto& u : us) rhs *= std::pow(energy_ep(u, 1.0), 1.0 / (n + 1));
  return rhs - lhs;
}

double triangle_gap(const GridFunction& u, const GridFunction& v) {
  const double q = 1.0 / (u.domain->n() + 1);
  // eigenvalue slacks are additive, so the sum is psh only up to the sum of
  // the two members' default tolerances
  GridFunction sum = lincomb(1.0, u, 1.0, v);
  double eps = default_psh_eps(u) + default_psh_eps(v);
  DiscreteMeasure ma = monge_ampere(sum, eps);
  std::vector<double> w(sum.values.size(), 0.0);
  for (std::int64_t idx : sum.domain->interior()) w[idx] = -sum[idx];
  double lhs = std::pow(integrate(w, ma), q);
  return std::pow(energy_ep(u, 1.0), q) + std::pow(energy_ep(v, 1.0), q) - lhs;
}

AdmissibilityReport admissibility_estimate(const DiscreteMeasure& mu,
                                           const FamilySpec& family,
                                           const EnvelopeOptions& opts) {
  std::vector<GridFunction> members = family_members(mu.domain, family, opts);
  if (members.empty()) throw std::invalid_argument("admissibility: empty family");
  AdmissibilityReport rep;
  rep.family_size = static_cast<int>(members.size());
  const int n = mu.domain->n();
  for (const auto& phi : members) {
    double e1 = energy_ep(phi, 1.0);
    if (e1 <= 0) continue;  // phi == 0 carries no information
    double pairing = -integrate(phi, mu);
    std::vector<double> sq(phi.values.size(), 0.0);
    for (std::int64_t idx : phi.domain->interior()) sq[idx] = phi[idx] * phi[idx];
    double pairing2 = integrate(sq, mu);
    double r1 = pairing / std::pow(e1, 1.0 / (n + 1));
    double r2 = pairing2 / std::pow(e1, 2.0 / (n + 1));
    rep.B_hat = std::max(rep.B_hat, r1);
    rep.A_hat = std::max(rep.A_hat, r2);
    if (family.kind == FamilySpec::Kind::SingularProbe) {
      rep.probe_ratios.push_back(r1);
      rep.probe_ratios_sq.push_back(r2);
    }
  }
  // Blow-up detector: the L^2 ratios along the shrinking probes must grow
  // monotonically and more than double overall. (The L^1 ratios grow too
  // slowly over three decades to separate point-like mass from smooth mass.)
  if (rep.probe_ratios_sq.size() >= 2) {
    bool mono = true;
    for (std::size_t i = 1; i < rep.probe_ratios_sq.size(); ++i)
      if (rep.probe_ratios_sq[i] <= rep.probe_ratios_sq[i - 1]) mono = false;
    if (mono && rep.probe_ratios_sq.front() > 0 &&
        rep.probe_ratios_sq.back() > 2.0 * rep.probe_ratios_sq.front())
      rep.divergence_flag = true;
  }
  return rep;
}

double tol_disc(double scale) { return 0.02 * std::abs(scale); }

}  // namespace mael
