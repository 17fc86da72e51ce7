#include "mael/families.hpp"

#include <cmath>
#include <stdexcept>

namespace mael {

std::uint64_t Rng::next_u64() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  double u = (next_u64() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

GridFunction random_admissible(const DomainPtr& domain, Rng& rng,
                               const EnvelopeOptions& opts) {
  const int d = domain->dim();
  struct Well { std::vector<double> a; double c, r2; };
  struct LogTerm { std::vector<double> a; double c, R, m; };
  std::vector<Well> wells(rng.uniform_int(1, 5));
  for (auto& w : wells) {
    w.a.resize(d);
    for (int i = 0; i < d; ++i) w.a[i] = rng.uniform(-0.3, 0.3);
    w.c = rng.uniform(0.2, 1.5);
    double r = rng.uniform(0.3, 1.0);
    w.r2 = r * r;
  }
  std::vector<LogTerm> logs(rng.uniform_int(0, 2));
  for (auto& l : logs) {
    l.a.resize(d);
    for (int i = 0; i < d; ++i) l.a[i] = rng.uniform(-0.3, 0.3);
    l.c = rng.uniform(0.1, 1.0);
    l.R = rng.uniform(0.8, 1.5);
    l.m = rng.uniform(-3.0, -1.0);
  }
  GridFunction phi = make_function(domain, [&](const double* z) {
    double g = 0;
    for (const auto& w : wells) {
      double s = 0;
      for (int i = 0; i < d; ++i) s += (z[i] - w.a[i]) * (z[i] - w.a[i]);
      g += w.c * (s - w.r2);
    }
    for (const auto& l : logs) {
      double s = 0;
      for (int i = 0; i < d; ++i) s += (z[i] - l.a[i]) * (z[i] - l.a[i]);
      double lg = s > 0 ? 0.5 * std::log(s / (l.R * l.R)) : l.m;
      g += l.c * std::max(lg, l.m) / std::abs(l.m);
    }
    double rho = domain->gauge(z);
    double cut = (1.0 - rho * rho) * (1.0 - rho * rho);
    return std::min(g, 0.0) * cut;
  });
  return psh_projection(phi, opts).w;
}

GridFunction log_probe(const DomainPtr& domain, double eps) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("log_probe: eps must be in (0,1)");
  const int d = domain->dim();
  const double le = std::log(eps);
  GridFunction phi = make_function(domain, [&](const double* z) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += z[i] * z[i];
    double lg = s > 0 ? 0.5 * std::log(s) : le;
    return std::min(std::max(lg, le) / (-le), 0.0);
  });
  // the sampled kink is psh only up to O(h^2) curvature error; project it
  return psh_projection(phi).w;
}

std::vector<GridFunction> family_members(const DomainPtr& domain, const FamilySpec& spec,
                                         const EnvelopeOptions& opts) {
  std::vector<GridFunction> out;
  if (spec.kind == FamilySpec::Kind::SingularProbe) {
    for (double e : spec.eps) out.push_back(log_probe(domain, e));
    return out;
  }
  if (spec.size <= 0) throw std::invalid_argument("empty family");
  const double anchors[] = {1.0, 0.5, 2.0};
  for (int i = 0; i < spec.size && i < 3; ++i)
    // projected: the polydisc paraboloid has a kink along |z_1| = |z_2| that
    // the cross-difference stencil reads as concave
    out.push_back(psh_projection(radial_paraboloid(domain, anchors[i]), opts).w);
  Rng rng(spec.seed);
  while (static_cast<int>(out.size()) < spec.size)
    out.push_back(random_admissible(domain, rng, opts));
  return out;
}

}  // namespace mael
