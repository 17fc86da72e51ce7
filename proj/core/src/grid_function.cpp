#include "mael/grid_function.hpp"

#include <cmath>
#include <stdexcept>

namespace mael {

GridFunction make_function(const DomainPtr& domain,
                           const std::function<double(const double*)>& f) {
  GridFunction u(domain);
  std::vector<double> z(domain->dim());
  for (std::int64_t idx : domain->interior()) {
    domain->node_coords(idx, z.data());
    u.values[idx] = f(z.data());
  }
  return u;
}

GridFunction zero_function(const DomainPtr& domain) { return GridFunction(domain); }

GridFunction radial_paraboloid(const DomainPtr& domain, double c) {
  return make_function(domain, [&](const double* z) {
    double g = domain->gauge(z);
    return c * (g * g - 1.0);
  });
}

GridFunction lincomb(double a, const GridFunction& u, double b, const GridFunction& v) {
  if (!u.domain->same_grid(*v.domain)) throw std::invalid_argument("domain mismatch");
  GridFunction out(u.domain);
  for (std::int64_t idx : u.domain->interior())
    out.values[idx] = a * u.values[idx] + b * v.values[idx];
  return out;
}

GridFunction scaled(const GridFunction& u, double c) {
  GridFunction out(u.domain);
  for (std::int64_t idx : u.domain->interior()) out.values[idx] = c * u.values[idx];
  return out;
}

GridFunction zero_capped(const GridFunction& u) {
  GridFunction out(u.domain);
  for (std::int64_t idx : u.domain->interior())
    out.values[idx] = u.values[idx] < 0.0 ? u.values[idx] : 0.0;
  return out;
}

double max_abs(const GridFunction& u) {
  double m = 0;
  for (std::int64_t idx : u.domain->interior()) m = std::max(m, std::abs(u.values[idx]));
  return m;
}

double max_abs_diff(const GridFunction& u, const GridFunction& v) {
  double m = 0;
  for (std::int64_t idx : u.domain->interior())
    m = std::max(m, std::abs(u.values[idx] - v.values[idx]));
  return m;
}

void check_function_invariants(const GridFunction& u, double tol) {
  const auto& dom = *u.domain;
  if (static_cast<std::int64_t>(u.values.size()) != dom.node_count())
    throw std::invalid_argument("value array size mismatch");
  for (std::int64_t idx = 0; idx < dom.node_count(); ++idx) {
    double v = u.values[idx];
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
    if (dom.is_interior(idx)) {
      if (v > tol) throw std::invalid_argument("positive interior value");
    } else if (v != 0.0) {
      throw std::invalid_argument("nonzero value off the interior");
    }
  }
}

}  // namespace mael
