// Real-valued fields on a grid: candidates u with u <= 0 inside, u = 0 on the
// boundary nodes. Values are stored for every node; non-interior nodes hold 0.
#pragma once

#include <functional>
#include <vector>

#include "mael/grid.hpp"

namespace mael {

struct GridFunction {
  DomainPtr domain;
  std::vector<double> values;  // size domain->node_count()

  GridFunction() = default;
  explicit GridFunction(DomainPtr d)
      : domain(std::move(d)), values(domain->node_count(), 0.0) {}

  double& operator[](std::int64_t idx) { return values[idx]; }
  double operator[](std::int64_t idx) const { return values[idx]; }
};

// Samples f at interior nodes; zero elsewhere.
GridFunction make_function(const DomainPtr& domain,
                           const std::function<double(const double*)>& f);

GridFunction zero_function(const DomainPtr& domain);

// c * (|z|^2 - 1) for disc/ball, c * (max_j |z_j|^2 - 1) for the polydisc;
// psh and vanishing on the boundary for c >= 0.
GridFunction radial_paraboloid(const DomainPtr& domain, double c);

// out = a*u + b*v on interior nodes
GridFunction lincomb(double a, const GridFunction& u, double b, const GridFunction& v);
GridFunction scaled(const GridFunction& u, double c);
// min(u, 0) node-wise on interior nodes
GridFunction zero_capped(const GridFunction& u);

double max_abs(const GridFunction& u);
double max_abs_diff(const GridFunction& u, const GridFunction& v);

// Throws when u has NaN/inf values, positive interior values beyond tol, or
// nonzero values off the interior.
void check_function_invariants(const GridFunction& u, double tol = 0.0);

}  // namespace mael
