// Discrete complex differential operators: complex Hessian, Monge-Ampere
// determinant, mixed Monge-Ampere products, and midpoint quadrature.
//
// Normalization: density(MA(u)) = 4^n n! det(H), so that (dd^c|z|^2)^n gives
// 4^n n! and n = 1 reduces to the ordinary Laplacian.
#pragma once

#include <stdexcept>
#include <vector>

#include "mael/grid_function.hpp"

namespace mael {

// Per-interior-node n x n Hermitian matrix H_{jk} ~ d^2 u / dz_j dzbar_k,
// built from second-order central differences. Stencil arms reaching
// non-interior nodes read the stored (zero) values there.
struct HessianField {
  DomainPtr domain;
  int n = 0;
  // entries per interior node, ordered as domain->interior()
  std::vector<double> h11;             // n >= 1
  std::vector<double> h22, re12, im12; // n = 2 only
  double min_eigenvalue(std::size_t k) const;
  double det(std::size_t k) const;
};

struct DiscreteMeasure {
  DomainPtr domain;
  std::vector<double> density;  // per node; nonzero only on interior nodes
  double total_mass = 0.0;

  DiscreteMeasure() = default;
  explicit DiscreteMeasure(DomainPtr d)
      : domain(std::move(d)), density(domain->node_count(), 0.0) {}
};

// recompute total_mass = h^{2n} * sum(density)
void update_mass(DiscreteMeasure& m);

class PshViolation : public std::runtime_error {
 public:
  PshViolation(std::int64_t node, double eig);
  std::int64_t node;    // worst-offending node (linear index)
  double eigenvalue;    // its minimal Hessian eigenvalue
};

// 4^n n!, the density of (dd^c|z|^2)^n
double norm_constant(int n);

HessianField complex_hessian(const GridFunction& u);

// default tolerance for the plurisubharmonicity check: 1e-8 * ||u||_inf / h^2
double default_psh_eps(const GridFunction& u);

// min over interior nodes of the minimal Hessian eigenvalue
double min_hessian_eigenvalue(const HessianField& H, std::int64_t* argmin = nullptr);

struct MAResult {
  DiscreteMeasure measure;
  double clamped_mass = 0.0;  // mass of negative determinants clamped to zero
};

// Throws PshViolation when min eigenvalue < -eps somewhere (eps < 0 = default).
MAResult monge_ampere_ex(const GridFunction& u, double eps = -1.0);
DiscreteMeasure monge_ampere(const GridFunction& u, double eps = -1.0);

// dd^c u_1 ^ ... ^ dd^c u_n via the mixed discriminant (polarization for n=2).
DiscreteMeasure mixed_monge_ampere(const std::vector<GridFunction>& us, double eps = -1.0);

// unclamped densities over interior nodes (ordered as domain->interior());
// test hooks for the polarization-consistency property
std::vector<double> ma_density_raw(const GridFunction& u);
std::vector<double> mixed_density_raw(const std::vector<GridFunction>& us);

// h^{2n} * sum_interior f * density (midpoint rule)
double integrate(const GridFunction& f, const DiscreteMeasure& m);
// weight variant: w indexed by linear node index
double integrate(const std::vector<double>& w, const DiscreteMeasure& m);
double measure_mass(const DiscreteMeasure& m);

}  // namespace mael
