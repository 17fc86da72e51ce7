// Envelope-projected descent for the Dirichlet problem MA(u) = mu, posed as
// minimization of J_mu over the admissible cone.
#pragma once

#include "mael/energy.hpp"

namespace mael {

struct SolveOptions {
  int max_iters = 200;
  double tol_residual = -1.0;  // L1 norm of MA(u) - mu; < 0 = 0.02 * mass(mu) * h
  double tol_J = 1e-10;        // relative J stagnation
  double step0 = 1.0;
  enum class Start { Zero, ScaledRadial, RandomAdmissible };
  Start start = Start::Zero;
  std::uint64_t seed = 1;      // RandomAdmissible start
  double cg_tol = 1e-10;       // relative residual of the Poisson solve
  int cg_max_iters = 20000;
  // keep iterating past tol_residual until the line search stalls; used by
  // audits that need the discrete minimizer rather than a feasible residual
  bool run_to_stagnation = false;
  EnvelopeOptions env;
};

struct SolveReport {
  std::vector<double> J_trace;
  std::vector<double> residual_trace;    // L1 norm of MA(u) - mu
  std::vector<double> clamp_mass_trace;  // clamped negative-determinant mass
  int iterations = 0;
  bool converged = false;
};

// Solves the Poisson problem -lap(v) = rhs with zero boundary values by
// conjugate gradients; rhs given per node (nonzero on interior only).
GridFunction poisson_solve(const DomainPtr& domain, const std::vector<double>& rhs,
                           double rel_tol = 1e-10, int max_iters = 20000);

// v with lap(v) = mu - MA(u); moving along +v decreases J to first order.
GridFunction descent_direction(const GridFunction& u, const DiscreteMeasure& mu,
                               const SolveOptions& opts = {});

// Armijo backtracking on t -> J(project(u + t v)); 0 signals stagnation.
double line_search(const GridFunction& u, const DiscreteMeasure& mu,
                   const GridFunction& v, const SolveOptions& opts = {});

std::pair<GridFunction, SolveReport> solve_dirichlet(const DiscreteMeasure& mu,
                                                     const SolveOptions& opts = {});

// min(u + t v, 0) pushed back into the admissible cone
GridFunction project_candidate(const GridFunction& u, const GridFunction& v, double t,
                               const EnvelopeOptions& env = {});

double residual_l1(const GridFunction& u, const DiscreteMeasure& mu);

double default_tol_residual(const DiscreteMeasure& mu);

}  // namespace mael
