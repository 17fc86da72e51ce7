// Plurisubharmonic envelope P(phi) = sup{ w admissible : w <= phi } and the
// relative extremal function h_K, via projected red-black relaxation sweeps.
#pragma once

#include "mael/calculus.hpp"

namespace mael {

struct EnvelopeOptions {
  double eps_env = -1.0;   // eigenvalue tolerance; < 0 = 1e-8 * ||phi||_inf / h^2
  int max_sweeps = 100000;
  double omega = -1.0;     // SOR factor; < 0 picks 1.8 (n=1) / 1.0 (n=2)
};

struct EnvelopeResult {
  GridFunction w;
  std::vector<std::uint8_t> contact;  // per node: w == min(phi,0) up to tolerance
  int iterations = 0;
  double residual = 0.0;  // max psh violation * h^2 + max obstacle violation at exit
};

class EnvelopeFailure : public std::runtime_error {
 public:
  EnvelopeFailure(int sweeps, double residual);
  int sweeps;
  double residual;
};

// Largest grid function w with w <= min(phi, 0), w = 0 on boundary nodes and
// min Hessian eigenvalue >= -eps at interior nodes. phi must be finite and
// zero off the interior.
EnvelopeResult psh_projection(const GridFunction& phi, const EnvelopeOptions& opts = {});

// Envelope of the obstacle -1 on K, 0 elsewhere.
GridFunction relative_extremal(const NodeSet& K, const EnvelopeOptions& opts = {});

// max over interior nodes of |P(u+tv) - P(u+sv)| - |t-s|(-v); t, s < 0.
double lipschitz_deviation(const GridFunction& u, const GridFunction& v, double t,
                           double s, const EnvelopeOptions& opts = {});

}  // namespace mael
