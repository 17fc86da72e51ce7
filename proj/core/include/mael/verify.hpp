// Executable audits: derivative formulas, comparison inequality, optimality,
// uniqueness, and the admissibility-condition demonstrators.
#pragma once

#include "mael/io.hpp"
#include "mael/solver.hpp"

namespace mael {

struct SampleRecord {
  std::uint64_t id = 0;
  double gap = 0.0;  // >= 0 means pass
};

struct VerifyReport {
  std::string check_name;
  int samples = 0;
  double worst_gap = 0.0;  // >= -tolerance <=> pass
  double tolerance = 0.0;
  bool pass = false;
  bool informational = false;  // never hard-fails (compactness demonstrator)
  std::vector<SampleRecord> details;

  CheckRecord record(std::uint64_t inputs_hash = 0) const;
};

// Two-sided difference quotients of f(t) = e_1(P(u + t v)) against the exact
// slope (n+1) * integral of (-v) d MA(u); ts holds matched +/- pairs with
// decreasing magnitude. Richardson extrapolation over consecutive magnitudes.
VerifyReport check_energy_derivative(const GridFunction& u, const GridFunction& v,
                                     const std::vector<double>& ts,
                                     double tolerance = -1.0,
                                     const EnvelopeOptions& env = {});

// One-sided slope of t -> J(P(u + t v)) at 0- dominates
// integral of (-v) d MA(u) + integral of v d mu.
VerifyReport check_J_envelope_derivative(const GridFunction& u, const GridFunction& v,
                                         const DiscreteMeasure& mu,
                                         const std::vector<double>& ts,
                                         double tolerance = -1.0,
                                         const EnvelopeOptions& env = {});

// integral over {w < u} of (-v) d MA(w) - same of (-v) d MA(u) >= -tol
VerifyReport check_comparison(const GridFunction& u, const GridFunction& v,
                              const GridFunction& w, double tolerance = -1.0);

// J(u) <= J(sample) + tolerance over seeded admissible audit samples
VerifyReport check_theoremB_optimality(const GridFunction& u, const DiscreteMeasure& mu,
                                       int samples, std::uint64_t seed,
                                       double tolerance = -1.0,
                                       const EnvelopeOptions& env = {});

// pairwise max-norm distance between solves from different starts
VerifyReport check_uniqueness(const DiscreteMeasure& mu,
                              const std::vector<SolveOptions>& starts,
                              double tolerance = -1.0);

// finite pairings over the family, no divergence along the singular probes
VerifyReport check_condition3_membership(const DiscreteMeasure& mu,
                                         const FamilySpec& family,
                                         const EnvelopeOptions& env = {});

// informational epsilon-net demonstrator over an e_1-normalized family
VerifyReport check_condition4_compactness(const DiscreteMeasure& mu,
                                          const FamilySpec& family, double eps_net = 0.1,
                                          const EnvelopeOptions& env = {});

}  // namespace mael
