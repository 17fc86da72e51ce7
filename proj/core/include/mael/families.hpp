// Seeded test-function families: random admissible candidates and the
// singular logarithmic probe family.
#pragma once

#include <cstdint>

#include "mael/envelope.hpp"

namespace mael {

// Deterministic RNG (splitmix64) with hand-mapped doubles, so streams are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 1) {}
  std::uint64_t next_u64();
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
 private:
  std::uint64_t state_;
};

struct FamilySpec {
  enum class Kind { SeededSmooth, SingularProbe };
  Kind kind = Kind::SeededSmooth;
  std::uint64_t seed = 1;
  int size = 20;                    // SeededSmooth member count
  std::vector<double> eps = {1e-1, 1e-2, 1e-3};  // SingularProbe radii
};

// Sum of paraboloid wells and smoothed log terms, zero-capped, multiplied by a
// cutoff vanishing quadratically at the boundary, then envelope-projected.
GridFunction random_admissible(const DomainPtr& domain, Rng& rng,
                               const EnvelopeOptions& opts = {});

// max(log|z|, log eps) / |log eps|  (|z| the Euclidean norm; psh, in [-1, 0])
GridFunction log_probe(const DomainPtr& domain, double eps);

// SeededSmooth: scaled radial paraboloids (deterministic anchors) followed by
// seeded random members. SingularProbe: log_probe per eps.
std::vector<GridFunction> family_members(const DomainPtr& domain, const FamilySpec& spec,
                                         const EnvelopeOptions& opts = {});

}  // namespace mael
