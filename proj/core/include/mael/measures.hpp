// Target-measure construction: analytic presets, CSV densities, MA images,
// and the truncation used to approximate a measure from below.
#pragma once

#include <optional>
#include <string>

#include "mael/calculus.hpp"

namespace mael {

struct MeasureSpec {
  enum class Kind { Constant, RadialProfile, GaussianBump, CsvPath, MaOf };
  Kind kind = Kind::Constant;
  std::vector<double> params;  // Constant: {c}; RadialProfile: polynomial coeffs in
                               // r^2 (c0 + c1 r^2 + ...); GaussianBump: {amp, sigma,
                               // center...(optional)}
  std::string path;            // CsvPath
  const GridFunction* source = nullptr;  // MaOf
  std::optional<double> normalization;   // rescale to this total mass
};

// Samples the density at interior nodes; optional renormalization to the
// requested total mass. Throws on negative densities and shape mismatches.
DiscreteMeasure realize(const MeasureSpec& spec, const DomainPtr& domain);

// density <- min(density, level), mass recomputed
DiscreteMeasure truncate(const DiscreteMeasure& mu, double level);

}  // namespace mael
