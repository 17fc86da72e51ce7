#include "mael/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "mael/io.hpp"

namespace mael {

namespace {

double sample_density(const MeasureSpec& spec, const GridDomain& dom, const double* z) {
  switch (spec.kind) {
    case MeasureSpec::Kind::Constant:
      if (spec.params.size() != 1) throw std::invalid_argument("constant measure: one parameter");
      return spec.params[0];
    case MeasureSpec::Kind::RadialProfile: {
      if (spec.params.empty()) throw std::invalid_argument("radial profile: need coefficients");
      double r2 = 0;
      for (int i = 0; i < dom.dim(); ++i) r2 += z[i] * z[i];
      double v = 0, pw = 1;
      for (double c : spec.params) { v += c * pw; pw *= r2; }
      return v;
    }
    case MeasureSpec::Kind::GaussianBump: {
      if (spec.params.size() < 2) throw std::invalid_argument("gaussian bump: need {amp, sigma}");
      double amp = spec.params[0], sigma = spec.params[1];
      if (sigma <= 0) throw std::invalid_argument("gaussian bump: sigma > 0");
      double s = 0;
      for (int i = 0; i < dom.dim(); ++i) {
        double c = spec.params.size() >= std::size_t(2 + dom.dim()) ? spec.params[2 + i] : 0.0;
        s += (z[i] - c) * (z[i] - c);
      }
      return amp * std::exp(-s / (2 * sigma * sigma));
    }
    default:
      throw std::logic_error("unreachable");
  }
}

}  // namespace

DiscreteMeasure realize(const MeasureSpec& spec, const DomainPtr& domain) {
  DiscreteMeasure mu;
  if (spec.kind == MeasureSpec::Kind::CsvPath) {
    mu = read_measure_csv(spec.path, domain);
  } else if (spec.kind == MeasureSpec::Kind::MaOf) {
    if (!spec.source) throw std::invalid_argument("ma-of: missing source function");
    if (!spec.source->domain->same_grid(*domain)) throw std::invalid_argument("ma-of: grid mismatch");
    mu = monge_ampere(*spec.source);
  } else {
    mu = DiscreteMeasure(domain);
    std::vector<double> z(domain->dim());
    for (std::int64_t idx : domain->interior()) {
      domain->node_coords(idx, z.data());
      double d = sample_density(spec, *domain, z.data());
      if (d < 0) throw std::invalid_argument("measure density must be nonnegative");
      mu.density[idx] = d;
    }
    update_mass(mu);
  }
  if (spec.normalization) {
    double target = *spec.normalization;
    if (target < 0) throw std::invalid_argument("normalization: mass target must be nonnegative");
    if (mu.total_mass <= 0 && target > 0)
      throw std::invalid_argument("normalization: cannot rescale a zero measure");
    double f = mu.total_mass > 0 ? target / mu.total_mass : 0.0;
    for (double& d : mu.density) d *= f;
    update_mass(mu);
  }
  return mu;
}

DiscreteMeasure truncate(const DiscreteMeasure& mu, double level) {
  if (level < 0) throw std::invalid_argument("truncate: level must be nonnegative");
  DiscreteMeasure out = mu;
  for (double& d : out.density) d = std::min(d, level);
  update_mass(out);
  return out;
}

}  // namespace mael
