#include "mael/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mael {

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::Disc: return "disc";
    case Preset::BallC2: return "ball";
    case Preset::PolydiscC2: return "polydisc";
  }
  return "?";
}

Preset preset_from_name(const std::string& name) {
  if (name == "disc") return Preset::Disc;
  if (name == "ball" || name == "ball-c2") return Preset::BallC2;
  if (name == "polydisc" || name == "polydisc-c2") return Preset::PolydiscC2;
  throw std::invalid_argument("unknown domain preset: " + name);
}

int preset_complex_dim(Preset p) { return p == Preset::Disc ? 1 : 2; }

double preset_volume(Preset p) {
  const double pi = std::numbers::pi;
  switch (p) {
    case Preset::Disc: return pi;
    case Preset::BallC2: return pi * pi / 2.0;  // unit ball in R^4
    case Preset::PolydiscC2: return pi * pi;    // product of two unit discs
  }
  return 0;
}

double GridDomain::gauge(const double* z) const {
  if (preset_ == Preset::PolydiscC2) {
    double a = std::sqrt(z[0] * z[0] + z[1] * z[1]);
    double b = std::sqrt(z[2] * z[2] + z[3] * z[3]);
    return a > b ? a : b;
  }
  double s = 0;
  for (int i = 0; i < dim(); ++i) s += z[i] * z[i];
  return std::sqrt(s);
}

bool GridDomain::inside(const double* z) const { return gauge(z) < 1.0; }

void GridDomain::node_coords(std::int64_t idx, double* out) const {
  for (int ax = dim() - 1; ax >= 0; --ax) {
    out[ax] = axis_coord(static_cast<int>(idx % res_));
    idx /= res_;
  }
}

void GridDomain::node_index(std::int64_t idx, int* out) const {
  for (int ax = dim() - 1; ax >= 0; --ax) {
    out[ax] = static_cast<int>(idx % res_);
    idx /= res_;
  }
}

bool GridDomain::same_grid(const GridDomain& other) const {
  return preset_ == other.preset_ && res_ == other.res_;
}

DomainPtr GridDomain::build(Preset preset, int resolution) {
  if (resolution < 5 || resolution % 2 == 0)
    throw std::invalid_argument("resolution must be odd and >= 5, got " +
                                std::to_string(resolution));
  auto dom = std::shared_ptr<GridDomain>(new GridDomain());
  dom->preset_ = preset;
  dom->n_ = preset_complex_dim(preset);
  dom->res_ = resolution;
  dom->h_ = 2.0 / (resolution - 1);
  const int d = dom->dim();
  dom->strides_.assign(d, 1);
  dom->total_ = 1;
  for (int ax = d - 1; ax >= 0; --ax) {
    dom->strides_[ax] = dom->total_;
    dom->total_ *= resolution;
  }
  dom->cls_.assign(dom->total_, NodeClass::Exterior);

  std::vector<double> z(d);
  for (std::int64_t idx = 0; idx < dom->total_; ++idx) {
    dom->node_coords(idx, z.data());
    if (dom->inside(z.data())) dom->cls_[idx] = NodeClass::Interior;
  }
  // boundary: non-interior nodes axis-adjacent to an interior node
  std::vector<int> ix(d);
  for (std::int64_t idx = 0; idx < dom->total_; ++idx) {
    if (dom->cls_[idx] != NodeClass::Interior) continue;
    dom->node_index(idx, ix.data());
    for (int ax = 0; ax < d; ++ax) {
      for (int s : {-1, 1}) {
        int k = ix[ax] + s;
        if (k < 0 || k >= resolution) continue;  // cannot happen for interior nodes
        std::int64_t nb = idx + s * dom->strides_[ax];
        if (dom->cls_[nb] == NodeClass::Exterior) dom->cls_[nb] = NodeClass::Boundary;
      }
    }
  }
  for (std::int64_t idx = 0; idx < dom->total_; ++idx) {
    if (dom->cls_[idx] != NodeClass::Interior) continue;
    dom->interior_.push_back(idx);
    dom->node_index(idx, ix.data());
    int par = 0;
    for (int ax = 0; ax < d; ++ax) par += ix[ax];
    (par % 2 == 0 ? dom->red_ : dom->black_).push_back(idx);
  }
  if (dom->interior_.empty()) throw std::invalid_argument("grid has no interior nodes");
  // core: interior nodes whose Hessian stencil stays interior. The stencil
  // reads the axis arms plus, in dimension 4, the diagonal arms of the four
  // cross pairs (x1,x2), (y1,y2), (x1,y2), (y1,x2) used by the mixed
  // derivatives; nothing else, so the collar is exactly one stencil-arm thick.
  std::vector<std::vector<int>> stencil;
  for (int ax = 0; ax < d; ++ax) {
    for (int s : {-1, 1}) {
      std::vector<int> off(d, 0);
      off[ax] = s;
      stencil.push_back(off);
    }
  }
  if (d == 4) {
    for (auto [a, b] : {std::pair{0, 2}, {1, 3}, {0, 3}, {1, 2}}) {
      for (int sa : {-1, 1}) {
        for (int sb : {-1, 1}) {
          std::vector<int> off(d, 0);
          off[a] = sa;
          off[b] = sb;
          stencil.push_back(off);
        }
      }
    }
  }
  dom->core_mask_.assign(dom->total_, 0);
  for (std::int64_t idx : dom->interior_) {
    dom->node_index(idx, ix.data());
    bool core = true;
    for (const auto& off : stencil) {
      std::int64_t nb = idx;
      bool in_range = true;
      for (int ax = 0; ax < d; ++ax) {
        int k = ix[ax] + off[ax];
        if (k < 0 || k >= resolution) { in_range = false; break; }
        nb += off[ax] * dom->strides_[ax];
      }
      if (!in_range || dom->cls_[nb] != NodeClass::Interior) { core = false; break; }
    }
    if (core) {
      dom->core_mask_[idx] = 1;
      dom->core_.push_back(idx);
    }
  }
  // Shortley-Weller collar stencils (dimension 2 only)
  if (d == 2) {
    // fraction t in (0, 1] with gauge(x + t*h*dir) = 1; the far node is not
    // interior, so the crossing exists on the arm; bisection
    auto arm_fraction = [&](const double* x, int axis, int sign) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        double z[2] = {x[0], x[1]};
        z[axis] += sign * mid * dom->h_;
        (dom->gauge(z) < 1.0 ? lo : hi) = mid;
      }
      return std::max(0.5 * (lo + hi), 1e-6);
    };
    double x[2];
    for (std::int64_t idx : dom->interior_) {
      if (dom->core_mask_[idx]) continue;
      dom->node_coords(idx, x);
      CollarStencil c;
      c.idx = idx;
      for (int axis = 0; axis < 2; ++axis) {
        double a[2];
        for (int s = 0; s < 2; ++s) {
          int sign = s == 0 ? 1 : -1;
          std::int64_t nb = idx + sign * dom->strides_[axis];
          a[s] = dom->cls_[nb] == NodeClass::Interior ? 1.0 : arm_fraction(x, axis, sign);
        }
        double sum = a[0] + a[1];
        for (int s = 0; s < 2; ++s) {
          std::int64_t nb = idx + (s == 0 ? 1 : -1) * dom->strides_[axis];
          c.coef[2 * axis + s] =
              dom->cls_[nb] == NodeClass::Interior ? 1.0 / (a[s] * sum) : 0.0;
        }
        c.denom += 1.0 / (a[0] * a[1]);
      }
      dom->collar_.push_back(c);
    }
  }
  return dom;
}

DomainPtr build_domain(Preset preset, int resolution) {
  return GridDomain::build(preset, resolution);
}

NodeSet node_set(const DomainPtr& domain, const RegionSpec& region) {
  NodeSet out;
  out.domain = domain;
  out.mask.assign(domain->node_count(), 0);
  if (region.kind == RegionSpec::Kind::Empty) return out;
  if (region.r1 < region.r0 || region.r1 < 0)
    throw std::invalid_argument("region radii must satisfy 0 <= r0 <= r1");

  const int d = domain->dim();
  std::vector<double> c(region.center);
  if (c.empty()) c.assign(d, 0.0);
  if (static_cast<int>(c.size()) != d)
    throw std::invalid_argument("region center dimension mismatch");
  // K must be compactly contained: positive margin from the domain boundary
  if (domain->gauge(c.data()) + region.r1 >= 1.0)
    throw std::invalid_argument("region touches the domain boundary (K must be compact in Omega)");

  std::vector<double> z(d);
  for (std::int64_t idx : domain->interior()) {
    domain->node_coords(idx, z.data());
    double s = 0;
    for (int i = 0; i < d; ++i) s += (z[i] - c[i]) * (z[i] - c[i]);
    double r = std::sqrt(s);
    bool in = region.kind == RegionSpec::Kind::Ball ? r <= region.r1
                                                    : (r >= region.r0 && r <= region.r1);
    if (in) {
      out.mask[idx] = 1;
      ++out.count;
    }
  }
  return out;
}

}  // namespace mael
