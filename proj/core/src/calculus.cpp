#include "mael/calculus.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mael {

double HessianField::min_eigenvalue(std::size_t k) const {
  if (n == 1) return h11[k];
  double a = h11[k], d = h22[k];
  double off2 = re12[k] * re12[k] + im12[k] * im12[k];
  double disc = std::sqrt((a - d) * (a - d) + 4.0 * off2);
  return 0.5 * (a + d - disc);
}

double HessianField::det(std::size_t k) const {
  if (n == 1) return h11[k];
  return h11[k] * h22[k] - re12[k] * re12[k] - im12[k] * im12[k];
}

void update_mass(DiscreteMeasure& m) {
  const auto& dom = *m.domain;
  double s = 0;
  for (std::int64_t idx : dom.interior()) s += m.density[idx];
  double w = 1;
  for (int i = 0; i < dom.dim(); ++i) w *= dom.h();
  m.total_mass = w * s;
}

PshViolation::PshViolation(std::int64_t node_, double eig_)
    : std::runtime_error("plurisubharmonicity check failed at node " +
                         std::to_string(node_) + " (min eigenvalue " +
                         std::to_string(eig_) + "); project via the envelope first"),
      node(node_), eigenvalue(eig_) {}

namespace {
// second central difference along one axis
inline double d2(const std::vector<double>& v, std::int64_t idx, std::int64_t s, double inv_h2) {
  return (v[idx + s] + v[idx - s] - 2.0 * v[idx]) * inv_h2;
}
// mixed central difference along two axes
inline double dcross(const std::vector<double>& v, std::int64_t idx, std::int64_t s1,
                     std::int64_t s2, double inv_4h2) {
  return (v[idx + s1 + s2] + v[idx - s1 - s2] - v[idx + s1 - s2] - v[idx - s1 + s2]) * inv_4h2;
}
}  // namespace

HessianField complex_hessian(const GridFunction& u) {
  const auto& dom = *u.domain;
  HessianField H;
  H.domain = u.domain;
  H.n = dom.n();
  const auto& nodes = dom.interior();
  const double inv_h2 = 1.0 / (dom.h() * dom.h());
  const double inv_4h2 = 0.25 * inv_h2;
  const auto& v = u.values;
  H.h11.resize(nodes.size());
  if (H.n == 1) {
    const std::int64_t sx = dom.stride(0), sy = dom.stride(1);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      std::int64_t idx = nodes[k];
      H.h11[k] = 0.25 * (d2(v, idx, sx, inv_h2) + d2(v, idx, sy, inv_h2));
    }
  } else {
    H.h22.resize(nodes.size());
    H.re12.resize(nodes.size());
    H.im12.resize(nodes.size());
    const std::int64_t sx1 = dom.stride(0), sy1 = dom.stride(1);
    const std::int64_t sx2 = dom.stride(2), sy2 = dom.stride(3);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      std::int64_t idx = nodes[k];
      H.h11[k] = 0.25 * (d2(v, idx, sx1, inv_h2) + d2(v, idx, sy1, inv_h2));
      H.h22[k] = 0.25 * (d2(v, idx, sx2, inv_h2) + d2(v, idx, sy2, inv_h2));
      // d^2/dz_1 dzbar_2 = 1/4 (Dx1x2 + Dy1y2) + i/4 (Dx1y2 - Dy1x2)
      H.re12[k] = 0.25 * (dcross(v, idx, sx1, sx2, inv_4h2) + dcross(v, idx, sy1, sy2, inv_4h2));
      H.im12[k] = 0.25 * (dcross(v, idx, sx1, sy2, inv_4h2) - dcross(v, idx, sy1, sx2, inv_4h2));
    }
  }
  return H;
}

double default_psh_eps(const GridFunction& u) {
  double m = max_abs(u);
  double h = u.domain->h();
  return 1e-8 * (m > 0 ? m : 1.0) / (h * h);
}

double min_hessian_eigenvalue(const HessianField& H, std::int64_t* argmin) {
  const auto& nodes = H.domain->interior();
  double worst = std::numeric_limits<double>::infinity();
  std::int64_t worst_node = -1;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double e = H.min_eigenvalue(k);
    if (e < worst) {
      worst = e;
      worst_node = nodes[k];
    }
  }
  if (argmin) *argmin = worst_node;
  return worst;
}

double norm_constant(int n) { return n == 1 ? 4.0 : 32.0; }  // 4^n n!

namespace {
// Shortley-Weller d^2/dz dzbar at a dimension-2 collar node: arms shortened
// to the true boundary, cut arms carrying the zero Dirichlet value
double collar_dzdzbar(const GridDomain::CollarStencil& c, const std::vector<double>& v,
                      const GridDomain& dom) {
  double num = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (c.coef[k] == 0.0) continue;
    int axis = k / 2, sign = k % 2 == 0 ? 1 : -1;
    num += c.coef[k] * v[c.idx + sign * dom.stride(axis)];
  }
  return 0.5 * (num - c.denom * v[c.idx]) / (dom.h() * dom.h());
}

// The central-difference check covers core nodes only: collar nodes read zero
// Dirichlet values through their stencil arms, which makes even smooth psh
// data look concave there. In dimension 2 the collar is checked with the
// Shortley-Weller stencil instead; in dimension 4 its densities are computed
// by the plain stencil and clamped.
void require_psh(const GridFunction& u, const HessianField& H, double eps) {
  if (eps < 0) eps = default_psh_eps(u);
  const auto& dom = *u.domain;
  const auto& nodes = dom.interior();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!dom.is_core(nodes[k])) continue;
    double e = H.min_eigenvalue(k);
    if (e < -eps) throw PshViolation(nodes[k], e);
  }
  for (const auto& c : dom.collar_stencils()) {
    double e = collar_dzdzbar(c, u.values, dom);
    if (e < -eps) throw PshViolation(c.idx, e);
  }
}
}  // namespace

MAResult monge_ampere_ex(const GridFunction& u, double eps) {
  const auto& dom = *u.domain;
  HessianField H = complex_hessian(u);
  require_psh(u, H, eps);
  MAResult out;
  out.measure = DiscreteMeasure(u.domain);
  const double c = norm_constant(dom.n());
  const auto& nodes = dom.interior();
  const bool sw_collar = !dom.collar_stencils().empty();
  double clamped = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (sw_collar && !dom.is_core(nodes[k])) continue;  // handled below
    double d = c * H.det(k);
    if (d < 0) {
      clamped -= d;
      d = 0;
    }
    out.measure.density[nodes[k]] = d;
  }
  // dimension 2: collar densities come from the Shortley-Weller Laplacian
  // (density = 4 * dzdzbar = lap), consistent with the envelope constraint
  for (const auto& cs : dom.collar_stencils()) {
    double d = 4.0 * collar_dzdzbar(cs, u.values, dom);
    if (d < 0) {
      clamped -= d;
      d = 0;
    }
    out.measure.density[cs.idx] = d;
  }
  double w = 1;
  for (int i = 0; i < dom.dim(); ++i) w *= dom.h();
  out.clamped_mass = clamped * w;
  update_mass(out.measure);
  return out;
}

DiscreteMeasure monge_ampere(const GridFunction& u, double eps) {
  return monge_ampere_ex(u, eps).measure;
}

DiscreteMeasure mixed_monge_ampere(const std::vector<GridFunction>& us, double eps) {
  if (us.empty()) throw std::invalid_argument("mixed_monge_ampere: empty argument list");
  const auto& dom = *us[0].domain;
  const int n = dom.n();
  if (static_cast<int>(us.size()) != n)
    throw std::invalid_argument("mixed_monge_ampere: expected " + std::to_string(n) +
                                " functions, got " + std::to_string(us.size()));
  for (const auto& u : us)
    if (!u.domain->same_grid(dom)) throw std::invalid_argument("domain mismatch");
  if (n == 1) return monge_ampere(us[0], eps);

  HessianField A = complex_hessian(us[0]);
  require_psh(us[0], A, eps);
  HessianField B = complex_hessian(us[1]);
  require_psh(us[1], B, eps);
  DiscreteMeasure out(us[0].domain);
  const double c = norm_constant(n);
  const auto& nodes = dom.interior();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    // MixedDet(A,B) = (det(A+B) - det A - det B) / 2
    double md = 0.5 * (A.h11[k] * B.h22[k] + A.h22[k] * B.h11[k]) -
                A.re12[k] * B.re12[k] - A.im12[k] * B.im12[k];
    out.density[nodes[k]] = std::max(0.0, c * md);
  }
  update_mass(out);
  return out;
}

std::vector<double> ma_density_raw(const GridFunction& u) {
  HessianField H = complex_hessian(u);
  const double c = norm_constant(H.n);
  std::vector<double> out(H.h11.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * H.det(k);
  return out;
}

std::vector<double> mixed_density_raw(const std::vector<GridFunction>& us) {
  const int n = us[0].domain->n();
  if (n == 1) return ma_density_raw(us[0]);
  HessianField A = complex_hessian(us[0]);
  HessianField B = complex_hessian(us[1]);
  const double c = norm_constant(n);
  std::vector<double> out(A.h11.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double md = 0.5 * (A.h11[k] * B.h22[k] + A.h22[k] * B.h11[k]) -
                A.re12[k] * B.re12[k] - A.im12[k] * B.im12[k];
    out[k] = c * md;
  }
  return out;
}

double integrate(const GridFunction& f, const DiscreteMeasure& m) {
  if (!f.domain->same_grid(*m.domain)) throw std::invalid_argument("domain mismatch");
  const auto& dom = *m.domain;
  double s = 0;
  for (std::int64_t idx : dom.interior()) s += f.values[idx] * m.density[idx];
  double w = 1;
  for (int i = 0; i < dom.dim(); ++i) w *= dom.h();
  return w * s;
}

double integrate(const std::vector<double>& w, const DiscreteMeasure& m) {
  const auto& dom = *m.domain;
  if (static_cast<std::int64_t>(w.size()) != dom.node_count())
    throw std::invalid_argument("weight size mismatch");
  double s = 0;
  for (std::int64_t idx : dom.interior()) s += w[idx] * m.density[idx];
  double cell = 1;
  for (int i = 0; i < dom.dim(); ++i) cell *= dom.h();
  return cell * s;
}

double measure_mass(const DiscreteMeasure& m) { return m.total_mass; }

}  // namespace mael
