// Discretized domains in C^n (n = 1 or 2) on a uniform grid over [-1,1]^{2n}.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mael {

enum class Preset { Disc, BallC2, PolydiscC2 };

std::string preset_name(Preset p);
Preset preset_from_name(const std::string& name);
int preset_complex_dim(Preset p);
double preset_volume(Preset p);  // Lebesgue volume of the continuous domain

enum class NodeClass : std::uint8_t { Exterior = 0, Interior = 1, Boundary = 2 };

class GridDomain;
using DomainPtr = std::shared_ptr<const GridDomain>;

// Uniform Cartesian grid over [-1,1]^{2n}. A node is interior when it lies
// strictly inside the continuous domain; boundary nodes are the non-interior
// nodes axis-adjacent to an interior node (they carry the zero Dirichlet
// value). Immutable after construction.
class GridDomain {
 public:
  // resolution must be odd and >= 5 so the origin is a node.
  static DomainPtr build(Preset preset, int resolution);

  Preset preset() const { return preset_; }
  int n() const { return n_; }            // complex dimension
  int dim() const { return 2 * n_; }      // real dimension
  int resolution() const { return res_; }
  double h() const { return h_; }
  std::int64_t node_count() const { return total_; }
  std::int64_t stride(int axis) const { return strides_[axis]; }

  NodeClass node_class(std::int64_t idx) const { return cls_[idx]; }
  bool is_interior(std::int64_t idx) const { return cls_[idx] == NodeClass::Interior; }
  const std::vector<std::int64_t>& interior() const { return interior_; }
  // interior nodes whose whole Hessian stencil (axis arms plus, in dimension
  // 4, the cross-pair diagonals) is interior; the complement (the boundary
  // collar, one stencil arm thick) reads zero Dirichlet values through its
  // arms and is exempt from psh preconditions
  const std::vector<std::int64_t>& interior_core() const { return core_; }
  bool is_core(std::int64_t idx) const { return core_mask_[idx] != 0; }
  // interior nodes split by parity of the index-coordinate sum
  const std::vector<std::int64_t>& interior_red() const { return red_; }
  const std::vector<std::int64_t>& interior_black() const { return black_; }

  // Shortley-Weller stencil of a collar node in dimension 2: arms crossing the
  // boundary are shortened to the gauge = 1 crossing, where the Dirichlet
  // value 0 applies. The Laplacian reads
  //   lap u = (2/h^2) * (sum_k coef[k] * u[arm k] - denom * u[center]),
  // with cut arms dropped from the sum (their value is 0). Empty in dim 4.
  struct CollarStencil {
    std::int64_t idx = 0;
    double coef[4] = {0, 0, 0, 0};  // live arms, order +x, -x, +y, -y
    double denom = 0.0;             // sum over axes of 1/(a*b)
  };
  const std::vector<CollarStencil>& collar_stencils() const { return collar_; }

  // real coordinate of index component k along one axis
  double axis_coord(int k) const { return -1.0 + h_ * k; }
  void node_coords(std::int64_t idx, double* out) const;  // out[dim()]
  void node_index(std::int64_t idx, int* out) const;

  // defining gauge: |z| for disc/ball, max_j |z_j| for the polydisc
  double gauge(const double* z) const;
  bool inside(const double* z) const;  // gauge < 1

  bool same_grid(const GridDomain& other) const;

 private:
  GridDomain() = default;
  Preset preset_{};
  int n_ = 0, res_ = 0;
  double h_ = 0;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> strides_;
  std::vector<NodeClass> cls_;
  std::vector<std::int64_t> interior_, red_, black_, core_;
  std::vector<std::uint8_t> core_mask_;
  std::vector<CollarStencil> collar_;
};

DomainPtr build_domain(Preset preset, int resolution);

// Region descriptor for compact node sets K (compactly contained in the domain).
struct RegionSpec {
  enum class Kind { Empty, Ball, Annulus };
  Kind kind = Kind::Empty;
  std::vector<double> center;  // dim() entries; empty = origin
  double r0 = 0.0;             // inner radius (annulus only)
  double r1 = 0.0;             // outer radius
};

struct NodeSet {
  DomainPtr domain;
  std::vector<std::uint8_t> mask;  // per node; nonzero only on interior nodes
  std::int64_t count = 0;
};

NodeSet node_set(const DomainPtr& domain, const RegionSpec& region);

}  // namespace mael
