#pragma once

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "coarselab/core.hpp"
#include "coarselab/graph.hpp"

namespace coarselab {

// ---------------------------------------------------------------------------
// Conformal grids
// ---------------------------------------------------------------------------

enum class Stencil { Eight = 8, Sixteen = 16 };

/// Relative length overestimate of a straight segment by stencil paths:
/// 1/cos(half the largest angular gap between stencil directions) - 1.
double stencil_metrication_bound(Stencil stencil);

/// Boolean cell grid. Cell (i, j) sits at (x0 + i*spacing, y0 + j*spacing);
/// storage is row-major with `nx` cells per row.
struct GridMask {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double spacing = 1.0;
  std::vector<std::uint8_t> cells;

  bool at(std::ptrdiff_t i, std::ptrdiff_t j) const {
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(nx) || j >= static_cast<std::ptrdiff_t>(ny)) return false;
    return cells[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)] != 0;
  }
  std::size_t count() const;
};

GridMask rectangle_mask(std::size_t nx, std::size_t ny, double spacing, double x0 = 0.0, double y0 = 0.0);
/// Nodes of the lattice spacing*Z^2 strictly inside the unit disk.
GridMask disk_mask(double spacing);
/// Nodes with |y| < 1 and x in [x_min, x_max]; rows are symmetric about y = 0.
GridMask strip_mask(double x_min, double x_max, double spacing);
/// Strip mask with a disk of radius `puncture_radius` excised around every
/// integer point; only nodes strictly inside the disk are removed.
GridMask strip_minus_integers_mask(double x_min, double x_max, double spacing, double puncture_radius);

/// Run-length rows such as "3x0 5x1 2x0"; the first row is j = 0.
GridMask mask_from_rle(const std::vector<std::string>& rows, double spacing, double x0, double y0);
std::string mask_to_csv(const GridMask& mask);

enum class DensityKind { PoincareDisk, Strip, Quasihyperbolic, UserTable };

/// Boundary used by the quasihyperbolic density 1/dist(z, boundary).
/// `Mask` measures the distance to the nearest excluded cell (or to the grid
/// frame), the other shapes use their exact analytic boundary.
enum class DomainShape { Disk, Strip, StripMinusIntegers, Mask };

struct DensitySpec {
  DensityKind kind = DensityKind::Quasihyperbolic;
  DomainShape domain = DomainShape::Mask;
  /// Row-major values matching the mask's cells (UserTable only).
  std::vector<double> table;

  static DensitySpec poincare_disk() { return {DensityKind::PoincareDisk, DomainShape::Disk, {}}; }
  static DensitySpec strip() { return {DensityKind::Strip, DomainShape::Strip, {}}; }
  static DensitySpec quasihyperbolic(DomainShape shape) { return {DensityKind::Quasihyperbolic, shape, {}}; }
  static DensitySpec user_table(std::vector<double> values) {
    return {DensityKind::UserTable, DomainShape::Mask, std::move(values)};
  }
};

std::string_view to_string(DensityKind kind);
DensityKind density_kind_from_string(std::string_view name);

/// Node <-> cell bookkeeping of a conformal grid.
struct GridLayout {
  GridMask mask;
  std::vector<NodeId> cell_to_node;
  std::vector<std::size_t> node_to_cell;
  std::vector<double> density;
  Stencil stencil = Stencil::Sixteen;
  DensityKind density_kind = DensityKind::Quasihyperbolic;
  double diameter_estimate = 0.0;

  std::pair<double, double> position(NodeId node) const;
  std::pair<std::ptrdiff_t, std::ptrdiff_t> cell(NodeId node) const;
  /// Node at exactly the lattice position (x, y), if the cell is in the mask.
  std::optional<NodeId> node_at(double x, double y) const;
  std::optional<NodeId> node_at_cell(std::ptrdiff_t i, std::ptrdiff_t j) const;
};

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

/// Region of coordinate space used for sampling analytic models.
struct SamplingWindow {
  Real x_min = -5;
  Real x_max = 5;
  Real y_min = -1;
  Real y_max = 1;
  /// Disk only: points are drawn uniformly in |z| < radius.
  Real radius = 0.95L;
};

namespace detail {
struct SpaceData;
}

/// Immutable handle to a metric-space model. Copies share the model.
class Space {
 public:
  static Space poincare_disk();
  /// The strip |Im z| < 1 with its curvature -1 hyperbolic metric.
  static Space hyperbolic_strip();
  /// The unit-radius flat cylinder, points (axial, angle).
  static Space flat_cylinder();
  /// [0, inf) x [-1, 1] with the l1 distance.
  static Space l1_slab();

  SpaceKind kind() const;
  bool discrete() const;
  /// True for handles of the same graph/grid, or analytic models of the same kind.
  bool same_model(const Space& other) const;
  /// Distance tolerance eps_d: 0 for closed-form and graph spaces, the
  /// metrication bound for conformal grids.
  double tolerance() const;

  double distance(const Point& a, const Point& b) const;
  bool contains(const Point& p) const;
  void require(const Point& p) const;

  /// Graph and grid spaces.
  std::size_t node_count() const;
  const WeightedGraph& graph() const;
  /// Null unless this is a conformal grid.
  const GridLayout* grid() const;
  /// Single-source distances; rows are cached.
  std::shared_ptr<const std::vector<double>> distances_from(NodeId source) const;
  /// Dense distance matrix for small graphs (node count <= kDenseLimit), else null.
  const std::vector<double>* dense_distances() const;
  std::vector<NodeId> shortest_path(NodeId a, NodeId b) const;
  Point node_point(NodeId n) const;

  const SamplingWindow& window() const;
  Space with_window(const SamplingWindow& window) const;

  static constexpr std::size_t kDenseLimit = 2048;

 private:
  explicit Space(std::shared_ptr<const detail::SpaceData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::SpaceData> data_;

  friend Space build_graph_space(std::span<const Edge>, std::size_t);
  friend Space build_conformal_grid(const GridMask&, const DensitySpec&, Stencil);
  friend Space make_analytic(SpaceKind);
};

/// Shortest-path metric of a connected graph with positive weights. Node count
/// is max(endpoint)+1 unless `node_count` is larger.
Space build_graph_space(std::span<const Edge> edges, std::size_t node_count = 0);

/// Weighted lattice graph whose edge weight is the trapezoidal average of the
/// density at both endpoints times the Euclidean edge length.
Space build_conformal_grid(const GridMask& mask, const DensitySpec& density, Stencil stencil = Stencil::Sixteen);

/// Deterministic sample of n points, uniform in the coordinate measure of the
/// space's sampling window (uniform over nodes, without repetition while
/// n <= node count).
std::vector<Point> sample_points(const Space& space, std::size_t n, std::uint64_t seed);
Point draw_point(const Space& space, std::mt19937_64& rng);

/// Point at distance r from x in direction `angle` (analytic spaces). On the
/// cylinder and slab the distance is at most r when the move wraps or clips.
Point offset_point(const Space& space, const Point& x, Real r, Real angle);

/// Closed-form hyperbolic distance helpers shared with other modules.
Real disk_distance(Complex z, Complex w);
Real strip_distance(Complex z, Complex w);
/// Conformal map of the strip |Im z| < 1 onto the disk and its inverse.
Complex strip_to_disk(Complex z);
Complex disk_to_strip(Complex w);

}  // namespace coarselab
