#include "coarselab/space.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace coarselab {

namespace detail {

struct SpaceData {
  SpaceKind kind = SpaceKind::Graph;
  double eps = 0.0;
  SamplingWindow window;
  WeightedGraph graph;
  std::vector<double> dense;
  std::optional<GridLayout> grid;
  std::size_t cache_capacity = 16;

  mutable std::mutex mutex;
  mutable std::list<std::pair<NodeId, std::shared_ptr<const std::vector<double>>>> cache;

  SpaceData() = default;
  SpaceData(const SpaceData& other)
      : kind(other.kind),
        eps(other.eps),
        window(other.window),
        graph(other.graph),
        dense(other.dense),
        grid(other.grid),
        cache_capacity(other.cache_capacity) {}
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Names and points
// ---------------------------------------------------------------------------

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Graph: return "graph";
    case SpaceKind::PoincareDisk: return "poincare-disk";
    case SpaceKind::HyperbolicStrip: return "hyperbolic-strip";
    case SpaceKind::FlatCylinder: return "flat-cylinder";
    case SpaceKind::L1Slab: return "l1-slab";
    case SpaceKind::ConformalGrid: return "conformal-grid";
  }
  return "unknown";
}

SpaceKind space_kind_from_string(std::string_view name) {
  for (SpaceKind k : {SpaceKind::Graph, SpaceKind::PoincareDisk, SpaceKind::HyperbolicStrip,
                      SpaceKind::FlatCylinder, SpaceKind::L1Slab, SpaceKind::ConformalGrid}) {
    if (to_string(k) == name) return k;
  }
  throw Rejection("unknown space kind '" + std::string(name) + "'");
}

std::string_view to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::PoincareDisk: return "poincare-disk-density";
    case DensityKind::Strip: return "strip-density";
    case DensityKind::Quasihyperbolic: return "quasihyperbolic";
    case DensityKind::UserTable: return "user-table";
  }
  return "unknown";
}

DensityKind density_kind_from_string(std::string_view name) {
  for (DensityKind k : {DensityKind::PoincareDisk, DensityKind::Strip, DensityKind::Quasihyperbolic,
                        DensityKind::UserTable}) {
    if (to_string(k) == name) return k;
  }
  throw Rejection("unknown density selector '" + std::string(name) + "'");
}

Real reduce_angle(Real angle) {
  Real r = std::fmod(angle, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0;
  return r;
}

Point Point::cylinder(Real axial, Real angle) { return {SpaceKind::FlatCylinder, 0, axial, reduce_angle(angle)}; }

std::string describe(const Point& p) {
  std::ostringstream out;
  out << to_string(p.kind) << '(';
  if (p.discrete()) {
    out << "node " << p.node;
  } else {
    out << static_cast<double>(p.x) << ", " << static_cast<double>(p.y);
  }
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

Real disk_distance(Complex z, Complex w) {
  const Real num = std::abs(z - w);
  const Real den = std::sqrt((1 - std::norm(z)) * (1 - std::norm(w)));
  return 2 * std::asinh(num / den);
}

Real strip_distance(Complex z, Complex w) {
  // Pull back of the right half-plane metric under z -> exp(pi z / 2).
  const Real du = kPi * (z.real() - w.real()) / 4;
  const Real dv = kPi * (z.imag() - w.imag()) / 4;
  const Real s = std::sinh(du);
  const Real t = std::sin(dv);
  const Real den = std::cos(kPi * z.imag() / 2) * std::cos(kPi * w.imag() / 2);
  return 2 * std::asinh(std::sqrt((s * s + t * t) / den));
}

Complex strip_to_disk(Complex z) { return std::tanh(kPi * z / Real(4)); }

Complex disk_to_strip(Complex w) { return Real(4) / kPi * std::atanh(w); }

namespace {

Real cylinder_distance(const Point& a, const Point& b) {
  const Real dx = a.x - b.x;
  Real dtheta = std::fabs(reduce_angle(a.y) - reduce_angle(b.y));
  dtheta = std::min(dtheta, kTwoPi - dtheta);
  return std::sqrt(dx * dx + dtheta * dtheta);
}

}  // namespace

// ---------------------------------------------------------------------------
// Masks
// ---------------------------------------------------------------------------

double stencil_metrication_bound(Stencil stencil) {
  const double half_gap = stencil == Stencil::Eight ? std::numbers::pi / 8 : std::atan(0.5) / 2;
  return 1.0 / std::cos(half_gap) - 1.0;
}

std::size_t GridMask::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

GridMask rectangle_mask(std::size_t nx, std::size_t ny, double spacing, double x0, double y0) {
  if (!(spacing > 0.0)) throw Rejection("grid spacing must be positive");
  return GridMask{nx, ny, x0, y0, spacing, std::vector<std::uint8_t>(nx * ny, 1)};
}

GridMask disk_mask(double spacing) {
  if (!(spacing > 0.0)) throw Rejection("grid spacing must be positive");
  const auto n = static_cast<std::ptrdiff_t>(std::floor(1.0 / spacing));
  const std::size_t side = static_cast<std::size_t>(2 * n + 1);
  GridMask mask{side, side, -static_cast<double>(n) * spacing, -static_cast<double>(n) * spacing, spacing,
                std::vector<std::uint8_t>(side * side, 0)};
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t i = 0; i < side; ++i) {
      const double x = mask.x0 + static_cast<double>(i) * spacing;
      const double y = mask.y0 + static_cast<double>(j) * spacing;
      mask.cells[j * side + i] = (x * x + y * y < 1.0 - 1e-12) ? 1 : 0;
    }
  }
  return mask;
}

GridMask strip_mask(double x_min, double x_max, double spacing) {
  if (!(spacing > 0.0)) throw Rejection("grid spacing must be positive");
  if (!(x_max > x_min)) throw Rejection("strip window must have x_max > x_min");
  auto half_rows = static_cast<std::ptrdiff_t>(std::floor(1.0 / spacing));
  while (static_cast<double>(half_rows) * spacing >= 1.0 - 1e-12) --half_rows;
  const auto nx = static_cast<std::size_t>(std::llround((x_max - x_min) / spacing)) + 1;
  const auto ny = static_cast<std::size_t>(2 * half_rows + 1);
  return GridMask{nx, ny, x_min, -static_cast<double>(half_rows) * spacing, spacing,
                  std::vector<std::uint8_t>(nx * ny, 1)};
}

GridMask strip_minus_integers_mask(double x_min, double x_max, double spacing, double puncture_radius) {
  if (!(puncture_radius > 0.0)) throw Rejection("puncture radius must be positive");
  GridMask mask = strip_mask(x_min, x_max, spacing);
  const double r = puncture_radius * (1.0 - 1e-9);
  for (std::size_t j = 0; j < mask.ny; ++j) {
    for (std::size_t i = 0; i < mask.nx; ++i) {
      const double x = mask.x0 + static_cast<double>(i) * spacing;
      const double y = mask.y0 + static_cast<double>(j) * spacing;
      if (std::hypot(x - std::round(x), y) < r) mask.cells[j * mask.nx + i] = 0;
    }
  }
  return mask;
}

GridMask mask_from_rle(const std::vector<std::string>& rows, double spacing, double x0, double y0) {
  if (!(spacing > 0.0)) throw Rejection("grid spacing must be positive");
  GridMask mask;
  mask.spacing = spacing;
  mask.x0 = x0;
  mask.y0 = y0;
  std::vector<std::vector<std::uint8_t>> decoded;
  for (const std::string& row : rows) {
    std::istringstream in(row);
    std::string token;
    std::vector<std::uint8_t> cells;
    while (in >> token) {
      const auto sep = token.find('x');
      if (sep == std::string::npos) throw Rejection("bad run-length token '" + token + "'");
      const std::size_t run = std::stoul(token.substr(0, sep));
      const std::string value = token.substr(sep + 1);
      if (value != "0" && value != "1") throw Rejection("bad run-length value in '" + token + "'");
      cells.insert(cells.end(), run, value == "1" ? 1 : 0);
    }
    decoded.push_back(std::move(cells));
  }
  if (decoded.empty()) throw Rejection("empty mask");
  mask.nx = decoded.front().size();
  mask.ny = decoded.size();
  for (const auto& row : decoded) {
    if (row.size() != mask.nx) throw Rejection("run-length rows have different lengths");
    mask.cells.insert(mask.cells.end(), row.begin(), row.end());
  }
  return mask;
}

std::string mask_to_csv(const GridMask& mask) {
  std::string out;
  for (std::size_t j = 0; j < mask.ny; ++j) {
    for (std::size_t i = 0; i < mask.nx; ++i) {
      if (i) out += ',';
      out += mask.cells[j * mask.nx + i] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid layout
// ---------------------------------------------------------------------------

std::pair<std::ptrdiff_t, std::ptrdiff_t> GridLayout::cell(NodeId node) const {
  const std::size_t c = node_to_cell.at(node);
  return {static_cast<std::ptrdiff_t>(c % mask.nx), static_cast<std::ptrdiff_t>(c / mask.nx)};
}

std::pair<double, double> GridLayout::position(NodeId node) const {
  auto [i, j] = cell(node);
  return {mask.x0 + static_cast<double>(i) * mask.spacing, mask.y0 + static_cast<double>(j) * mask.spacing};
}

std::optional<NodeId> GridLayout::node_at_cell(std::ptrdiff_t i, std::ptrdiff_t j) const {
  if (!mask.at(i, j)) return std::nullopt;
  return cell_to_node[static_cast<std::size_t>(j) * mask.nx + static_cast<std::size_t>(i)];
}

std::optional<NodeId> GridLayout::node_at(double x, double y) const {
  const double fi = (x - mask.x0) / mask.spacing;
  const double fj = (y - mask.y0) / mask.spacing;
  const double ri = std::round(fi);
  const double rj = std::round(fj);
  if (std::fabs(fi - ri) > 1e-6 || std::fabs(fj - rj) > 1e-6) return std::nullopt;
  return node_at_cell(static_cast<std::ptrdiff_t>(ri), static_cast<std::ptrdiff_t>(rj));
}

namespace {

/// Exact Euclidean distance transform (squared, in cell units) to the nearest
/// cell with `feature` set; two passes of the lower-envelope algorithm.
std::vector<double> squared_distance_transform(const std::vector<std::uint8_t>& feature, std::size_t nx,
                                               std::size_t ny) {
  constexpr double big = 1e30;
  std::vector<double> grid(nx * ny);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = feature[k] ? 0.0 : big;

  auto transform_1d = [](std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    std::vector<std::size_t> v(n);
    std::vector<double> z(n + 1);
    std::size_t k = 0;
    v[0] = 0;
    z[0] = -big;
    z[1] = big;
    for (std::size_t q = 1; q < n; ++q) {
      double s;
      while (true) {
        const auto p = static_cast<double>(v[k]);
        const auto qq = static_cast<double>(q);
        s = ((f[q] + qq * qq) - (f[v[k]] + p * p)) / (2 * qq - 2 * p);
        if (s <= z[k] && k > 0) {
          --k;
        } else {
          break;
        }
      }
      if (s <= z[k]) {
        v[k] = q;
        z[k] = -big;
        z[k + 1] = big;
        continue;
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = big;
    }
    k = 0;
    for (std::size_t q = 0; q < n; ++q) {
      while (z[k + 1] < static_cast<double>(q)) ++k;
      const double diff = static_cast<double>(q) - static_cast<double>(v[k]);
      d[q] = diff * diff + f[v[k]];
    }
    f = std::move(d);
  };

  std::vector<double> line;
  for (std::size_t j = 0; j < ny; ++j) {
    line.assign(grid.begin() + static_cast<std::ptrdiff_t>(j * nx),
                grid.begin() + static_cast<std::ptrdiff_t>((j + 1) * nx));
    transform_1d(line);
    std::copy(line.begin(), line.end(), grid.begin() + static_cast<std::ptrdiff_t>(j * nx));
  }
  line.resize(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) line[j] = grid[j * nx + i];
    transform_1d(line);
    for (std::size_t j = 0; j < ny; ++j) grid[j * nx + i] = line[j];
  }
  return grid;
}

std::vector<double> compute_density(const GridLayout& layout, const DensitySpec& spec) {
  const GridMask& mask = layout.mask;
  const std::size_t n = layout.node_to_cell.size();
  std::vector<double> density(n);

  std::vector<double> edt;
  std::size_t pad_nx = 0;
  if (spec.kind == DensityKind::Quasihyperbolic && spec.domain == DomainShape::Mask) {
    // Pad by one cell so the grid frame counts as boundary.
    pad_nx = mask.nx + 2;
    const std::size_t pad_ny = mask.ny + 2;
    std::vector<std::uint8_t> feature(pad_nx * pad_ny, 1);
    for (std::size_t j = 0; j < mask.ny; ++j) {
      for (std::size_t i = 0; i < mask.nx; ++i) {
        feature[(j + 1) * pad_nx + i + 1] = mask.cells[j * mask.nx + i] ? 0 : 1;
      }
    }
    edt = squared_distance_transform(feature, pad_nx, pad_ny);
  }
  if (spec.kind == DensityKind::UserTable && spec.table.size() != mask.cells.size()) {
    throw Rejection("user density table must have one value per mask cell");
  }

  for (NodeId v = 0; v < n; ++v) {
    auto [x, y] = layout.position(v);
    double rho = 0.0;
    switch (spec.kind) {
      case DensityKind::PoincareDisk: rho = 2.0 / (1.0 - (x * x + y * y)); break;
      case DensityKind::Strip: rho = (std::numbers::pi / 2) / std::cos(std::numbers::pi * y / 2); break;
      case DensityKind::UserTable: rho = spec.table[layout.node_to_cell[v]]; break;
      case DensityKind::Quasihyperbolic: {
        double dist = 0.0;
        switch (spec.domain) {
          case DomainShape::Disk: dist = 1.0 - std::hypot(x, y); break;
          case DomainShape::Strip: dist = 1.0 - std::fabs(y); break;
          case DomainShape::StripMinusIntegers:
            dist = std::min(1.0 - std::fabs(y), std::hypot(x - std::round(x), y));
            break;
          case DomainShape::Mask: {
            auto [i, j] = layout.cell(v);
            const std::size_t c = static_cast<std::size_t>(j + 1) * pad_nx + static_cast<std::size_t>(i + 1);
            dist = std::sqrt(edt[c]) * mask.spacing;
            break;
          }
        }
        rho = 1.0 / dist;
        break;
      }
    }
    if (!std::isfinite(rho) || !(rho > 0.0)) {
      std::ostringstream msg;
      msg << "density must be finite and positive; got " << rho << " at (" << x << ", " << y << ")";
      throw Rejection(msg.str());
    }
    density[v] = rho;
  }
  return density;
}

std::shared_ptr<detail::SpaceData> finish_graph(std::shared_ptr<detail::SpaceData> data) {
  const std::size_t n = data->graph.size();
  auto comps = data->graph.components();
  if (comps.size() > 1) {
    std::ostringstream msg;
    msg << "space is disconnected: " << comps.size() << " components; component of node " << comps[1].front()
        << " has " << comps[1].size() << " nodes";
    throw DisconnectedSpace(msg.str(), comps[1]);
  }
  if (n <= Space::kDenseLimit) {
    data->dense.resize(n * n);
    for (NodeId s = 0; s < n; ++s) {
      auto row = data->graph.distances_from(s);
      std::copy(row.begin(), row.end(), data->dense.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
    // Enforce exact symmetry: keep the value computed from the smaller source.
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) data->dense[b * n + a] = data->dense[a * n + b];
    }
  }
  data->cache_capacity = std::clamp<std::size_t>(n ? 8'000'000 / n : 16, 4, 256);
  return data;
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

Space make_analytic(SpaceKind kind) {
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = kind;
  switch (kind) {
    case SpaceKind::PoincareDisk: data->window = {-1, 1, -1, 1, 0.95L}; break;
    case SpaceKind::HyperbolicStrip: data->window = {-5, 5, -0.95L, 0.95L, 0}; break;
    case SpaceKind::FlatCylinder: data->window = {-5, 5, 0, kTwoPi, 0}; break;
    case SpaceKind::L1Slab: data->window = {0, 10, -1, 1, 0}; break;
    default: throw Rejection("not an analytic space kind");
  }
  return Space(std::move(data));
}

Space Space::poincare_disk() { return make_analytic(SpaceKind::PoincareDisk); }
Space Space::hyperbolic_strip() { return make_analytic(SpaceKind::HyperbolicStrip); }
Space Space::flat_cylinder() { return make_analytic(SpaceKind::FlatCylinder); }
Space Space::l1_slab() { return make_analytic(SpaceKind::L1Slab); }

Space build_graph_space(std::span<const Edge> edges, std::size_t node_count) {
  std::size_t n = std::max<std::size_t>(node_count, 1);
  for (const Edge& e : edges) n = std::max({n, e.a + 1, e.b + 1});
  for (const Edge& e : edges) {
    if (!(e.weight > 0.0)) {
      std::ostringstream msg;
      msg << "non-positive weight " << e.weight << " on edge (" << e.a << ", " << e.b << ")";
      throw Rejection(msg.str());
    }
  }
  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::Graph;
  data->graph = WeightedGraph(n, edges);
  return Space(finish_graph(std::move(data)));
}

Space build_conformal_grid(const GridMask& mask, const DensitySpec& density, Stencil stencil) {
  if (!(mask.spacing > 0.0)) throw Rejection("grid spacing must be positive");
  if (mask.cells.size() != mask.nx * mask.ny) throw Rejection("mask cell count does not match its shape");
  GridLayout layout;
  layout.mask = mask;
  layout.stencil = stencil;
  layout.density_kind = density.kind;
  layout.cell_to_node.assign(mask.cells.size(), kNoNode);
  for (std::size_t c = 0; c < mask.cells.size(); ++c) {
    if (mask.cells[c]) {
      layout.cell_to_node[c] = layout.node_to_cell.size();
      layout.node_to_cell.push_back(c);
    }
  }
  if (layout.node_to_cell.empty()) throw Rejection("mask has no interior nodes");
  layout.density = compute_density(layout, density);

  struct Offset {
    int dx, dy;
  };
  std::vector<Offset> offsets{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  if (stencil == Stencil::Sixteen) {
    offsets.insert(offsets.end(), {{2, 1}, {1, 2}, {2, -1}, {1, -2}});
  }

  std::vector<Edge> edges;
  edges.reserve(layout.node_to_cell.size() * offsets.size());
  for (NodeId v = 0; v < layout.node_to_cell.size(); ++v) {
    auto [i, j] = layout.cell(v);
    for (const Offset& o : offsets) {
      auto target = layout.node_at_cell(i + o.dx, j + o.dy);
      if (!target) continue;
      // The segment must not cut a corner of an excluded cell.
      bool clear = true;
      if (std::abs(o.dx) == 1 && std::abs(o.dy) == 1) {
        clear = mask.at(i + o.dx, j) && mask.at(i, j + o.dy);
      } else if (std::abs(o.dx) == 2) {
        clear = mask.at(i + o.dx / 2, j) && mask.at(i + o.dx / 2, j + o.dy);
      } else if (std::abs(o.dy) == 2) {
        clear = mask.at(i, j + o.dy / 2) && mask.at(i + o.dx, j + o.dy / 2);
      }
      if (!clear) continue;
      const double length = mask.spacing * std::hypot(static_cast<double>(o.dx), static_cast<double>(o.dy));
      const double w = 0.5 * (layout.density[v] + layout.density[*target]) * length;
      edges.push_back({v, *target, w});
    }
  }

  auto data = std::make_shared<detail::SpaceData>();
  data->kind = SpaceKind::ConformalGrid;
  data->graph = WeightedGraph(layout.node_to_cell.size(), edges);
  data->grid = std::move(layout);
  finish_graph(data);

  // Double sweep: eccentricity of the node farthest from node 0.
  const auto first = data->graph.distances_from(0);
  const auto far = static_cast<NodeId>(std::max_element(first.begin(), first.end()) - first.begin());
  const auto second = data->graph.distances_from(far);
  data->grid->diameter_estimate = *std::max_element(second.begin(), second.end());
  data->eps = stencil_metrication_bound(stencil) * data->grid->diameter_estimate;
  return Space(std::move(data));
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

SpaceKind Space::kind() const { return data_->kind; }

bool Space::discrete() const { return data_->kind == SpaceKind::Graph || data_->kind == SpaceKind::ConformalGrid; }

bool Space::same_model(const Space& other) const {
  return data_ == other.data_ || (!discrete() && kind() == other.kind());
}

double Space::tolerance() const { return data_->eps; }

const SamplingWindow& Space::window() const { return data_->window; }

Space Space::with_window(const SamplingWindow& window) const {
  auto copy = std::make_shared<detail::SpaceData>(*data_);
  copy->window = window;
  return Space(std::move(copy));
}

bool Space::contains(const Point& p) const {
  if (p.kind != data_->kind) return false;
  switch (p.kind) {
    case SpaceKind::Graph:
    case SpaceKind::ConformalGrid: return p.node < data_->graph.size();
    case SpaceKind::PoincareDisk: return std::norm(p.z()) < 1;
    case SpaceKind::HyperbolicStrip: return std::isfinite(p.x) && std::fabs(p.y) < 1;
    case SpaceKind::FlatCylinder: return std::isfinite(p.x) && p.y >= 0 && p.y < kTwoPi;
    case SpaceKind::L1Slab: return std::isfinite(p.x) && p.x >= 0 && std::fabs(p.y) <= 1;
  }
  return false;
}

void Space::require(const Point& p) const {
  if (!contains(p)) {
    throw Rejection("point " + describe(p) + " does not belong to the " + std::string(to_string(kind())) + " space");
  }
}

std::size_t Space::node_count() const { return data_->graph.size(); }

const WeightedGraph& Space::graph() const {
  if (!discrete()) throw Rejection("analytic spaces have no graph");
  return data_->graph;
}

const GridLayout* Space::grid() const { return data_->grid ? &*data_->grid : nullptr; }

const std::vector<double>* Space::dense_distances() const {
  return data_->dense.empty() ? nullptr : &data_->dense;
}

Point Space::node_point(NodeId n) const {
  if (!discrete()) throw Rejection("analytic spaces have no nodes");
  return data_->kind == SpaceKind::Graph ? Point::graph_node(n) : Point::grid_node(n);
}

std::shared_ptr<const std::vector<double>> Space::distances_from(NodeId source) const {
  if (!discrete()) throw Rejection("analytic spaces have no nodes");
  if (source >= node_count()) throw Rejection("node out of range");
  const std::size_t n = node_count();
  if (!data_->dense.empty()) {
    auto begin = data_->dense.begin() + static_cast<std::ptrdiff_t>(source * n);
    return std::make_shared<const std::vector<double>>(begin, begin + static_cast<std::ptrdiff_t>(n));
  }
  {
    std::lock_guard lock(data_->mutex);
    for (auto it = data_->cache.begin(); it != data_->cache.end(); ++it) {
      if (it->first == source) {
        data_->cache.splice(data_->cache.begin(), data_->cache, it);
        return data_->cache.front().second;
      }
    }
  }
  auto row = std::make_shared<const std::vector<double>>(data_->graph.distances_from(source));
  std::lock_guard lock(data_->mutex);
  data_->cache.emplace_front(source, row);
  while (data_->cache.size() > data_->cache_capacity) data_->cache.pop_back();
  return row;
}

std::vector<NodeId> Space::shortest_path(NodeId a, NodeId b) const {
  return graph().shortest_path_tree(a).path_to(b);
}

double Space::distance(const Point& a, const Point& b) const {
  require(a);
  require(b);
  switch (data_->kind) {
    case SpaceKind::Graph:
    case SpaceKind::ConformalGrid: {
      if (a.node == b.node) return 0.0;
      const std::size_t n = node_count();
      if (!data_->dense.empty()) return data_->dense[a.node * n + b.node];
      {
        // Prefer a cached row from either endpoint; the smaller index breaks
        // the tie so that d(a, b) and d(b, a) read the same row.
        std::lock_guard lock(data_->mutex);
        const NodeId lo = std::min(a.node, b.node);
        const NodeId hi = std::max(a.node, b.node);
        for (const auto& [src, row] : data_->cache) {
          if (src == lo) return (*row)[hi];
        }
        for (const auto& [src, row] : data_->cache) {
          if (src == hi) return (*row)[lo];
        }
      }
      const NodeId lo = std::min(a.node, b.node);
      return (*distances_from(lo))[std::max(a.node, b.node)];
    }
    case SpaceKind::PoincareDisk: return static_cast<double>(disk_distance(a.z(), b.z()));
    case SpaceKind::HyperbolicStrip: return static_cast<double>(strip_distance(a.z(), b.z()));
    case SpaceKind::FlatCylinder: return static_cast<double>(cylinder_distance(a, b));
    case SpaceKind::L1Slab: return static_cast<double>(std::fabs(a.x - b.x) + std::fabs(a.y - b.y));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {

Real uniform01(std::mt19937_64& rng) {
  // 64 random bits mapped to [0, 1).
  return static_cast<Real>(rng() >> 11) * (Real(1) / Real(9007199254740992.0L));
}

}  // namespace

Point draw_point(const Space& space, std::mt19937_64& rng) {
  const SamplingWindow& w = space.window();
  switch (space.kind()) {
    case SpaceKind::Graph:
    case SpaceKind::ConformalGrid:
      return space.node_point(static_cast<NodeId>(rng() % space.node_count()));
    case SpaceKind::PoincareDisk: {
      const Real r = w.radius * std::sqrt(uniform01(rng));
      const Real theta = kTwoPi * uniform01(rng);
      return Point::disk(std::polar(r, theta));
    }
    case SpaceKind::HyperbolicStrip: {
      const Real x = w.x_min + (w.x_max - w.x_min) * uniform01(rng);
      const Real y = w.y_min + (w.y_max - w.y_min) * uniform01(rng);
      return Point::strip({x, y});
    }
    case SpaceKind::FlatCylinder: {
      const Real x = w.x_min + (w.x_max - w.x_min) * uniform01(rng);
      return Point::cylinder(x, kTwoPi * uniform01(rng));
    }
    case SpaceKind::L1Slab: {
      const Real x = w.x_min + (w.x_max - w.x_min) * uniform01(rng);
      const Real y = w.y_min + (w.y_max - w.y_min) * uniform01(rng);
      return Point::slab(std::max<Real>(x, 0), std::clamp<Real>(y, -1, 1));
    }
  }
  return {};
}

std::vector<Point> sample_points(const Space& space, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Rejection("sample size must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Point> points;
  points.reserve(n);
  if (space.discrete() && n <= space.node_count()) {
    std::vector<NodeId> nodes(space.node_count());
    std::iota(nodes.begin(), nodes.end(), NodeId{0});
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pick = k + static_cast<std::size_t>(rng() % (nodes.size() - k));
      std::swap(nodes[k], nodes[pick]);
      points.push_back(space.node_point(nodes[k]));
    }
    return points;
  }
  for (std::size_t k = 0; k < n; ++k) points.push_back(draw_point(space, rng));
  return points;
}

Point offset_point(const Space& space, const Point& x, Real r, Real angle) {
  space.require(x);
  switch (space.kind()) {
    case SpaceKind::PoincareDisk: {
      const Complex u = std::polar(std::tanh(r / 2), angle);
      const Complex c = x.z();
      return Point::disk((u + c) / (Real(1) + std::conj(c) * u));
    }
    case SpaceKind::HyperbolicStrip: {
      const Complex c = strip_to_disk(x.z());
      const Complex u = std::polar(std::tanh(r / 2), angle);
      const Complex w = (u + c) / (Real(1) + std::conj(c) * u);
      return Point::strip(disk_to_strip(w));
    }
    case SpaceKind::FlatCylinder:
      return Point::cylinder(x.x + r * std::cos(angle), x.y + r * std::sin(angle));
    case SpaceKind::L1Slab: {
      const Real c = std::cos(angle);
      const Real s = std::sin(angle);
      const Real norm = std::fabs(c) + std::fabs(s);
      return Point::slab(std::max<Real>(x.x + r * c / norm, 0), std::clamp<Real>(x.y + r * s / norm, -1, 1));
    }
    default: throw Rejection("offset_point needs an analytic space");
  }
}

}  // namespace coarselab
