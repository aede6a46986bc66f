#include "coarselab/maps.hpp"

#include <cmath>
#include <sstream>

namespace coarselab {

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::DiskMobius: return "disk-mobius";
    case MapKind::DiskRotation: return "disk-rotation";
    case MapKind::DiskParabolic: return "disk-parabolic";
    case MapKind::CylinderShiftFlip: return "cylinder-shift-flip";
    case MapKind::SlabShift: return "slab-shift";
    case MapKind::StripTranslate: return "strip-translate";
    case MapKind::ConjTranslate: return "conj-translate";
    case MapKind::GraphAutomorphism: return "graph-automorphism";
    case MapKind::UserPointwise: return "user-pointwise";
    case MapKind::Power: return "power";
  }
  return "?";
}

std::optional<Point> MapDescriptor::iterate(const Point& x, long n) const {
  if (n < 0 && !invertible()) throw Rejection(name + " has no inverse");
  std::optional<Point> y = x;
  const PointMap& step = n >= 0 ? forward : backward;
  for (long k = 0; k < std::labs(n) && y; ++k) y = step(*y);
  return y;
}

namespace {

std::string format(const char* label, Real v) {
  std::ostringstream out;
  out << label << "(" << static_cast<double>(v) << ")";
  return out.str();
}

Complex cayley(Complex z) { return Complex(0, 1) * (Real(1) + z) / (Real(1) - z); }
Complex cayley_inverse(Complex w) { return (w - Complex(0, 1)) / (w + Complex(0, 1)); }

std::optional<Point> inside_disk(Complex z) {
  if (!(std::norm(z) < 1)) return std::nullopt;
  return Point::disk(z);
}

}  // namespace

MapDescriptor disk_mobius(Complex a) {
  if (!(std::norm(a) < 1)) throw Rejection("Mobius parameter must lie in the disk");
  MapDescriptor f;
  f.kind = MapKind::DiskMobius;
  std::ostringstream name;
  name << "disk-mobius(" << static_cast<double>(a.real()) << "," << static_cast<double>(a.imag()) << ")";
  f.name = name.str();
  f.exact = f.nonexpanding = true;
  f.a = a;
  f.forward = [a](const Point& p) { return inside_disk((p.z() + a) / (Real(1) + std::conj(a) * p.z())); };
  f.backward = [a](const Point& p) { return inside_disk((p.z() - a) / (Real(1) - std::conj(a) * p.z())); };
  return f;
}

MapDescriptor disk_rotation(Real angle) {
  MapDescriptor f;
  f.kind = MapKind::DiskRotation;
  f.name = format("disk-rotation", angle);
  f.exact = f.nonexpanding = true;
  f.angle = angle;
  const Complex u = std::polar(Real(1), angle);
  f.forward = [u](const Point& p) { return std::optional<Point>(Point::disk(u * p.z())); };
  f.backward = [u](const Point& p) { return std::optional<Point>(Point::disk(std::conj(u) * p.z())); };
  return f;
}

MapDescriptor disk_parabolic(Real s) {
  MapDescriptor f;
  f.kind = MapKind::DiskParabolic;
  f.name = format("disk-parabolic", s);
  f.exact = f.nonexpanding = true;
  f.shift = s;
  f.forward = [s](const Point& p) { return inside_disk(cayley_inverse(cayley(p.z()) + s)); };
  f.backward = [s](const Point& p) { return inside_disk(cayley_inverse(cayley(p.z()) - s)); };
  return f;
}

MapDescriptor cylinder_shift_flip(Real dx) {
  MapDescriptor f;
  f.kind = MapKind::CylinderShiftFlip;
  f.name = format("cylinder-shift-flip", dx);
  f.exact = f.nonexpanding = true;
  f.shift = dx;
  f.forward = [dx](const Point& p) { return std::optional<Point>(Point::cylinder(p.x + dx, p.y + kPi)); };
  f.backward = [dx](const Point& p) { return std::optional<Point>(Point::cylinder(p.x - dx, p.y + kPi)); };
  return f;
}

MapDescriptor slab_shift(Real dx) {
  if (!(dx >= 0)) throw Rejection("slab shift must move toward +inf");
  MapDescriptor f;
  f.kind = MapKind::SlabShift;
  f.name = format("slab-shift", dx);
  f.exact = f.nonexpanding = true;
  f.shift = dx;
  f.forward = [dx](const Point& p) { return std::optional<Point>(Point::slab(p.x + dx, p.y)); };
  return f;
}

MapDescriptor strip_translate(Real dx) {
  MapDescriptor f;
  f.kind = MapKind::StripTranslate;
  f.name = format("strip-translate", dx);
  f.exact = f.nonexpanding = true;
  f.shift = dx;
  f.forward = [dx](const Point& p) { return std::optional<Point>(Point::strip({p.x + dx, p.y})); };
  f.backward = [dx](const Point& p) { return std::optional<Point>(Point::strip({p.x - dx, p.y})); };
  return f;
}

MapDescriptor strip_conj_translate() {
  MapDescriptor f;
  f.kind = MapKind::ConjTranslate;
  f.name = "conj-translate";
  f.exact = f.nonexpanding = true;
  f.shift = 1;
  f.forward = [](const Point& p) { return std::optional<Point>(Point::strip({p.x + 1, -p.y})); };
  f.backward = [](const Point& p) { return std::optional<Point>(Point::strip({p.x - 1, -p.y})); };
  return f;
}

MapDescriptor grid_conj_translate(const Space& grid) {
  const GridLayout* layout = grid.grid();
  if (!layout) throw Rejection("conj-translate needs a conformal grid");
  const GridMask& mask = layout->mask;
  const double cells_per_unit = 1.0 / mask.spacing;
  const auto shift = static_cast<std::ptrdiff_t>(std::llround(cells_per_unit));
  if (std::fabs(cells_per_unit - static_cast<double>(shift)) > 1e-9 * cells_per_unit) {
    throw Rejection("conj-translate needs a spacing dividing 1");
  }
  const double mirror = -2.0 * mask.y0 / mask.spacing - static_cast<double>(mask.ny - 1);
  if (std::fabs(mirror) > 1e-6) throw Rejection("conj-translate needs rows symmetric about y = 0");
  const auto nx = static_cast<std::ptrdiff_t>(mask.nx);
  const auto ny = static_cast<std::ptrdiff_t>(mask.ny);
  for (std::ptrdiff_t j = 0; j < ny; ++j) {
    for (std::ptrdiff_t i = 0; i + shift < nx; ++i) {
      if (mask.at(i, j) != mask.at(i + shift, ny - 1 - j)) {
        throw Rejection("grid mask is not invariant under z -> conj(z) + 1");
      }
    }
  }
  MapDescriptor f;
  f.kind = MapKind::ConjTranslate;
  f.name = "conj-translate";
  f.exact = f.nonexpanding = true;
  f.shift = 1;
  auto move = [grid, shift, ny](std::ptrdiff_t di) {
    return [grid, di, ny](const Point& p) -> std::optional<Point> {
      const GridLayout* g = grid.grid();
      const auto [i, j] = g->cell(p.node);
      if (auto n = g->node_at_cell(i + di, ny - 1 - j)) return Point::grid_node(*n);
      return std::nullopt;
    };
  };
  f.forward = move(shift);
  f.backward = move(-shift);
  return f;
}

MapDescriptor graph_automorphism(const Space& graph, std::vector<NodeId> image) {
  if (!graph.discrete()) throw Rejection("graph automorphisms need a graph space");
  if (image.size() != graph.node_count()) throw Rejection("permutation size differs from the node count");
  std::vector<NodeId> preimage(image.size(), kNoNode);
  for (NodeId v = 0; v < image.size(); ++v) {
    if (image[v] == kNoNode) continue;
    if (image[v] >= image.size() || preimage[image[v]] != kNoNode) throw Rejection("image is not injective");
    preimage[image[v]] = v;
  }
  MapDescriptor f;
  f.kind = MapKind::GraphAutomorphism;
  f.name = "graph-automorphism";
  f.exact = f.nonexpanding = true;
  const SpaceKind kind = graph.kind();
  auto lookup = [kind](std::vector<NodeId> table) {
    return [kind, table = std::move(table)](const Point& p) -> std::optional<Point> {
      if (p.node >= table.size() || table[p.node] == kNoNode) return std::nullopt;
      return Point{kind, table[p.node], 0, 0};
    };
  };
  f.forward = lookup(std::move(image));
  f.backward = lookup(std::move(preimage));
  return f;
}

MapDescriptor user_pointwise(std::string name, PointMap forward, bool exact, bool nonexpanding, PointMap backward) {
  MapDescriptor f;
  f.kind = MapKind::UserPointwise;
  f.name = std::move(name);
  f.exact = exact;
  f.nonexpanding = nonexpanding || exact;
  f.forward = std::move(forward);
  f.backward = std::move(backward);
  return f;
}

MapDescriptor power(const MapDescriptor& f, int n) {
  if (n < 1) throw Rejection("power needs n >= 1");
  MapDescriptor g = f;
  g.kind = n == 1 ? f.kind : MapKind::Power;
  g.name = n == 1 ? f.name : f.name + "^" + std::to_string(n);
  g.power = f.power * n;
  g.forward = [f, n](const Point& p) { return f.iterate(p, n); };
  if (f.invertible()) g.backward = [f, n](const Point& p) { return f.iterate(p, -n); };
  return g;
}

MapDescriptor conjugate(const MapDescriptor& f, const MapDescriptor& g) {
  if (!g.invertible()) throw Rejection("conjugation needs an invertible map");
  MapDescriptor h = f;
  h.kind = MapKind::UserPointwise;
  h.name = g.name + " o " + f.name + " o " + g.name + "^-1";
  h.forward = [f, g](const Point& p) -> std::optional<Point> {
    auto q = g.backward(p);
    if (q) q = f.forward(*q);
    if (q) q = g.forward(*q);
    return q;
  };
  if (f.invertible()) {
    h.backward = [f, g](const Point& p) -> std::optional<Point> {
      auto q = g.backward(p);
      if (q) q = f.backward(*q);
      if (q) q = g.forward(*q);
      return q;
    };
  } else {
    h.backward = {};
  }
  return h;
}

}  // namespace coarselab
