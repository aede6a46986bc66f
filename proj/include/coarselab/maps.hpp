#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarselab/space.hpp"

namespace coarselab {

enum class MapKind {
  DiskMobius,
  DiskRotation,
  DiskParabolic,
  CylinderShiftFlip,
  SlabShift,
  StripTranslate,
  ConjTranslate,
  GraphAutomorphism,
  UserPointwise,
  Power,
};

std::string_view to_string(MapKind kind);

using PointMap = std::function<std::optional<Point>(const Point&)>;

/// A self-map of a space. `apply` returns nothing when the image leaves the
/// model (a grid window or a partial permutation).
struct MapDescriptor {
  MapKind kind = MapKind::UserPointwise;
  std::string name;
  /// Exact isometry of the model (up to the space tolerance on grids).
  bool exact = false;
  bool nonexpanding = false;
  PointMap forward;
  /// Empty when the map is not invertible on the model.
  PointMap backward;

  /// Parameters, kept for reports and for seeding searches.
  Complex a{0, 0};
  Real shift = 0;
  Real angle = 0;
  int power = 1;

  std::optional<Point> apply(const Point& x) const { return forward(x); }
  bool invertible() const { return static_cast<bool>(backward); }
  /// f^n(x); negative n uses the inverse. Nothing if any step leaves the model.
  std::optional<Point> iterate(const Point& x, long n) const;
};

/// z -> (z + a) / (1 + conj(a) z).
MapDescriptor disk_mobius(Complex a);
/// z -> e^{i angle} z.
MapDescriptor disk_rotation(Real angle);
/// Horocyclic translation fixing 1: Cayley transform to the upper half-plane,
/// w -> w + s, and back.
MapDescriptor disk_parabolic(Real s);
/// (x, theta) -> (x + dx, theta + pi).
MapDescriptor cylinder_shift_flip(Real dx = 1);
/// (x, y) -> (x + dx, y); distance preserving but not onto.
MapDescriptor slab_shift(Real dx = 1);
/// z -> z + dx on the hyperbolic strip.
MapDescriptor strip_translate(Real dx);
/// z -> conj(z) + 1 on the hyperbolic strip.
MapDescriptor strip_conj_translate();
/// Node (x, y) -> node (x + 1, -y) on a conformal grid whose mask is
/// invariant under that move away from the window's ends.
MapDescriptor grid_conj_translate(const Space& grid);
/// image[v] is the image of node v (kNoNode: leaves the graph).
MapDescriptor graph_automorphism(const Space& graph, std::vector<NodeId> image);
MapDescriptor user_pointwise(std::string name, PointMap forward, bool exact, bool nonexpanding,
                             PointMap backward = {});
MapDescriptor power(const MapDescriptor& f, int n);
/// g o f o g^-1.
MapDescriptor conjugate(const MapDescriptor& f, const MapDescriptor& g);

}  // namespace coarselab
