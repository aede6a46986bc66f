#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "coarselab/geodesics.hpp"

namespace coarselab {

/// Estimates of the hyperbolicity constant with the configurations realising them.
struct DeltaReport {
  double delta_slim = 0.0;
  double delta_four_point = 0.0;
  std::size_t triangles_sampled = 0;
  std::size_t quadruples_sampled = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  /// Sample spacing of the triangle sides; the slim estimate is resolved only to half of it.
  double resolution = 0.0;
  /// Vertices of the fattest triangle (side `witness_side` is far from the others).
  std::array<Point, 3> triangle_witness{};
  int witness_side = 0;
  /// Quadruple with the largest four-point defect.
  std::array<Point, 4> quadruple_witness{};
};

/// (S_max - S_mid) / 2 over the three pair-sums of a quadruple.
double four_point_defect(const Space& space, const Point& w, const Point& x, const Point& y, const Point& z);

/// Largest distance from a sample of one side of the geodesic triangle (a, b, c)
/// to the union of the other two sides. `side` receives 0 for [a,b], 1 for
/// [b,c], 2 for [c,a].
double triangle_slimness(const Space& space, const Point& a, const Point& b, const Point& c, double step,
                         int* side = nullptr);

using PointSampler = std::function<Point(std::uint64_t index)>;

/// Sampled lower bound on the slim-triangle constant. Triangle k draws its
/// vertices from `sampler(k)` streams (default: the space's sampling window),
/// so a longer run extends a shorter one and the estimate is monotone in n.
DeltaReport slim_triangle_delta(const Space& space, std::size_t n_triangles, double step, std::uint64_t seed,
                                const PointSampler& sampler = {});

/// Four-point estimate; exhaustive over node quadruples for graphs with at
/// most kExhaustiveNodes nodes, otherwise sampled.
DeltaReport four_point_delta(const Space& space, std::size_t n_quadruples, std::uint64_t seed,
                             const PointSampler& sampler = {});

/// Four-point estimate over a fixed point set (all quadruples).
DeltaReport four_point_delta_on(const Space& space, const std::vector<Point>& points);

inline constexpr std::size_t kExhaustiveNodes = 150;

/// Per-index point stream drawn from the space's sampling window.
PointSampler window_sampler(const Space& space, std::uint64_t seed);

}  // namespace coarselab
