#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coarselab {

/// Coordinates are kept in extended precision. Rays truncated at horizon 20
/// come within e^-20 of the ideal boundary of the disk, where double
/// precision can no longer separate neighbouring points.
using Real = long double;
using Complex = std::complex<Real>;
using NodeId = std::size_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);
inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kTwoPi = 2 * kPi;

enum class SpaceKind { Graph, PoincareDisk, HyperbolicStrip, FlatCylinder, L1Slab, ConformalGrid };

std::string_view to_string(SpaceKind kind);
SpaceKind space_kind_from_string(std::string_view name);

/// A point of one of the supported models. Discrete spaces use `node`,
/// analytic spaces use (x, y): the complex coordinate for disk and strip,
/// (axial, angle) for the cylinder and (x, y) for the slab.
struct Point {
  SpaceKind kind = SpaceKind::Graph;
  NodeId node = 0;
  Real x = 0;
  Real y = 0;

  static Point graph_node(NodeId n) { return {SpaceKind::Graph, n, 0, 0}; }
  static Point grid_node(NodeId n) { return {SpaceKind::ConformalGrid, n, 0, 0}; }
  static Point disk(Complex z) { return {SpaceKind::PoincareDisk, 0, z.real(), z.imag()}; }
  static Point strip(Complex z) { return {SpaceKind::HyperbolicStrip, 0, z.real(), z.imag()}; }
  static Point cylinder(Real axial, Real angle);
  static Point slab(Real x, Real y) { return {SpaceKind::L1Slab, 0, x, y}; }

  Complex z() const { return {x, y}; }
  bool discrete() const { return kind == SpaceKind::Graph || kind == SpaceKind::ConformalGrid; }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Reduces an angle to [0, 2pi).
Real reduce_angle(Real angle);

std::string describe(const Point& p);

/// Raised whenever an operation's precondition is violated.
class Rejection : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A graph or grid mask that splits into several components.
class DisconnectedSpace : public Rejection {
 public:
  DisconnectedSpace(const std::string& what, std::vector<NodeId> component)
      : Rejection(what), component_(std::move(component)) {}

  /// Nodes of a component not containing node 0.
  const std::vector<NodeId>& component() const { return component_; }

 private:
  std::vector<NodeId> component_;
};

/// Deterministic 64-bit mixer used to derive per-index random streams.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace coarselab
