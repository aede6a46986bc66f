#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "coarselab/space.hpp"

namespace coarselab {

enum class PathKind { Segment, Ray, Line };

std::string_view to_string(PathKind kind);

struct PathSample {
  double t = 0.0;
  Point point;
};

/// Unit-speed sampled curve. Rays and lines are truncated at their horizon.
struct GeodesicPath {
  explicit GeodesicPath(Space s) : space(std::move(s)) {}

  Space space;
  PathKind kind = PathKind::Segment;
  std::vector<PathSample> samples;
  /// Declared sample spacing.
  double step = 0.0;
  double horizon = 0.0;
  /// Bound on |d(sample_i, sample_j) - |t_i - t_j||.
  double param_tolerance = 0.0;
  /// Closed-form parametrization, present for analytic models.
  std::function<Point(double)> evaluator;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
  /// Exact point when an evaluator exists, nearest sample otherwise.
  Point at(double t) const;
  std::size_t nearest_index(double t) const;
};

/// Boundary direction for rays: a unimodular point (disk), an end of the
/// model (strip, cylinder, slab, grids along the row of the start), or a
/// diverging node sequence (graphs and grids).
struct BoundaryTarget {
  enum class Kind { UnitCircle, PlusInfinity, MinusInfinity, NodeSequence };
  Kind kind = Kind::PlusInfinity;
  Complex direction{1, 0};
  std::vector<NodeId> nodes;

  static BoundaryTarget unit_circle(Complex zeta) { return {Kind::UnitCircle, zeta / std::abs(zeta), {}}; }
  static BoundaryTarget plus_infinity() { return {Kind::PlusInfinity, {1, 0}, {}}; }
  static BoundaryTarget minus_infinity() { return {Kind::MinusInfinity, {-1, 0}, {}}; }
  static BoundaryTarget node_sequence(std::vector<NodeId> nodes) { return {Kind::NodeSequence, {}, std::move(nodes)}; }
};

GeodesicPath geodesic_segment(const Space& space, const Point& a, const Point& b, double step);

/// Unit-speed ray from p toward `target`, truncated at `horizon`. Graph rays
/// follow the shortest path to the farthest target node (ties by smallest
/// node index).
GeodesicPath geodesic_ray(const Space& space, const Point& p, const BoundaryTarget& target, double horizon,
                          double step);

/// Distance from x to the curve; refined between samples when the path has a
/// closed form. `argmin_t` receives the parameter of the closest point.
double distance_to_path(const GeodesicPath& path, const Point& x, double* argmin_t = nullptr);

struct AsymptoticityOptions {
  /// Rays whose sup-profile stays below this bound over the window count as asymptotic.
  double asymptotic_threshold = 5.0;
  /// Largest admissible least-squares slope of the sup-profile on the trend window.
  double sup_slope_limit = 0.1;
  double strong_tolerance = 1e-3;
  /// Log-slope of the inf-profile must be below this on the trend window.
  double log_slope_threshold = -1e-3;
  /// Trailing fraction of the window used for trend tests.
  double trend_fraction = 0.3;
};

struct AsymptoticityProfile {
  std::vector<double> t;
  std::vector<double> sup_profile;
  std::vector<double> inf_profile;
  double sup_max = 0.0;
  double sup_slope = 0.0;
  /// inf_profile at verdict_horizon, the last t whose aligned partner
  /// sigma(t + T) lies within the truncation of sigma.
  double inf_terminal = 0.0;
  double verdict_horizon = 0.0;
  double inf_log_slope = 0.0;
  /// Shift T minimising the terminal-window sup of d(gamma(t), sigma(t + T)).
  double alignment_shift = 0.0;
  bool asymptotic = false;
  bool strongly_asymptotic = false;
};

AsymptoticityProfile asymptoticity(const GeodesicPath& gamma, const GeodesicPath& sigma,
                                   const AsymptoticityOptions& options = {});

struct GeodesicCheck {
  bool geodesic = true;
  double worst_defect = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

/// Compares d(sample_i, sample_j) with |t_i - t_j| over all sample pairs
/// (a regular subsample of 2000 points on longer paths).
GeodesicCheck is_geodesic(const GeodesicPath& path, double tol);

struct DefectProfile {
  std::vector<double> t;
  /// sup over t1, t2 >= t of (|t1 - t2| - d)^+.
  std::vector<double> lower;
  /// sup over t1, t2 >= t of (d - |t1 - t2|)^+.
  std::vector<double> upper;
  double tail_defect = 0.0;
  bool almost_geodesic = false;
};

DefectProfile almost_geodesic_defect(const GeodesicPath& path, double tol = 1e-3, double tail_fraction = 0.3);

/// Conservative test for x in A(gamma, R): distance to the sampled curve below R - eps_d.
bool geodesic_region_membership(const GeodesicPath& gamma, double radius, const Point& x);

/// Least-squares slope of values against t over the trailing `fraction` of the samples.
double trailing_slope(const std::vector<double>& t, const std::vector<double>& values, double fraction);

/// Golden-section minimiser of a unimodal function on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, int iterations = 80);

}  // namespace coarselab
