#pragma once

#include <string>
#include <vector>

#include "coarselab/geodesics.hpp"

namespace coarselab {

/// A horofunction or Busemann function restricted to a landmark set and
/// normalised to vanish at the base point.
struct HorofunctionSample {
  std::vector<Point> landmarks;
  Point base;
  std::vector<double> values;
  std::string provenance;
  /// Largest change of a landmark value between the half-way and final evaluation.
  double residual = 0.0;

  double value_at(const Point& landmark) const;
};

/// w -> d(x_N, w) - d(x_N, p) at the last element of a diverging sequence.
HorofunctionSample horofunction_from_sequence(const Space& space, const std::vector<Point>& sequence, const Point& p,
                                              const std::vector<Point>& landmarks);

/// w -> d(w, gamma(T)) - d(gamma(T), p) at the horizon T of a geodesic ray.
HorofunctionSample busemann(const Space& space, const GeodesicPath& gamma, const Point& p,
                            const std::vector<Point>& landmarks);

/// Sup distance over the shared landmark set.
double horofunction_distance(const HorofunctionSample& h1, const HorofunctionSample& h2);

/// `count` landmarks around p, p itself first. Analytic spaces use points at
/// distance at most `radius` in evenly spread directions; discrete spaces use
/// the nodes nearest to p.
std::vector<Point> default_landmarks(const Space& space, const Point& p, std::size_t count = 50, double radius = 3.0,
                                     std::uint64_t seed = 0);

/// Divergence test shared by the sequence-based operations: the last element
/// is strictly farther from the first than every element of the first half.
bool is_diverging(const Space& space, const std::vector<Point>& sequence);

struct CompareDirection {
  std::string label;
  std::vector<GeodesicPath> rays;
  std::vector<std::vector<Point>> sequences;
};

struct CompareOptions {
  double tol_cluster = 1e-2;
  AsymptoticityOptions asymptoticity;
};

struct ClassPairVerdict {
  std::size_t class_a = 0;
  std::size_t class_b = 0;
  /// Smallest and largest horofunction distance between samples of the two classes.
  double min_distance = 0.0;
  double max_distance = 0.0;
  /// class_a == class_b: every pair of samples within tol ("well defined").
  /// class_a != class_b: every pair farther apart than tol ("injective").
  bool holds = false;
};

struct CompactificationReport {
  std::vector<HorofunctionSample> samples;
  std::vector<std::size_t> sample_direction;
  std::vector<std::size_t> sample_ray_class;
  std::vector<std::size_t> sample_cluster;
  /// Row-major sample-by-sample horofunction distances.
  std::vector<double> distances;
  std::size_t ray_classes = 0;
  std::size_t clusters = 0;
  std::vector<ClassPairVerdict> verdicts;
  double tol_cluster = 0.0;
  double horizon = 0.0;

  /// Classes and clusters induce the same partition of the samples.
  bool bijective() const;
};

CompactificationReport compactification_compare(const Space& space, const std::vector<CompareDirection>& directions,
                                                const Point& p, const std::vector<Point>& landmarks,
                                                const CompareOptions& options = {});

enum class HorosphereMode { Big, Small };

struct HorosphereVerdict {
  bool member = false;
  /// liminf (big) or limsup (small) of d(z, w) - d(w, p) over the sequence tails.
  double value = 0.0;
  /// log R - value; positive for members.
  double margin = 0.0;
  /// Least-squares slope of the tail values of the first sequence.
  double trend = 0.0;
};

/// Membership of z in the big or small horosphere of radius R. Several
/// sequences toward the same boundary point may be given; the tails of all of
/// them (last half of each) enter the liminf / limsup.
HorosphereVerdict horosphere_membership(const Space& space, const Point& z,
                                        const std::vector<std::vector<Point>>& sequences, double radius,
                                        const Point& p, HorosphereMode mode);

}  // namespace coarselab
