#include "coarselab/hyperbolicity.hpp"

#include <algorithm>
#include <random>

namespace coarselab {

double four_point_defect(const Space& space, const Point& w, const Point& x, const Point& y, const Point& z) {
  double s[3] = {space.distance(w, x) + space.distance(y, z), space.distance(w, y) + space.distance(x, z),
                 space.distance(w, z) + space.distance(x, y)};
  std::sort(s, s + 3);
  return (s[2] - s[1]) / 2;
}

namespace {

GeodesicPath side(const Space& space, const Point& a, const Point& b, double step) {
  if (a == b) {
    GeodesicPath path(space);
    path.samples.push_back({0.0, a});
    path.step = step;
    return path;
  }
  return geodesic_segment(space, a, b, step);
}

}  // namespace

namespace {

/// True when some sample of `path` lies within `threshold` of x; `hint` is the
/// sample tried first and receives the one found.
bool sample_within(const GeodesicPath& path, const Point& x, double threshold, std::size_t& hint) {
  const Space& space = path.space;
  if (space.discrete()) return false;
  const std::size_t n = path.samples.size();
  const std::size_t h = std::min(hint, n - 1);
  // Scan outward from the hint: the nearest sample moves slowly along a side.
  for (std::size_t r = 0; r < n; ++r) {
    if (r > h && h + r >= n) break;
    for (std::size_t k : {h + r, h - r}) {
      if (k >= n || (r > h && k == h - r)) continue;
      if (space.distance(x, path.samples[k].point) <= threshold) {
        hint = k;
        return true;
      }
      if (r == 0) break;
    }
  }
  return false;
}

/// Slimness when it exceeds `floor`; otherwise some value <= floor.
double slimness_above(const Space& space, const Point& a, const Point& b, const Point& c, double step, double floor,
                      int* side_out) {
  const GeodesicPath sides[3] = {side(space, a, b, step), side(space, b, c, step), side(space, c, a, step)};
  double worst = floor;
  int worst_side = 0;
  // Side midpoints first: their exact values give the pruning below a useful start.
  for (int i = 0; i < 3; ++i) {
    const Point& m = sides[i].samples[sides[i].samples.size() / 2].point;
    const double d = std::min(distance_to_path(sides[(i + 1) % 3], m), distance_to_path(sides[(i + 2) % 3], m));
    if (d > worst) worst = d, worst_side = i;
  }
  for (int i = 0; i < 3; ++i) {
    const GeodesicPath& p = sides[(i + 1) % 3];
    const GeodesicPath& q = sides[(i + 2) % 3];
    std::size_t hint_p = 0, hint_q = q.samples.size() - 1;
    for (const auto& s : sides[i].samples) {
      // A sample of either side within `worst` means this point cannot raise the maximum.
      if (sample_within(p, s.point, worst, hint_p) || sample_within(q, s.point, worst, hint_q)) continue;
      const double d = std::min(distance_to_path(p, s.point), distance_to_path(q, s.point));
      if (d > worst) worst = d, worst_side = i;
    }
  }
  if (side_out) *side_out = worst_side;
  return worst;
}

}  // namespace

double triangle_slimness(const Space& space, const Point& a, const Point& b, const Point& c, double step, int* side_out) {
  return slimness_above(space, a, b, c, step, 0.0, side_out);
}

PointSampler window_sampler(const Space& space, std::uint64_t seed) {
  return [space, seed](std::uint64_t index) {
    std::mt19937_64 rng(mix_seed(seed, index));
    return draw_point(space, rng);
  };
}

DeltaReport slim_triangle_delta(const Space& space, std::size_t n_triangles, double step, std::uint64_t seed,
                                const PointSampler& sampler) {
  if (n_triangles == 0) throw Rejection("slim_triangle_delta needs at least one triangle");
  const PointSampler draw = sampler ? sampler : window_sampler(space, seed);
  DeltaReport report;
  report.seed = seed;
  report.triangles_sampled = n_triangles;
  report.resolution = step;
  bool first = true;
  for (std::size_t k = 0; k < n_triangles; ++k) {
    const Point a = draw(3 * k), b = draw(3 * k + 1), c = draw(3 * k + 2);
    int s = 0;
    const double d = slimness_above(space, a, b, c, step, first ? 0.0 : report.delta_slim, &s);
    if (first || d > report.delta_slim) {
      report.delta_slim = d;
      report.triangle_witness = {a, b, c};
      report.witness_side = s;
      first = false;
    }
  }
  return report;
}

namespace {

void consider(DeltaReport& report, double defect, const Point& w, const Point& x, const Point& y, const Point& z,
              bool& first) {
  if (first || defect > report.delta_four_point) {
    report.delta_four_point = defect;
    report.quadruple_witness = {w, x, y, z};
    first = false;
  }
}

}  // namespace

DeltaReport four_point_delta_on(const Space& space, const std::vector<Point>& points) {
  if (points.size() < 4) throw Rejection("four-point estimate needs at least four points");
  const std::size_t n = points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::shared_ptr<const std::vector<double>> row;
    if (space.discrete()) row = space.distances_from(points[i].node);
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = row ? (*row)[points[j].node] : space.distance(points[i], points[j]);
    }
  }
  DeltaReport report;
  report.exhaustive = true;
  bool first = true;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          double s[3] = {d[i * n + j] + d[k * n + l], d[i * n + k] + d[j * n + l], d[i * n + l] + d[j * n + k]};
          std::sort(s, s + 3);
          const double defect = (s[2] - s[1]) / 2;
          ++count;
          if (first || defect > report.delta_four_point) {
            consider(report, defect, points[i], points[j], points[k], points[l], first);
          }
        }
      }
    }
  }
  report.quadruples_sampled = count;
  return report;
}

DeltaReport four_point_delta(const Space& space, std::size_t n_quadruples, std::uint64_t seed,
                             const PointSampler& sampler) {
  if (!sampler && space.discrete() && space.node_count() <= kExhaustiveNodes && space.node_count() >= 4) {
    std::vector<Point> nodes;
    for (NodeId v = 0; v < space.node_count(); ++v) nodes.push_back(space.node_point(v));
    DeltaReport report = four_point_delta_on(space, nodes);
    report.seed = seed;
    return report;
  }
  if (n_quadruples == 0) throw Rejection("four_point_delta needs at least one quadruple");
  const PointSampler draw = sampler ? sampler : window_sampler(space, seed);
  DeltaReport report;
  report.seed = seed;
  report.quadruples_sampled = n_quadruples;
  bool first = true;
  for (std::size_t k = 0; k < n_quadruples; ++k) {
    const Point w = draw(4 * k), x = draw(4 * k + 1), y = draw(4 * k + 2), z = draw(4 * k + 3);
    consider(report, four_point_defect(space, w, x, y, z), w, x, y, z, first);
  }
  return report;
}

}  // namespace coarselab
