#include "coarselab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace coarselab {

double HorofunctionSample::value_at(const Point& landmark) const {
  for (std::size_t k = 0; k < landmarks.size(); ++k) {
    if (landmarks[k] == landmark) return values[k];
  }
  throw Rejection("point " + describe(landmark) + " is not a landmark of this sample");
}

namespace {

/// d(x, w) - d(x, p) for every landmark w.
std::vector<double> normalised_distances(const Space& space, const Point& x, const Point& p,
                                         const std::vector<Point>& landmarks) {
  std::vector<double> values(landmarks.size());
  if (space.discrete()) {
    const auto row = space.distances_from(x.node);
    const double dp = (*row)[p.node];
    for (std::size_t k = 0; k < landmarks.size(); ++k) values[k] = (*row)[landmarks[k].node] - dp;
  } else {
    const double dp = space.distance(x, p);
    for (std::size_t k = 0; k < landmarks.size(); ++k) values[k] = space.distance(x, landmarks[k]) - dp;
  }
  return values;
}

double max_change(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, std::fabs(a[k] - b[k]));
  return r;
}

void require_landmarks(const Space& space, const Point& p, const std::vector<Point>& landmarks) {
  space.require(p);
  if (landmarks.empty()) throw Rejection("landmark set is empty");
  for (const Point& w : landmarks) space.require(w);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  /// Labels 0, 1, ... in order of first appearance.
  std::vector<std::size_t> labels(std::size_t& count) {
    std::vector<std::size_t> label(parent.size()), root_label(parent.size(), static_cast<std::size_t>(-1));
    count = 0;
    for (std::size_t v = 0; v < parent.size(); ++v) {
      const std::size_t r = find(v);
      if (root_label[r] == static_cast<std::size_t>(-1)) root_label[r] = count++;
      label[v] = root_label[r];
    }
    return label;
  }
};

}  // namespace

bool is_diverging(const Space& space, const std::vector<Point>& sequence) {
  if (sequence.size() < 2) return false;
  const Point& x0 = sequence.front();
  double first_half = 0.0;
  for (std::size_t k = 0; k < (sequence.size() + 1) / 2; ++k) {
    first_half = std::max(first_half, space.distance(x0, sequence[k]));
  }
  return space.distance(x0, sequence.back()) > first_half;
}

HorofunctionSample horofunction_from_sequence(const Space& space, const std::vector<Point>& sequence, const Point& p,
                                              const std::vector<Point>& landmarks) {
  require_landmarks(space, p, landmarks);
  for (const Point& x : sequence) space.require(x);
  if (!is_diverging(space, sequence)) throw Rejection("horofunction needs a diverging sequence");
  HorofunctionSample h;
  h.landmarks = landmarks;
  h.base = p;
  const std::size_t last = sequence.size() - 1;
  h.values = normalised_distances(space, sequence[last], p, landmarks);
  h.residual = max_change(h.values, normalised_distances(space, sequence[last / 2], p, landmarks));
  std::ostringstream prov;
  prov << "sequence tail, index " << last << " of " << sequence.size();
  h.provenance = prov.str();
  return h;
}

HorofunctionSample busemann(const Space& space, const GeodesicPath& gamma, const Point& p,
                            const std::vector<Point>& landmarks) {
  require_landmarks(space, p, landmarks);
  if (!gamma.space.same_model(space)) throw Rejection("ray lives on a different space");
  const GeodesicCheck check = is_geodesic(gamma, gamma.param_tolerance);
  if (!check.geodesic) {
    std::ostringstream msg;
    msg << "busemann needs a geodesic ray; defect " << check.worst_defect << " between samples " << check.worst_i
        << " and " << check.worst_j;
    throw Rejection(msg.str());
  }
  const double t_end = gamma.t_end();
  HorofunctionSample h;
  h.landmarks = landmarks;
  h.base = p;
  h.values = normalised_distances(space, gamma.at(t_end), p, landmarks);
  h.residual = max_change(h.values, normalised_distances(space, gamma.at(t_end / 2), p, landmarks));
  std::ostringstream prov;
  prov << "ray, horizon " << t_end;
  h.provenance = prov.str();
  return h;
}

double horofunction_distance(const HorofunctionSample& h1, const HorofunctionSample& h2) {
  if (h1.landmarks != h2.landmarks || !(h1.base == h2.base)) {
    throw Rejection("horofunction samples use different landmarks or base points");
  }
  return max_change(h1.values, h2.values);
}

std::vector<Point> default_landmarks(const Space& space, const Point& p, std::size_t count, double radius,
                                     std::uint64_t seed) {
  space.require(p);
  std::vector<Point> out{p};
  if (count <= 1) return out;
  if (space.discrete()) {
    const auto row = space.distances_from(p.node);
    std::vector<NodeId> order(space.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return (*row)[a] < (*row)[b]; });
    for (NodeId v : order) {
      if (out.size() >= count) break;
      if (v != p.node && (*row)[v] <= radius) out.push_back(space.node_point(v));
    }
    return out;
  }
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = count - 1;
  for (std::size_t k = 0; k < m; ++k) {
    const Real angle = kTwoPi * (static_cast<Real>(k) + Real(unit(rng))) / static_cast<Real>(m);
    const Real r = radius * std::sqrt(0.05 + 0.95 * unit(rng));
    const Point q = offset_point(space, p, r, angle);
    if (space.contains(q)) out.push_back(q);
  }
  return out;
}

bool CompactificationReport::bijective() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if ((sample_ray_class[i] == sample_ray_class[j]) != (sample_cluster[i] == sample_cluster[j])) return false;
    }
  }
  return true;
}

CompactificationReport compactification_compare(const Space& space, const std::vector<CompareDirection>& directions,
                                                const Point& p, const std::vector<Point>& landmarks,
                                                const CompareOptions& options) {
  CompactificationReport report;
  report.tol_cluster = options.tol_cluster;

  // Ray asymptoticity classes.
  std::vector<const GeodesicPath*> rays;
  std::vector<std::size_t> ray_direction;
  for (std::size_t d = 0; d < directions.size(); ++d) {
    if (directions[d].rays.empty() && directions[d].sequences.empty()) {
      throw Rejection("direction '" + directions[d].label + "' has no ray or sequence");
    }
    for (const auto& r : directions[d].rays) {
      rays.push_back(&r);
      ray_direction.push_back(d);
      report.horizon = std::max(report.horizon, r.horizon);
    }
  }
  UnionFind ray_uf(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      if (ray_uf.find(i) == ray_uf.find(j)) continue;
      if (asymptoticity(*rays[i], *rays[j], options.asymptoticity).asymptotic) ray_uf.unite(i, j);
    }
  }
  std::size_t ray_class_count = 0;
  const std::vector<std::size_t> ray_class = ray_uf.labels(ray_class_count);
  report.ray_classes = ray_class_count;

  // Horofunction samples, tagged with the class of their direction's first ray.
  std::size_t ray_index = 0;
  for (std::size_t d = 0; d < directions.size(); ++d) {
    std::size_t cls;
    if (directions[d].rays.empty()) {
      cls = report.ray_classes++;
    } else {
      cls = ray_class[ray_index];
    }
    for (std::size_t r = 0; r < directions[d].rays.size(); ++r, ++ray_index) {
      report.samples.push_back(busemann(space, directions[d].rays[r], p, landmarks));
      report.sample_direction.push_back(d);
      report.sample_ray_class.push_back(ray_class[ray_index]);
    }
    for (const auto& seq : directions[d].sequences) {
      report.samples.push_back(horofunction_from_sequence(space, seq, p, landmarks));
      report.sample_direction.push_back(d);
      report.sample_ray_class.push_back(cls);
    }
  }

  const std::size_t n = report.samples.size();
  report.distances.assign(n * n, 0.0);
  UnionFind cluster_uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = horofunction_distance(report.samples[i], report.samples[j]);
      report.distances[i * n + j] = report.distances[j * n + i] = dist;
      if (dist <= options.tol_cluster) cluster_uf.unite(i, j);
    }
  }
  report.sample_cluster = cluster_uf.labels(report.clusters);

  for (std::size_t a = 0; a < report.ray_classes; ++a) {
    for (std::size_t b = a; b < report.ray_classes; ++b) {
      ClassPairVerdict v;
      v.class_a = a;
      v.class_b = b;
      v.min_distance = kInfinity;
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || report.sample_ray_class[i] != a || report.sample_ray_class[j] != b) continue;
          any = true;
          v.min_distance = std::min(v.min_distance, report.distances[i * n + j]);
          v.max_distance = std::max(v.max_distance, report.distances[i * n + j]);
        }
      }
      if (!any) v.min_distance = 0.0;
      v.holds = a == b ? v.max_distance <= options.tol_cluster : v.min_distance > options.tol_cluster;
      report.verdicts.push_back(v);
    }
  }
  return report;
}

HorosphereVerdict horosphere_membership(const Space& space, const Point& z,
                                        const std::vector<std::vector<Point>>& sequences, double radius,
                                        const Point& p, HorosphereMode mode) {
  if (!(radius > 0)) throw Rejection("horosphere radius must be positive");
  if (sequences.empty()) throw Rejection("horosphere membership needs a sequence");
  space.require(z);
  space.require(p);
  HorosphereVerdict out;
  bool first = true;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    for (const Point& w : seq) space.require(w);
    if (!is_diverging(space, seq)) throw Rejection("horosphere membership needs diverging sequences");
    std::vector<double> t, values;
    for (std::size_t k = seq.size() / 2; k < seq.size(); ++k) {
      const double v = space.distance(z, seq[k]) - space.distance(seq[k], p);
      t.push_back(static_cast<double>(k));
      values.push_back(v);
      if (first) out.value = v, first = false;
      out.value = mode == HorosphereMode::Big ? std::min(out.value, v) : std::max(out.value, v);
    }
    if (s == 0) out.trend = trailing_slope(t, values, 1.0);
  }
  out.margin = std::log(radius) - out.value;
  out.member = out.margin > 0;
  return out;
}

}  // namespace coarselab
