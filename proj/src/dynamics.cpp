#include "coarselab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace coarselab {

namespace {

/// Disk points this close to the circle no longer carry enough precision for
/// distance evaluations.
bool precise(const Point& p) {
  if (p.kind == SpaceKind::PoincareDisk) return 1 - std::norm(p.z()) >= Real(1e-12);
  if (p.kind == SpaceKind::HyperbolicStrip) return 1 - std::fabs(p.y) >= Real(1e-12);
  return true;
}

struct Orbit {
  std::vector<Point> points;
  bool truncated = false;
  std::string reason;
};

Orbit orbit(const Space& space, const MapDescriptor& f, const Point& x, std::size_t n) {
  space.require(x);
  Orbit o;
  o.points.reserve(n + 1);
  o.points.push_back(x);
  for (std::size_t k = 1; k <= n; ++k) {
    auto y = f.apply(o.points.back());
    if (!y || !space.contains(*y)) {
      o.truncated = true;
      o.reason = "orbit left the model after " + std::to_string(k - 1) + " steps";
      break;
    }
    if (!precise(*y)) {
      o.truncated = true;
      o.reason = "orbit reached the precision limit after " + std::to_string(k - 1) + " steps";
      break;
    }
    o.points.push_back(*y);
  }
  return o;
}

/// d(x, f^k x) for k = 0..steps.
std::vector<double> orbit_distances(const Space& space, const Orbit& o) {
  std::vector<double> d(o.points.size(), 0.0);
  if (space.discrete()) {
    const auto row = space.distances_from(o.points.front().node);
    for (std::size_t k = 1; k < o.points.size(); ++k) d[k] = (*row)[o.points[k].node];
  } else {
    for (std::size_t k = 1; k < o.points.size(); ++k) d[k] = space.distance(o.points.front(), o.points[k]);
  }
  return d;
}

std::optional<Point> make_point(const Space& space, Real x, Real y) {
  Point p;
  switch (space.kind()) {
    case SpaceKind::PoincareDisk: p = Point::disk({x, y}); break;
    case SpaceKind::HyperbolicStrip: p = Point::strip({x, y}); break;
    case SpaceKind::FlatCylinder: p = Point::cylinder(x, y); break;
    case SpaceKind::L1Slab: p = Point::slab(x, y); break;
    default: return std::nullopt;
  }
  if (!space.contains(p) || !precise(p)) return std::nullopt;
  return p;
}

Point search_centre(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisk: return Point::disk({0, 0});
    case SpaceKind::HyperbolicStrip: return Point::strip({0, 0});
    case SpaceKind::FlatCylinder: return Point::cylinder(0, 0);
    default: return Point::slab(0, 0);
  }
}

/// Seed grid covering one fundamental domain of the map when it is known.
std::vector<Point> seed_points(const Space& space, const MapDescriptor& f, std::size_t count) {
  const std::size_t rows = 4;
  const std::size_t cols = std::max<std::size_t>(1, count / rows);
  std::vector<Point> seeds;
  const Real period = f.shift != 0 ? std::fabs(f.shift) * f.power : 1;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Real u = (static_cast<Real>(i) + Real(0.5)) / rows;
      const Real v = static_cast<Real>(j) / cols;
      std::optional<Point> p;
      switch (space.kind()) {
        case SpaceKind::PoincareDisk: {
          const Complex z = std::polar(Real(0.8) * u, kTwoPi * (v + Real(0.5) * (i % 2) / cols));
          p = make_point(space, z.real(), z.imag());
          break;
        }
        case SpaceKind::HyperbolicStrip: p = make_point(space, period * v, Real(-0.9) + Real(1.8) * u); break;
        case SpaceKind::FlatCylinder: p = make_point(space, period * v, kTwoPi * u); break;
        case SpaceKind::L1Slab: p = make_point(space, 2 * v, -1 + 2 * u); break;
        default: break;
      }
      if (p) seeds.push_back(*p);
    }
  }
  return seeds;
}

double initial_step(const Space& space) { return space.kind() == SpaceKind::PoincareDisk ? 0.05 : 0.1; }

}  // namespace

IsometryCheck check_isometry(const Space& space, const MapDescriptor& f, std::size_t n_pairs, std::uint64_t seed,
                             std::size_t source_pool) {
  IsometryCheck out;
  out.slack = 2 * space.tolerance();
  const bool pooled = space.discrete() && !space.dense_distances() && source_pool > 0;
  std::vector<Point> pool;
  if (pooled) pool = sample_points(space, std::min(source_pool, space.node_count()), mix_seed(seed, n_pairs + 1));
  bool isometric = true, nonexpanding = true;
  // Pairs whose image leaves the model are redrawn, up to 10 n_pairs draws.
  for (std::size_t k = 0; out.pairs_checked < n_pairs && k < 10 * n_pairs; ++k) {
    std::mt19937_64 rng(mix_seed(seed, k));
    const Point x = pooled ? pool[k % pool.size()] : draw_point(space, rng);
    const Point y = draw_point(space, rng);
    const auto fx = f.apply(x);
    const auto fy = f.apply(y);
    if (!fx || !fy || !space.contains(*fx) || !space.contains(*fy)) {
      ++out.pairs_skipped;
      continue;
    }
    double d0, d1;
    if (pooled) {
      d0 = (*space.distances_from(x.node))[y.node];
      d1 = (*space.distances_from(fx->node))[fy->node];
    } else {
      d0 = space.distance(x, y);
      d1 = space.distance(*fx, *fy);
    }
    ++out.pairs_checked;
    out.worst_defect = std::max(out.worst_defect, std::fabs(d1 - d0));
    out.worst_expansion = std::max(out.worst_expansion, d1 - d0);
    // Closed-form distances carry rounding error; allow 1e-12 (1 + d) on top of 2 eps_d.
    const double allowed = out.slack + 1e-12 * (1.0 + d0);
    isometric = isometric && std::fabs(d1 - d0) <= allowed;
    nonexpanding = nonexpanding && d1 - d0 <= allowed;
  }
  out.isometric = out.pairs_checked > 0 && isometric;
  out.nonexpanding = out.pairs_checked > 0 && nonexpanding;
  return out;
}

DivergenceEstimate divergence_rate(const Space& space, const MapDescriptor& f, const Point& x, std::size_t n) {
  if (n < 2) throw Rejection("divergence_rate needs N >= 2");
  const Orbit o = orbit(space, f, x, n);
  DivergenceEstimate out;
  out.truncated = o.truncated;
  out.truncation_reason = o.reason;
  out.steps = o.points.size() - 1;
  if (out.steps == 0) throw Rejection("orbit leaves the model at once: " + o.reason);
  const std::vector<double> d = orbit_distances(space, o);
  out.c = kInfinity;
  for (std::size_t k = 1; k <= out.steps; ++k) {
    const double ratio = d[k] / static_cast<double>(k);
    out.table.push_back({k, d[k], ratio});
    out.c = std::min(out.c, ratio);
  }
  const std::size_t m = out.steps;
  const std::size_t h = m / 2;
  out.primary = d[m] / static_cast<double>(m);
  out.tail_quotient = (d[m] - d[h]) / static_cast<double>(m - h);
  out.spread = std::max({out.c, out.primary, out.tail_quotient}) - std::min({out.c, out.primary, out.tail_quotient});
  return out;
}

double displacement(const Space& space, const MapDescriptor& f, const Point& x) {
  const auto y = f.apply(x);
  if (!y) throw Rejection("map is undefined at " + describe(x));
  return space.distance(x, *y);
}

DisplacementEstimate descend_displacement(const Space& space, const MapDescriptor& f, const Point& start,
                                          double final_step) {
  space.require(start);
  DisplacementEstimate out;
  out.argmin = start;
  out.tau = displacement(space, f, start);
  out.evaluations = 1;
  if (space.discrete()) {
    out.attained = true;
    return out;
  }
  Real h = initial_step(space);
  const std::size_t budget = 200000;
  const Real dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (h >= final_step && out.evaluations < budget) {
    bool improved = false;
    for (const auto& dir : dirs) {
      const auto q = make_point(space, out.argmin.x + h * dir[0], out.argmin.y + h * dir[1]);
      if (!q) continue;
      const auto fq = f.apply(*q);
      if (!fq || !space.contains(*fq) || !precise(*fq)) continue;
      const double value = space.distance(*q, *fq);
      ++out.evaluations;
      if (value < out.tau) {
        out.tau = value;
        out.argmin = *q;
        improved = true;
        break;
      }
    }
    if (!improved) h /= 2;
  }
  const bool converged = h < final_step;
  out.attained = converged && space.distance(out.argmin, search_centre(space)) < 15.0;
  return out;
}

DisplacementEstimate minimal_displacement(const Space& space, const MapDescriptor& f,
                                          const DisplacementSearch& search) {
  if (space.discrete()) {
    std::vector<NodeId> nodes = search.candidates;
    if (nodes.empty()) {
      nodes.resize(space.node_count());
      for (NodeId v = 0; v < nodes.size(); ++v) nodes[v] = v;
    }
    DisplacementEstimate out;
    out.tau = kInfinity;
    const auto* dense = space.dense_distances();
    std::optional<DijkstraWorkspace> workspace;
    if (!dense) workspace.emplace(space.graph());
    const std::size_t n = space.node_count();
    for (NodeId v : nodes) {
      const Point p = space.node_point(v);
      const auto q = f.apply(p);
      if (!q || !space.contains(*q)) continue;
      ++out.evaluations;
      // Bounded search: anything not strictly below the best is irrelevant.
      const double d = dense ? (*dense)[v * n + q->node] : workspace->distance(v, q->node, out.tau);
      if (d < out.tau) {
        out.tau = d;
        out.argmin = p;
      }
    }
    if (out.evaluations == 0) throw Rejection("map leaves the graph at every candidate node");
    out.attained = true;
    return out;
  }
  const std::vector<Point> seeds = seed_points(space, f, search.starts);
  if (seeds.empty()) throw Rejection("no admissible search start");
  DisplacementEstimate best;
  bool first = true;
  std::size_t evaluations = 0;
  for (const Point& s : seeds) {
    if (!f.apply(s)) continue;
    DisplacementEstimate e = descend_displacement(space, f, s, search.final_step);
    evaluations += e.evaluations;
    if (first || e.tau < best.tau) best = e, first = false;
  }
  if (first) throw Rejection("map is undefined at every search start");
  best.evaluations = evaluations;
  return best;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Elliptic: return "elliptic";
    case Classification::Parabolic: return "parabolic";
    case Classification::Hyperbolic: return "hyperbolic";
    case Classification::Indeterminate: return "indeterminate";
  }
  return "?";
}

ClassificationReport classify(const Space& space, const MapDescriptor& f, const Point& x, std::size_t n,
                              const ClassifyOptions& options) {
  if (n < 10) throw Rejection("classify needs N >= 10");
  const Orbit o = orbit(space, f, x, n);
  const std::size_t m = o.points.size() - 1;
  ClassificationReport out;
  if (m < 10) {
    out.evidence = "orbit too short: " + o.reason;
    return out;
  }
  const std::vector<double> d = orbit_distances(space, o);
  out.first_half_sup = *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m / 2 + 1));
  out.second_half_sup = *std::max_element(d.begin() + static_cast<std::ptrdiff_t>(m / 2 + 1), d.end());
  out.c = kInfinity;
  for (std::size_t k = 1; k <= m; ++k) out.c = std::min(out.c, d[k] / static_cast<double>(k));
  std::ostringstream ev;
  ev << "steps " << m << ", sup first half " << out.first_half_sup << ", sup second half " << out.second_half_sup
     << ", c " << out.c;
  if (out.second_half_sup <= out.first_half_sup + options.growth_tolerance * (1.0 + out.first_half_sup)) {
    out.verdict = Classification::Elliptic;
  } else if (out.c > options.c_hyperbolic) {
    out.verdict = Classification::Hyperbolic;
  } else if (out.c < options.c_parabolic) {
    out.verdict = Classification::Parabolic;
  } else {
    out.verdict = Classification::Indeterminate;
    ev << " (inside the band [" << options.c_parabolic << ", " << options.c_hyperbolic << "])";
  }
  out.evidence = ev.str();
  return out;
}

DenjoyWolffEstimate denjoy_wolff(const Space& space, const MapDescriptor& f, const std::vector<Point>& starts,
                                 std::size_t n, double tol) {
  if (starts.empty()) throw Rejection("denjoy_wolff needs at least one start");
  if (classify(space, f, starts.front(), std::max<std::size_t>(n, 10)).verdict == Classification::Elliptic) {
    throw Rejection("elliptic maps have no Denjoy-Wolff point");
  }
  DenjoyWolffEstimate out;
  std::vector<Complex> directions;
  for (const Point& s : starts) {
    const Orbit o = orbit(space, f, s, n);
    const Point& last = o.points.back();
    out.orbit_tails.push_back(last);
    switch (space.kind()) {
      case SpaceKind::PoincareDisk:
        out.kind = "unit-circle";
        directions.push_back(last.z() / std::abs(last.z()));
        break;
      case SpaceKind::HyperbolicStrip:
      case SpaceKind::FlatCylinder:
      case SpaceKind::L1Slab:
        directions.push_back(last.x >= s.x ? Complex(1, 0) : Complex(-1, 0));
        break;
      case SpaceKind::ConformalGrid: {
        const auto [x0, y0] = space.grid()->position(s.node);
        const auto [x1, y1] = space.grid()->position(last.node);
        directions.push_back(std::fabs(x1 - x0) >= std::fabs(y1 - y0) ? Complex(x1 >= x0 ? 1 : -1, 0)
                                                                       : Complex(0, y1 >= y0 ? 1 : -1));
        break;
      }
      case SpaceKind::Graph:
        directions.push_back(Complex(static_cast<Real>(last.node), 0));
        break;
    }
  }
  for (const Complex& a : directions) {
    for (const Complex& b : directions) out.spread = std::max(out.spread, static_cast<double>(std::abs(a - b)));
  }
  out.direction = directions.front();
  if (space.kind() != SpaceKind::PoincareDisk) {
    const Complex d = out.direction;
    if (space.kind() == SpaceKind::ConformalGrid) {
      out.kind = d.real() > 0 ? "grid exit +x" : d.real() < 0 ? "grid exit -x" : d.imag() > 0 ? "grid exit +y"
                                                                                                 : "grid exit -y";
    } else if (space.kind() == SpaceKind::Graph) {
      out.kind = "node " + std::to_string(static_cast<NodeId>(d.real()));
    } else {
      out.kind = d.real() > 0 ? "+inf" : "-inf";
    }
  }
  out.agree = out.spread <= tol;
  return out;
}

namespace {

DilationEstimate tail_stats(DilationEstimate e, bool use_min) {
  if (e.values.empty()) throw Rejection("dilation approach has no admissible points");
  const std::size_t first = e.values.size() / 2;
  const auto [lo, hi] = std::minmax_element(e.values.begin() + static_cast<std::ptrdiff_t>(first), e.values.end());
  e.residual = *hi - *lo;
  e.log_lambda = use_min ? *lo : e.values.back();
  return e;
}

}  // namespace

DilationEstimate dilation_along_ray(const Space& space, const MapDescriptor& f, const GeodesicPath& ray,
                                    const Point& p) {
  if (ray.kind != PathKind::Ray) throw Rejection("dilation needs a ray");
  DilationEstimate e;
  for (const auto& s : ray.samples) {
    const auto fz = f.apply(s.point);
    if (!fz || !space.contains(*fz) || !precise(*fz)) continue;
    e.t.push_back(s.t);
    e.values.push_back(space.distance(s.point, p) - space.distance(*fz, p));
  }
  return tail_stats(std::move(e), false);
}

DilationEstimate dilation_along_sequence(const Space& space, const MapDescriptor& f,
                                         const std::vector<Point>& sequence, const Point& p) {
  if (sequence.size() < 2 || !(space.distance(sequence.front(), sequence.back()) >
                               space.distance(sequence.front(), sequence[sequence.size() / 2]))) {
    throw Rejection("dilation needs a diverging approach");
  }
  DilationEstimate e;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const auto fz = f.apply(sequence[k]);
    if (!fz || !space.contains(*fz) || !precise(*fz)) continue;
    e.t.push_back(static_cast<double>(k));
    e.values.push_back(space.distance(sequence[k], p) - space.distance(*fz, p));
  }
  return tail_stats(std::move(e), true);
}

namespace {

/// Distance between the boundary coordinate of q and the end of the ray.
double boundary_error(const Space& space, const GeodesicPath& ray, const Point& q) {
  const Point end = ray.samples.back().point;
  switch (space.kind()) {
    case SpaceKind::PoincareDisk: return static_cast<double>(std::abs(q.z() - end.z() / std::abs(end.z())));
    case SpaceKind::HyperbolicStrip: {
      const Complex e = strip_to_disk(end.z());
      return static_cast<double>(std::abs(strip_to_disk(q.z()) - e / std::abs(e)));
    }
    default: {
      const Real sign = end.x >= ray.samples.front().point.x ? 1 : -1;
      return static_cast<double>(std::exp(-sign * q.x));
    }
  }
}

}  // namespace

BrfpVerdict brfp_check(const Space& space, const MapDescriptor& f, const GeodesicPath& ray, const Point& p,
                       const std::vector<double>& radii, double tol) {
  if (space.discrete()) throw Rejection("brfp_check needs an analytic space");
  if (ray.kind != PathKind::Ray || ray.samples.size() < 3) throw Rejection("brfp_check needs a ray toward eta");
  BrfpVerdict out;
  out.dilation = dilation_along_ray(space, f, ray, p);
  out.finite_dilation = std::isfinite(out.dilation.log_lambda) && out.dilation.residual < 1.0;
  out.geodesic_limit = true;
  const std::size_t n = ray.samples.size();
  const std::size_t first = n - std::max<std::size_t>(2, n * 3 / 10);
  for (double radius : radii) {
    double error = 0.0;
    for (std::size_t k = first; k + 1 < n; ++k) {
      const Point& g = ray.samples[k].point;
      const Point& next = ray.samples[k + 1].point;
      const Real heading = space.kind() == SpaceKind::HyperbolicStrip || space.kind() == SpaceKind::PoincareDisk
                               ? std::arg(next.z() - g.z())
                               : Real(0);
      Point x = offset_point(space, g, Real(radius) / 2, heading + kPi / 2);
      if (!geodesic_region_membership(ray, radius, x)) x = g;
      const auto fx = f.apply(x);
      if (!fx) {
        error = kInfinity;
        break;
      }
      error = boundary_error(space, ray, *fx);
    }
    out.radii.push_back(radius);
    out.image_error.push_back(error);
    if (!(error < tol)) out.geodesic_limit = false;
  }
  out.brfp = out.finite_dilation && out.geodesic_limit;
  return out;
}

double default_tol_gap(const Space& space) {
  return space.kind() == SpaceKind::ConformalGrid ? 5 * space.tolerance() : 1e-3;
}

AxisResult construct_axis(const Space& space, const MapDescriptor& f, const Point& x0, const AxisOptions& options) {
  space.require(x0);
  const double c = options.c ? *options.c : divergence_rate(space, f, x0, options.rate_steps).c;
  const double tau = options.tau ? *options.tau : minimal_displacement(space, f, options.search).tau;
  const double tol = options.tol_gap >= 0 ? options.tol_gap : default_tol_gap(space);
  const double gap = tau - c;
  if (gap > tol) {
    std::ostringstream msg;
    msg << "not axial at tolerance: gap " << gap << " exceeds " << tol;
    throw Rejection(msg.str());
  }
  if (tau <= std::max(2.0 * space.tolerance(), 1e-9)) {
    throw Rejection("minimal displacement is 0: the map is not hyperbolic");
  }
  const auto fx0 = f.apply(x0);
  if (!fx0) throw Rejection("map is undefined at the axis start");
  const double length = space.distance(x0, *fx0);
  if (length - tau > tol) throw Rejection("start does not attain the minimal displacement");

  const GeodesicPath seg = geodesic_segment(space, x0, *fx0, options.step);
  const std::size_t m = seg.samples.size() - 1;
  const auto K = static_cast<long>(std::ceil(options.horizon / length));

  // Images f^k of the segment samples, k = -K .. K-1, stopping where the map leaves the model.
  std::vector<Point> current;
  for (const auto& s : seg.samples) current.push_back(s.point);
  std::vector<std::vector<Point>> forward{current};
  for (long k = 1; k < K; ++k) {
    std::vector<Point> next;
    for (const Point& q : forward.back()) {
      auto y = f.apply(q);
      if (!y || !space.contains(*y) || !precise(*y)) break;
      next.push_back(*y);
    }
    if (next.size() != current.size()) break;
    forward.push_back(std::move(next));
  }
  std::vector<std::vector<Point>> backward;
  if (f.invertible()) {
    std::vector<Point> prev = current;
    for (long k = 1; k <= K; ++k) {
      std::vector<Point> next;
      for (const Point& q : prev) {
        auto y = f.backward(q);
        if (!y || !space.contains(*y) || !precise(*y)) break;
        next.push_back(*y);
      }
      if (next.size() != current.size()) break;
      prev = next;
      backward.push_back(std::move(next));
    }
  }

  GeodesicPath path(space);
  path.kind = backward.empty() ? PathKind::Ray : PathKind::Line;
  path.step = seg.step;
  auto append = [&](const std::vector<Point>& piece, long k, bool with_last) {
    for (std::size_t i = 0; i < (with_last ? m + 1 : m); ++i) {
      path.samples.push_back({static_cast<double>(k) * length + seg.samples[i].t, piece[i]});
    }
  };
  for (std::size_t b = backward.size(); b-- > 0;) append(backward[b], -static_cast<long>(b) - 1, false);
  for (std::size_t k = 0; k < forward.size(); ++k) append(forward[k], static_cast<long>(k), k + 1 == forward.size());
  path.horizon = std::max(-path.t_begin(), path.t_end());
  path.param_tolerance = std::max(seg.param_tolerance, 1e-9 * (1.0 + path.t_end() - path.t_begin()));
  if (seg.evaluator) {
    const auto k_lo = -static_cast<long>(backward.size());
    const auto k_hi = static_cast<long>(forward.size()) - 1;
    path.evaluator = [f, seg, length, k_lo, k_hi](double t) {
      const long k = std::clamp(static_cast<long>(std::floor(t / length)), k_lo, k_hi);
      const Point base = seg.evaluator(t - static_cast<double>(k) * length);
      return f.iterate(base, k).value_or(base);
    };
  }

  AxisResult out(path);
  out.c = c;
  out.tau = tau;
  out.gap = gap;
  for (std::size_t i = 0; i + m < path.samples.size(); ++i) {
    const auto image = f.apply(path.samples[i].point);
    if (!image) continue;
    out.invariance_defect = std::max(out.invariance_defect, space.distance(*image, path.samples[i + m].point));
  }
  out.geodesic = is_geodesic(path, path.param_tolerance);
  double shift = 0.0;
  distance_to_path(path, *fx0, &shift);
  out.translation = shift;
  if (space.kind() == SpaceKind::PoincareDisk) {
    double worst = 0.0;
    for (const auto& s : path.samples) {
      const Complex z = s.point.z();
      worst = std::max(worst, static_cast<double>(std::asinh(2 * std::fabs(z.imag()) / (1 - std::norm(z)))));
    }
    out.distance_to_real_diameter = worst;
  }
  return out;
}

double axis_separation(const GeodesicPath& a, const GeodesicPath& b, double window) {
  double worst = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const GeodesicPath& p = pass == 0 ? a : b;
    const GeodesicPath& q = pass == 0 ? b : a;
    for (const auto& s : p.samples) {
      if (std::fabs(s.t) > window) continue;
      worst = std::max(worst, distance_to_path(q, s.point));
    }
  }
  return worst;
}

UniquenessReport axis_uniqueness_probe(const Space& space, const MapDescriptor& f, const std::vector<Point>& starts,
                                       const AxisOptions& options, double tol) {
  std::vector<GeodesicPath> axes;
  UniquenessReport out;
  AxisOptions opts = options;
  std::string last_error;
  for (const Point& s : starts) {
    const Point start = space.discrete() ? s : descend_displacement(space, f, s).argmin;
    try {
      AxisResult axis = construct_axis(space, f, start, opts);
      if (!opts.c) opts.c = axis.c;
      if (!opts.tau) opts.tau = axis.tau;
      out.projected_starts.push_back(start);
      axes.push_back(std::move(axis.path));
    } catch (const Rejection& e) {
      last_error = e.what();
    }
  }
  if (axes.size() < 2) throw Rejection("axis_uniqueness_probe needs two axes; last failure: " + last_error);
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      const double sep = axis_separation(axes[i], axes[j], options.horizon / 2);
      out.pairwise.push_back(sep);
      out.separation = std::max(out.separation, sep);
    }
  }
  out.unique = out.separation <= tol;
  return out;
}

PowerTable power_consistency(const Space& space, const MapDescriptor& f, int n_max, const Point& x, std::size_t n,
                             const DisplacementSearch& search, double relative_tol) {
  if (n_max < 2) throw Rejection("power_consistency needs n_max >= 2");
  PowerTable table;
  table.c_linear = table.tau_subadditive = true;
  double c1 = 0.0, tau1 = 0.0;
  for (int k = 1; k <= n_max; ++k) {
    const MapDescriptor g = power(f, k);
    PowerRow row;
    row.n = k;
    row.c = divergence_rate(space, g, x, std::max<std::size_t>(2, n / static_cast<std::size_t>(k))).c;
    row.tau = minimal_displacement(space, g, search).tau;
    row.tau_over_n = row.tau / k;
    if (k == 1) c1 = row.c, tau1 = row.tau;
    const double expected = k * c1;
    row.c_relative_error = expected > 1e-9 ? std::fabs(row.c - expected) / expected : std::fabs(row.c);
    if (row.c_relative_error > relative_tol) table.c_linear = false;
    if (row.tau > k * tau1 + default_tol_gap(space)) table.tau_subadditive = false;
    table.rows.push_back(row);
  }
  return table;
}

DynamicsReport analyze(const Space& space, const MapDescriptor& f, const Point& x, const AnalyzeOptions& options) {
  DynamicsReport r;
  r.map_name = f.name;
  r.tol_gap = default_tol_gap(space);
  r.rate = divergence_rate(space, f, x, options.rate_steps);
  r.displacement = minimal_displacement(space, f, options.search);
  r.gap = r.displacement.tau - r.rate.c;
  r.classification = classify(space, f, x, std::max<std::size_t>(options.rate_steps, 10));
  if (r.classification.verdict != Classification::Elliptic) {
    std::vector<Point> starts{x};
    starts.insert(starts.end(), options.dw_starts.begin(), options.dw_starts.end());
    try {
      r.denjoy_wolff = denjoy_wolff(space, f, starts, options.rate_steps);
    } catch (const Rejection&) {
    }
  }
  if (options.dilation_ray) r.dilation = dilation_along_ray(space, f, *options.dilation_ray, options.dilation_base);
  AxisOptions axis = options.axis;
  axis.c = r.rate.c;
  axis.tau = r.displacement.tau;
  try {
    r.axis.emplace(construct_axis(space, f, r.displacement.argmin, axis));
    r.axis_status = "constructed";
  } catch (const Rejection& e) {
    r.axis_status = std::string("rejected: ") + e.what();
  }
  return r;
}

}  // namespace coarselab
