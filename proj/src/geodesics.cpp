#include "coarselab/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coarselab {

std::string_view to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Segment: return "segment";
    case PathKind::Ray: return "ray";
    case PathKind::Line: return "line";
  }
  return "?";
}

std::size_t GeodesicPath::nearest_index(double t) const {
  if (samples.empty()) throw Rejection("empty path");
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const PathSample& s, double v) { return s.t < v; });
  if (it == samples.end()) return samples.size() - 1;
  const auto i = static_cast<std::size_t>(it - samples.begin());
  if (i > 0 && t - samples[i - 1].t <= samples[i].t - t) return i - 1;
  return i;
}

Point GeodesicPath::at(double t) const {
  if (evaluator) return evaluator(t);
  return samples[nearest_index(t)].point;
}

namespace {

Complex to_origin(Complex a, Complex z) { return (z - a) / (Real(1) - std::conj(a) * z); }
Complex from_origin(Complex a, Complex v) { return (v + a) / (Real(1) + std::conj(a) * v); }

/// Parameters 0 = t_0 < ... < t_n = length with spacing at most `step`.
std::vector<double> parameter_grid(double length, double step) {
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / step - 1e-12)));
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = length * static_cast<double>(k) / static_cast<double>(n);
  t[n] = length;
  return t;
}

void fill_from_evaluator(GeodesicPath& path, double length) {
  for (double t : parameter_grid(length, path.step)) path.samples.push_back({t, path.evaluator(t)});
}

/// Hyperbolic geodesic through c with unit direction u at c, in disk coordinates.
std::function<Complex(double)> disk_geodesic(Complex c, Complex u) {
  return [c, u](double t) { return from_origin(c, std::tanh(Real(t) / 2) * u); };
}

void require_step(double step) {
  if (!(step > 0) || !std::isfinite(step)) throw Rejection("sample step must be positive");
}

GeodesicPath graph_path(const Space& space, const std::vector<NodeId>& nodes, const std::vector<double>& dist,
                        double cutoff) {
  GeodesicPath path(space);
  double gap = 0.0;
  for (NodeId v : nodes) {
    if (dist[v] > cutoff + 1e-12) break;
    if (!path.samples.empty()) gap = std::max(gap, dist[v] - path.samples.back().t);
    path.samples.push_back({dist[v], space.node_point(v)});
  }
  path.step = gap;
  path.param_tolerance = 1e-12 * (1.0 + path.samples.back().t);
  return path;
}

}  // namespace

GeodesicPath geodesic_segment(const Space& space, const Point& a, const Point& b, double step) {
  space.require(a);
  space.require(b);
  if (a == b) throw Rejection("geodesic_segment needs distinct endpoints");
  if (space.discrete()) {
    const ShortestPathTree tree = space.graph().shortest_path_tree(a.node);
    GeodesicPath path = graph_path(space, tree.path_to(b.node), tree.dist, kInfinity);
    path.horizon = path.t_end();
    return path;
  }
  require_step(step);
  const double length = space.distance(a, b);
  GeodesicPath path(space);
  path.step = step;
  path.horizon = length;
  path.param_tolerance = 1e-9 * (1.0 + length);
  switch (space.kind()) {
    case SpaceKind::PoincareDisk:
    case SpaceKind::HyperbolicStrip: {
      const bool strip = space.kind() == SpaceKind::HyperbolicStrip;
      const Complex za = strip ? strip_to_disk(a.z()) : a.z();
      const Complex zb = strip ? strip_to_disk(b.z()) : b.z();
      const Complex v = to_origin(za, zb);
      auto curve = disk_geodesic(za, v / std::abs(v));
      path.evaluator = [curve, strip](double t) {
        const Complex w = curve(t);
        return strip ? Point::strip(disk_to_strip(w)) : Point::disk(w);
      };
      break;
    }
    case SpaceKind::FlatCylinder: {
      const Real dx = b.x - a.x;
      Real dtheta = std::remainder(b.y - a.y, kTwoPi);
      if (dtheta <= -kPi) dtheta += kTwoPi;
      const Real len = std::sqrt(dx * dx + dtheta * dtheta);
      path.evaluator = [a, dx, dtheta, len](double t) {
        const Real s = Real(t) / len;
        return Point::cylinder(a.x + s * dx, a.y + s * dtheta);
      };
      break;
    }
    case SpaceKind::L1Slab: {
      // Staircase: x first, then y.
      const Real dx = b.x - a.x;
      const Real dy = b.y - a.y;
      path.evaluator = [a, b, dx, dy](double t) {
        const Real tt = t;
        const Real ax = std::fabs(dx);
        if (tt <= ax) return Point::slab(a.x + std::copysign(tt, dx), a.y);
        const Real ty = std::min(tt - ax, std::fabs(dy));
        return Point::slab(b.x, a.y + std::copysign(ty, dy));
      };
      break;
    }
    default: break;
  }
  fill_from_evaluator(path, length);
  path.samples.front().point = a;
  path.samples.back().point = b;
  return path;
}

GeodesicPath geodesic_ray(const Space& space, const Point& p, const BoundaryTarget& target, double horizon,
                          double step) {
  space.require(p);
  if (!(horizon > 0)) throw Rejection("ray horizon must be positive");
  using Kind = BoundaryTarget::Kind;

  if (space.discrete()) {
    std::vector<NodeId> nodes = target.nodes;
    if (target.kind == Kind::PlusInfinity || target.kind == Kind::MinusInfinity) {
      const GridLayout* grid = space.grid();
      if (!grid) throw Rejection("graph rays need an explicit node sequence");
      const auto [i0, j0] = grid->cell(p.node);
      const std::ptrdiff_t di = target.kind == Kind::PlusInfinity ? 1 : -1;
      for (std::ptrdiff_t i = i0 + di; i >= 0 && i < static_cast<std::ptrdiff_t>(grid->mask.nx); i += di) {
        if (auto n = grid->node_at_cell(i, j0)) nodes.push_back(*n);
      }
    } else if (target.kind != Kind::NodeSequence) {
      throw Rejection("discrete spaces take node sequences or grid ends as ray targets");
    }
    if (nodes.empty()) throw Rejection("ray target sequence is empty");
    for (NodeId v : nodes) space.require(space.node_point(v));
    const ShortestPathTree tree = space.graph().shortest_path_tree(p.node);
    const double last = tree.dist[nodes.back()];
    double first_half = 0.0;
    for (std::size_t k = 0; k < (nodes.size() + 1) / 2; ++k) first_half = std::max(first_half, tree.dist[nodes[k]]);
    if (nodes.size() < 2 || !(last > first_half) || last < horizon - 1e-12) {
      throw Rejection("ray target is not diverging: the sequence does not leave the ball of radius " +
                      std::to_string(horizon) + " around the start");
    }
    GeodesicPath path = graph_path(space, tree.path_to(nodes.back()), tree.dist, horizon);
    path.kind = PathKind::Ray;
    path.horizon = horizon;
    return path;
  }

  require_step(step);
  GeodesicPath path(space);
  path.kind = PathKind::Ray;
  path.step = step;
  path.horizon = horizon;
  path.param_tolerance = 1e-9 * (1.0 + horizon);
  switch (space.kind()) {
    case SpaceKind::PoincareDisk: {
      if (target.kind != Kind::UnitCircle) throw Rejection("disk rays need a unimodular target");
      const Complex c = p.z();
      const Complex v = to_origin(c, target.direction);
      auto curve = disk_geodesic(c, v / std::abs(v));
      path.evaluator = [curve](double t) { return Point::disk(curve(t)); };
      break;
    }
    case SpaceKind::HyperbolicStrip: {
      Real sign;
      if (target.kind == Kind::PlusInfinity) sign = 1;
      else if (target.kind == Kind::MinusInfinity) sign = -1;
      else throw Rejection("strip rays target +inf or -inf");
      // exp(pi z / 2) maps the strip onto the right half-plane, where the
      // rays to infinity are the horizontal lines a e^t + i b. Rays to -inf
      // are the images of rays to +inf under z -> -z.
      const Complex w0 = std::exp(kPi / 2 * sign * p.z());
      const Real a = w0.real(), b = w0.imag();
      path.evaluator = [a, b, sign](double t) {
        const Real tt = t;
        const Complex z = (2 / kPi) * (tt + std::log(Complex(a, b * std::exp(-tt))));
        return Point::strip(sign * z);
      };
      break;
    }
    case SpaceKind::FlatCylinder: {
      Real sign;
      if (target.kind == Kind::PlusInfinity) sign = 1;
      else if (target.kind == Kind::MinusInfinity) sign = -1;
      else throw Rejection("cylinder rays target +inf or -inf");
      path.evaluator = [p, sign](double t) { return Point::cylinder(p.x + sign * Real(t), p.y); };
      break;
    }
    case SpaceKind::L1Slab: {
      if (target.kind != Kind::PlusInfinity) throw Rejection("the slab has a single end, at +inf");
      path.evaluator = [p](double t) { return Point::slab(p.x + Real(t), p.y); };
      break;
    }
    default: break;
  }
  fill_from_evaluator(path, horizon);
  path.samples.front().point = p;
  return path;
}

double distance_to_path(const GeodesicPath& path, const Point& x, double* argmin_t) {
  const Space& space = path.space;
  std::size_t best = 0;
  double best_d = kInfinity;
  if (space.discrete()) {
    const auto row = space.distances_from(x.node);
    for (std::size_t k = 0; k < path.samples.size(); ++k) {
      const double d = (*row)[path.samples[k].point.node];
      if (d < best_d) best_d = d, best = k;
    }
  } else {
    for (std::size_t k = 0; k < path.samples.size(); ++k) {
      const double d = space.distance(x, path.samples[k].point);
      if (d < best_d) best_d = d, best = k;
    }
  }
  double best_t = path.samples[best].t;
  if (path.evaluator && path.samples.size() > 1) {
    const double lo = path.samples[best == 0 ? 0 : best - 1].t;
    const double hi = path.samples[std::min(best + 1, path.samples.size() - 1)].t;
    auto f = [&](double t) { return space.distance(x, path.evaluator(t)); };
    const double t = golden_section_minimize(f, lo, hi);
    const double d = f(t);
    if (d < best_d) best_d = d, best_t = t;
  }
  if (argmin_t) *argmin_t = best_t;
  return best_d;
}

double trailing_slope(const std::vector<double>& t, const std::vector<double>& values, double fraction) {
  const std::size_t n = std::min(t.size(), values.size());
  if (n < 2) return 0.0;
  std::size_t m = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  m = std::clamp<std::size_t>(m, 2, n);
  const std::size_t first = n - m;
  double mt = 0, mv = 0;
  for (std::size_t k = first; k < n; ++k) mt += t[k], mv += values[k];
  mt /= static_cast<double>(m);
  mv /= static_cast<double>(m);
  double sxy = 0, sxx = 0;
  for (std::size_t k = first; k < n; ++k) {
    sxy += (t[k] - mt) * (values[k] - mv);
    sxx += (t[k] - mt) * (t[k] - mt);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iterations && b - a > 1e-15 * (1.0 + std::fabs(a)); ++k) {
    if (fc <= fd) {
      b = d, d = c, fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

AsymptoticityProfile asymptoticity(const GeodesicPath& gamma, const GeodesicPath& sigma,
                                   const AsymptoticityOptions& options) {
  if (!gamma.space.same_model(sigma.space)) throw Rejection("asymptoticity needs two paths on the same space");
  if (std::fabs(gamma.horizon - sigma.horizon) > 1e-9 * (1.0 + gamma.horizon)) {
    throw Rejection("asymptoticity needs equal horizons");
  }
  const Space& space = gamma.space;
  AsymptoticityProfile out;

  const double t_end = std::min(gamma.t_end(), sigma.t_end());
  const double step = std::max({gamma.step, sigma.step, 1e-9});
  out.t = parameter_grid(t_end, step);
  out.sup_profile.resize(out.t.size());
  out.inf_profile.resize(out.t.size());
  for (std::size_t k = 0; k < out.t.size(); ++k) {
    const Point g = gamma.at(out.t[k]);
    const double sup = space.distance(g, sigma.at(out.t[k]));
    out.sup_profile[k] = sup;
    out.inf_profile[k] = std::min(sup, distance_to_path(sigma, g));
  }

  out.sup_max = *std::max_element(out.sup_profile.begin(), out.sup_profile.end());
  out.sup_slope = trailing_slope(out.t, out.sup_profile, options.trend_fraction);

  // Alignment: start from the closest point of sigma to gamma(t_end), then
  // minimise the trend-window sup of d(gamma(t), sigma(t + T)).
  double s_star = 0.0;
  distance_to_path(sigma, gamma.at(t_end), &s_star);
  const double t0 = s_star - t_end;
  const double window_lo = (1.0 - options.trend_fraction) * t_end;
  auto window_sup = [&](double shift) {
    const double lo = std::max(window_lo, -shift);
    const double hi = std::min(t_end, sigma.t_end() - shift);
    if (hi < lo) return kInfinity;
    double worst = 0.0;
    const int m = 48;
    for (int k = 0; k <= m; ++k) {
      const double t = lo + (hi - lo) * k / m;
      worst = std::max(worst, space.distance(gamma.at(t), sigma.at(t + shift)));
    }
    return worst;
  };
  const double radius = std::max(1.0, 2.0 * step);
  const double refined = golden_section_minimize(window_sup, t0 - radius, t0 + radius);
  out.alignment_shift = window_sup(refined) <= window_sup(t0) ? refined : t0;
  if (std::fabs(out.alignment_shift) < 1e-12) out.alignment_shift = 0.0;

  // When sigma runs ahead (T > 0) the partner of gamma(t) lies beyond the
  // truncation of sigma for t > t_end - T; the verdict ignores those t.
  std::size_t n = out.t.size();
  if (out.alignment_shift > 0.0) {
    const double t_valid = t_end - out.alignment_shift;
    while (n > 2 && out.t[n - 1] > t_valid + 1e-12) --n;
  }
  const std::vector<double> tv(out.t.begin(), out.t.begin() + static_cast<std::ptrdiff_t>(n));
  const std::vector<double> inf(out.inf_profile.begin(), out.inf_profile.begin() + static_cast<std::ptrdiff_t>(n));
  out.inf_terminal = inf.back();
  out.verdict_horizon = tv.back();

  const std::size_t tail = n - std::clamp<std::size_t>(
                                   static_cast<std::size_t>(std::ceil(options.trend_fraction * static_cast<double>(n))), 2,
                                   std::max<std::size_t>(n, 2));
  const double tail_max = *std::max_element(inf.begin() + static_cast<std::ptrdiff_t>(std::min(tail, n - 1)), inf.end());
  bool vanishing = tail_max <= 1e-12;
  if (!vanishing) {
    std::vector<double> logs(n);
    for (std::size_t k = 0; k < n; ++k) logs[k] = std::log(std::max(inf[k], 1e-300));
    out.inf_log_slope = trailing_slope(tv, logs, options.trend_fraction);
  }
  const double slack = space.tolerance();
  out.strongly_asymptotic = out.inf_terminal < options.strong_tolerance + slack &&
                            (vanishing || out.inf_log_slope < options.log_slope_threshold);
  out.asymptotic = out.strongly_asymptotic ||
                   (out.sup_max <= options.asymptotic_threshold && out.sup_slope <= options.sup_slope_limit);
  return out;
}

namespace {

std::vector<std::size_t> subsample(std::size_t n, std::size_t limit) {
  std::vector<std::size_t> idx;
  if (n <= limit) {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }
  for (std::size_t k = 0; k < limit; ++k) {
    idx.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(k) * static_cast<double>(n - 1) /
                                                        static_cast<double>(limit - 1))));
  }
  return idx;
}

/// Pairwise distances between the selected samples.
std::vector<double> pair_distances(const GeodesicPath& path, const std::vector<std::size_t>& idx) {
  const std::size_t m = idx.size();
  std::vector<double> d(m * m, 0.0);
  const Space& space = path.space;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = path.samples[idx[i]].point;
    std::shared_ptr<const std::vector<double>> row;
    if (space.discrete()) row = space.distances_from(a.node);
    for (std::size_t j = i + 1; j < m; ++j) {
      const Point& b = path.samples[idx[j]].point;
      d[i * m + j] = d[j * m + i] = row ? (*row)[b.node] : space.distance(a, b);
    }
  }
  return d;
}

std::size_t pair_limit(const GeodesicPath& path) {
  // Each source on a large graph costs a full shortest-path search.
  const Space& space = path.space;
  if (space.discrete() && !space.dense_distances()) return 64;
  return 2000;
}

}  // namespace

GeodesicCheck is_geodesic(const GeodesicPath& path, double tol) {
  if (path.samples.size() < 2) throw Rejection("is_geodesic needs at least two samples");
  const auto idx = subsample(path.samples.size(), pair_limit(path));
  const auto d = pair_distances(path, idx);
  const std::size_t m = idx.size();
  GeodesicCheck check;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double defect = std::fabs(d[i * m + j] - std::fabs(path.samples[idx[j]].t - path.samples[idx[i]].t));
      if (defect > check.worst_defect) {
        check.worst_defect = defect;
        check.worst_i = idx[i];
        check.worst_j = idx[j];
      }
    }
  }
  check.geodesic = check.worst_defect <= tol + path.space.tolerance();
  return check;
}

DefectProfile almost_geodesic_defect(const GeodesicPath& path, double tol, double tail_fraction) {
  if (path.samples.empty()) throw Rejection("almost_geodesic_defect needs samples");
  const auto idx = subsample(path.samples.size(), pair_limit(path));
  const auto d = pair_distances(path, idx);
  const std::size_t m = idx.size();
  DefectProfile out;
  out.t.resize(m);
  out.lower.assign(m, 0.0);
  out.upper.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    out.t[i] = path.samples[idx[i]].t;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dt = std::fabs(path.samples[idx[j]].t - out.t[i]);
      out.lower[i] = std::max(out.lower[i], dt - d[i * m + j]);
      out.upper[i] = std::max(out.upper[i], d[i * m + j] - dt);
    }
  }
  // A pair (t1, t2) counts for every t <= min(t1, t2): suffix maxima.
  for (std::size_t i = m - 1; i-- > 0;) {
    out.lower[i] = std::max(out.lower[i], out.lower[i + 1]);
    out.upper[i] = std::max(out.upper[i], out.upper[i + 1]);
  }
  const double t_tail = out.t.front() + (1.0 - tail_fraction) * (out.t.back() - out.t.front());
  const auto k = static_cast<std::size_t>(
      std::lower_bound(out.t.begin(), out.t.end(), t_tail - 1e-12) - out.t.begin());
  const std::size_t at = std::min(k, m - 1);
  out.tail_defect = std::max(out.lower[at], out.upper[at]);
  out.almost_geodesic = out.tail_defect <= tol + path.space.tolerance() + path.param_tolerance;
  return out;
}

bool geodesic_region_membership(const GeodesicPath& gamma, double radius, const Point& x) {
  if (!(radius > 0)) throw Rejection("region radius must be positive");
  const Space& space = gamma.space;
  double best = kInfinity;
  if (space.discrete()) {
    const auto row = space.distances_from(x.node);
    for (const auto& s : gamma.samples) best = std::min(best, (*row)[s.point.node]);
  } else {
    for (const auto& s : gamma.samples) best = std::min(best, space.distance(x, s.point));
  }
  return best < radius - space.tolerance();
}

}  // namespace coarselab
