#pragma once

// Randomized invariant checks shared by the property tests and the acceptance
// binary. Each check runs a fixed number of seeded trials on one space and
// reports the worst violation margin it saw (negative means every trial held).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "coarselab/boundary.hpp"
#include "coarselab/dynamics.hpp"
#include "coarselab/geodesics.hpp"
#include "coarselab/maps.hpp"

namespace coarselab::invariants {

inline constexpr std::size_t kTrials = 1000;
inline constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  explicit Outcome(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Largest value of (observed - allowed) over all trials.
  double worst = -std::numeric_limits<double>::infinity();
  std::string first_failure;

  bool ok() const { return trials > 0 && failures == 0; }
  void record(double observed, double allowed, const std::string& what = {}) {
    ++trials;
    worst = std::max(worst, observed - allowed);
    if (!(observed <= allowed)) {
      if (failures++ == 0) first_failure = what.empty() ? std::to_string(observed) + " > " + std::to_string(allowed) : what;
    }
  }
};

/// Floor for comparisons of sums of rounded distances.
inline double rounding(double scale) { return 1e-12 * (1 + std::fabs(scale)); }

struct NamedSpace {
  std::string name;
  Space space;
};

inline std::vector<Edge> random_weighted_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(1, 9);
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, static_cast<double>(w(rng))});
  for (std::size_t k = 0; k < n; ++k) {
    const NodeId a = node(rng), b = node(rng);
    if (a != b) edges.push_back({a, b, static_cast<double>(w(rng))});
  }
  return edges;
}

/// The six test spaces: four closed-form models, a weighted graph and a small
/// quasihyperbolic disk grid.
inline std::vector<NamedSpace> test_spaces() {
  return {
      {"disk", Space::poincare_disk()},
      {"strip", Space::hyperbolic_strip()},
      {"cylinder", Space::flat_cylinder()},
      {"slab", Space::l1_slab()},
      {"graph", build_graph_space(random_weighted_graph(60, kSeed))},
      {"grid", build_conformal_grid(disk_mask(0.1), DensitySpec::quasihyperbolic(DomainShape::Disk))},
  };
}

inline Outcome metric_axioms(const NamedSpace& s, std::size_t trials = kTrials) {
  Outcome out{"metric axioms (" + s.name + ")"};
  const Space& X = s.space;
  const double eps = X.tolerance();
  // Graph weights are integers, so graph distances are exact.
  const double sym_slack = X.grid() ? 2 * eps : 0.0;
  std::mt19937_64 rng(mix_seed(kSeed, 1));
  for (std::size_t k = 0; k < trials; ++k) {
    const Point a = draw_point(X, rng), b = draw_point(X, rng), c = draw_point(X, rng);
    const double ab = X.distance(a, b), ba = X.distance(b, a), bc = X.distance(b, c), ac = X.distance(a, c);
    out.record(std::fabs(ab - ba), sym_slack, "asymmetric pair");
    out.record(ac, ab + bc + 3 * eps + rounding(ab + bc), "triangle inequality");
    out.record(X.distance(a, a), 0.0, "d(a, a) != 0");
    out.record(-ab, 0.0, "negative distance");
  }
  out.trials = trials;
  return out;
}

inline Outcome segments_are_geodesic(const NamedSpace& s, std::size_t trials = kTrials) {
  Outcome out{"geodesic segments (" + s.name + ")"};
  const Space& X = s.space;
  std::mt19937_64 rng(mix_seed(kSeed, 2));
  std::size_t done = 0;
  while (done < trials) {
    const Point a = draw_point(X, rng), b = draw_point(X, rng);
    if (X.distance(a, b) == 0) continue;
    const GeodesicPath seg = geodesic_segment(X, a, b, 0.1);
    const GeodesicCheck check = is_geodesic(seg, seg.param_tolerance);
    out.record(check.geodesic ? 0.0 : 1.0, 0.0, "segment failed is_geodesic, defect " + std::to_string(check.worst_defect));
    ++done;
  }
  return out;
}

/// A random horofunction pair on one space: two normalisations of the same
/// limit, at base points y and y2, on the landmarks around y.
struct HoroPair {
  HorofunctionSample at_y;
  HorofunctionSample at_y2;
};

inline HoroPair random_horofunctions(const Space& X, std::mt19937_64& rng, std::uint64_t index) {
  const Point y = draw_point(X, rng), y2 = draw_point(X, rng);
  const auto landmarks = default_landmarks(X, y, 16, 3.0, mix_seed(kSeed, index));
  if (X.discrete()) {
    // Shortest path from a random node to the node farthest from it.
    const Point start = draw_point(X, rng);
    const auto row = X.distances_from(start.node);
    const NodeId far = static_cast<NodeId>(std::max_element(row->begin(), row->end()) - row->begin());
    std::vector<Point> seq;
    for (NodeId n : X.shortest_path(start.node, far)) seq.push_back(X.node_point(n));
    return {horofunction_from_sequence(X, seq, y, landmarks), horofunction_from_sequence(X, seq, y2, landmarks)};
  }
  BoundaryTarget target = BoundaryTarget::plus_infinity();
  if (X.kind() == SpaceKind::PoincareDisk) {
    target = BoundaryTarget::unit_circle(std::polar<Real>(1, std::uniform_real_distribution<Real>(0, 2 * kPi)(rng)));
  } else if (X.kind() != SpaceKind::L1Slab && std::bernoulli_distribution(0.5)(rng)) {
    target = BoundaryTarget::minus_infinity();
  }
  const GeodesicPath ray = geodesic_ray(X, draw_point(X, rng), target, 20, 0.5);
  return {busemann(X, ray, y, landmarks), busemann(X, ray, y2, landmarks)};
}

/// Normalisation, the 1-Lipschitz bound, and base-point independence.
inline std::vector<Outcome> horofunction_properties(const NamedSpace& s, std::size_t trials = kTrials) {
  Outcome norm{"horofunction normalisation (" + s.name + ")"};
  Outcome lip{"horofunction 1-Lipschitz (" + s.name + ")"};
  Outcome base{"Busemann base-point independence (" + s.name + ")"};
  const Space& X = s.space;
  const double eps = X.tolerance();
  std::mt19937_64 rng(mix_seed(kSeed, 3));
  for (std::size_t k = 0; k < trials; ++k) {
    const HoroPair h = random_horofunctions(X, rng, k);
    const auto& L = h.at_y.landmarks;
    // Landmarks start with the base point itself.
    norm.record(std::fabs(h.at_y.values.front()), 0.0, "h(p) != 0");
    double worst_lip = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < L.size(); ++i) {
      for (std::size_t j = i + 1; j < L.size(); ++j) {
        const double d = X.distance(L[i], L[j]);
        worst_lip = std::max(worst_lip, std::fabs(h.at_y.values[i] - h.at_y.values[j]) - d - 2 * eps - rounding(d));
      }
    }
    lip.record(worst_lip, 0.0, "Lipschitz excess " + std::to_string(worst_lip));
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, scale = 0;
    for (std::size_t i = 0; i < L.size(); ++i) {
      const double diff = h.at_y.values[i] - h.at_y2.values[i];
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
      scale = std::max({scale, std::fabs(h.at_y.values[i]), std::fabs(h.at_y2.values[i])});
    }
    base.record(hi - lo, 2 * std::max(h.at_y.residual, h.at_y2.residual) + rounding(scale),
                "base-point spread " + std::to_string(hi - lo));
  }
  return {norm, lip, base};
}

struct PowerCase {
  std::string name;
  Space space;
  std::function<MapDescriptor(std::mt19937_64&)> draw;
};

/// Hyperbolic maps with c > 0 on each closed-form model.
inline std::vector<PowerCase> power_cases() {
  return {
      {"disk", Space::poincare_disk(),
       [](std::mt19937_64& rng) {
         // c <= 2 artanh(0.5); with 24 steps the orbit stays inside the
         // precision range of the disk model.
         const Real r = std::uniform_real_distribution<Real>(0.2L, 0.5L)(rng);
         return disk_mobius(std::polar<Real>(r, std::uniform_real_distribution<Real>(0, 2 * kPi)(rng)));
       }},
      {"strip", Space::hyperbolic_strip(),
       [](std::mt19937_64& rng) { return strip_translate(std::uniform_real_distribution<Real>(0.2L, 3)(rng)); }},
      {"cylinder", Space::flat_cylinder(),
       [](std::mt19937_64& rng) { return cylinder_shift_flip(std::uniform_real_distribution<Real>(0.2L, 3)(rng)); }},
      {"slab", Space::l1_slab(),
       [](std::mt19937_64& rng) { return slab_shift(std::uniform_real_distribution<Real>(0.2L, 3)(rng)); }},
  };
}

/// Power tables up to n = 3: c(f^n) = n c(f) within 1e-2 relative and
/// tau(f^2) / 2 <= tau(f) up to the displacement search resolution.
inline std::vector<Outcome> power_properties(const PowerCase& pc, std::size_t trials = kTrials) {
  Outcome lin{"power table c(f^n) = n c(f) (" + pc.name + ")"};
  Outcome sub{"power table tau(f^2)/2 <= tau(f) (" + pc.name + ")"};
  std::mt19937_64 rng(mix_seed(kSeed, 4));
  DisplacementSearch search;
  search.starts = 4;
  for (std::size_t k = 0; k < trials; ++k) {
    const MapDescriptor f = pc.draw(rng);
    const Point x = draw_point(pc.space, rng);
    const PowerTable t = power_consistency(pc.space, f, 3, x, 24, search);
    double worst = 0;
    for (const auto& row : t.rows) worst = std::max(worst, row.c_relative_error);
    lin.record(worst, 1e-2, f.name + ": relative error " + std::to_string(worst));
    const double excess = t.rows[1].tau / 2 - t.rows[0].tau;
    sub.record(excess, search.final_step * 10, f.name + ": excess " + std::to_string(excess));
  }
  return {lin, sub};
}

/// Every check of the suite, in a fixed order.
inline std::vector<Outcome> run_all(std::size_t trials = kTrials) {
  std::vector<Outcome> all;
  for (const auto& s : test_spaces()) {
    all.push_back(metric_axioms(s, trials));
    all.push_back(segments_are_geodesic(s, trials));
    for (auto& o : horofunction_properties(s, trials)) all.push_back(std::move(o));
  }
  for (const auto& pc : power_cases()) {
    for (auto& o : power_properties(pc, trials)) all.push_back(std::move(o));
  }
  return all;
}

}  // namespace coarselab::invariants
