#include <gtest/gtest.h>

#include <cmath>

#include "coarselab/geodesics.hpp"
#include "coarselab/maps.hpp"

using namespace coarselab;

namespace {

const Space kDisk = Space::poincare_disk();
const Space kSlab = Space::l1_slab();
const Space kCylinder = Space::flat_cylinder();

GeodesicPath disk_ray(Complex from, Complex to = {1, 0}, double horizon = 20) {
  return geodesic_ray(kDisk, Point::disk(from), BoundaryTarget::unit_circle(to), horizon, 0.05);
}

Space path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({v - 1, v, 1});
  return build_graph_space(edges);
}

}  // namespace

TEST(Segment, DiskRadialMidpoint) {
  const GeodesicPath seg = geodesic_segment(kDisk, Point::disk({0, 0}), Point::disk({0.9L, 0}), 0.01);
  const double d = 2 * std::atanh(0.9);
  EXPECT_NEAR(seg.t_end(), d, 1e-12);
  // 2 artanh(r) = d / 2 = artanh(0.9).
  const Point mid = seg.at(d / 2);
  EXPECT_NEAR(static_cast<double>(mid.x), std::tanh(std::atanh(0.9) / 2), 1e-12);
  EXPECT_NEAR(static_cast<double>(mid.y), 0.0, 1e-15);
  EXPECT_TRUE(is_geodesic(seg, seg.param_tolerance).geodesic);
}

TEST(Segment, OffAxisDiskSegmentIsGeodesic) {
  const GeodesicPath seg = geodesic_segment(kDisk, Point::disk({0.3L, -0.6L}), Point::disk({-0.7L, 0.2L}), 0.02);
  EXPECT_TRUE(is_geodesic(seg, seg.param_tolerance).geodesic);
  EXPECT_EQ(seg.samples.back().point, Point::disk({-0.7L, 0.2L}));
}

TEST(Segment, CylinderAxial) {
  const GeodesicPath seg = geodesic_segment(kCylinder, Point::cylinder(0, 0), Point::cylinder(2, 0), 0.1);
  EXPECT_NEAR(seg.t_end(), 2.0, 1e-15);
  for (const auto& s : seg.samples) {
    EXPECT_NEAR(static_cast<double>(s.point.x), s.t, 1e-12);
    EXPECT_EQ(s.point.y, 0);
  }
}

TEST(Segment, GraphPath) {
  const GeodesicPath seg = geodesic_segment(path_graph(3), Point::graph_node(0), Point::graph_node(2), 1.0);
  ASSERT_EQ(seg.samples.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(seg.samples[k].t, static_cast<double>(k));
    EXPECT_EQ(seg.samples[k].point.node, k);
  }
}

TEST(Segment, RejectsEqualEndpoints) {
  EXPECT_THROW(geodesic_segment(kDisk, Point::disk({0.1L, 0}), Point::disk({0.1L, 0}), 0.1), Rejection);
}

TEST(Ray, DiskRadial) {
  const GeodesicPath ray = disk_ray({0, 0});
  for (double t : {0.0, 1.0, 7.5, 20.0}) {
    EXPECT_NEAR(static_cast<double>(ray.at(t).x), std::tanh(t / 2), 1e-15);
  }
  EXPECT_NEAR(ray.horizon, 20.0, 1e-12);
}

TEST(Ray, SlabAndCylinder) {
  const GeodesicPath slab = geodesic_ray(kSlab, Point::slab(0, 0.5L), BoundaryTarget::plus_infinity(), 10, 0.5);
  for (const auto& s : slab.samples) EXPECT_EQ(s.point, Point::slab(static_cast<Real>(s.t), 0.5L));
  const GeodesicPath cyl =
      geodesic_ray(kCylinder, Point::cylinder(0, 0), BoundaryTarget::plus_infinity(), 10, 0.5);
  for (const auto& s : cyl.samples) EXPECT_EQ(s.point, Point::cylinder(static_cast<Real>(s.t), 0));
}

TEST(Ray, StripAlongRealAxis) {
  const Space strip = Space::hyperbolic_strip();
  // The density on the real axis is pi / 2.
  const GeodesicPath ray = geodesic_ray(strip, Point::strip({0, 0}), BoundaryTarget::minus_infinity(), 20, 0.5);
  for (const auto& s : ray.samples) {
    EXPECT_NEAR(static_cast<double>(s.point.x), -2 * s.t / std::acos(-1.0), 1e-12);
    EXPECT_EQ(s.point.y, 0);
  }
}

TEST(Ray, StripNearTheEdgeIsGeodesic) {
  const Space strip = Space::hyperbolic_strip();
  for (const auto target : {BoundaryTarget::plus_infinity(), BoundaryTarget::minus_infinity()}) {
    const GeodesicPath ray = geodesic_ray(strip, Point::strip({4.5L, 0.97L}), target, 20, 0.5);
    EXPECT_TRUE(is_geodesic(ray, ray.param_tolerance).geodesic);
    EXPECT_NEAR(static_cast<double>(ray.samples.back().point.y), 0.0, 1e-6);
  }
}

TEST(Ray, GraphRejectsNonDivergingTarget) {
  const Space g = path_graph(30);
  EXPECT_THROW(geodesic_ray(g, Point::graph_node(0), BoundaryTarget::node_sequence({5, 6, 5, 4}), 3, 1), Rejection);
  const GeodesicPath ray = geodesic_ray(g, Point::graph_node(0), BoundaryTarget::node_sequence({10, 20, 29}), 25, 1);
  EXPECT_EQ(ray.samples.back().point.node, 25u);
}

TEST(Asymptoticity, SlabBoundaryRays) {
  const auto lo = geodesic_ray(kSlab, Point::slab(0, -1), BoundaryTarget::plus_infinity(), 20, 0.1);
  const auto hi = geodesic_ray(kSlab, Point::slab(0, 1), BoundaryTarget::plus_infinity(), 20, 0.1);
  const AsymptoticityProfile p = asymptoticity(lo, hi);
  for (std::size_t k = 0; k < p.t.size(); ++k) {
    EXPECT_EQ(p.sup_profile[k], 2.0);
    EXPECT_EQ(p.inf_profile[k], 2.0);
  }
  EXPECT_TRUE(p.asymptotic);
  EXPECT_FALSE(p.strongly_asymptotic);
}

TEST(Asymptoticity, DiskApproaching) {
  const AsymptoticityProfile p = asymptoticity(disk_ray({0, 0.5L}), disk_ray({0, 0}));
  EXPECT_LT(p.inf_profile.back(), 1e-3);
  EXPECT_LT(p.inf_log_slope, -1e-3);
  EXPECT_TRUE(p.strongly_asymptotic);
  EXPECT_NEAR(p.alignment_shift, -std::log(5.0 / 3.0), 1e-6);
}

TEST(Asymptoticity, IdenticalRays) {
  const GeodesicPath r = disk_ray({0.2L, 0.1L});
  const AsymptoticityProfile p = asymptoticity(r, r);
  for (double s : p.sup_profile) EXPECT_EQ(s, 0.0);
  EXPECT_EQ(p.alignment_shift, 0.0);
  EXPECT_TRUE(p.strongly_asymptotic);
}

TEST(Asymptoticity, DifferentEndsAreNotAsymptotic) {
  const AsymptoticityProfile p = asymptoticity(disk_ray({0, 0}), disk_ray({0, 0}, {0, 1}));
  EXPECT_FALSE(p.asymptotic);
  EXPECT_FALSE(p.strongly_asymptotic);
}

TEST(Asymptoticity, SymmetricVerdictsAndShifts) {
  const std::vector<GeodesicPath> rays{disk_ray({0, 0}), disk_ray({0, 0.5L}), disk_ray({-0.3L, -0.2L}),
                                       disk_ray({0, 0}, {0, 1})};
  for (const auto& a : rays) {
    for (const auto& b : rays) {
      const auto ab = asymptoticity(a, b), ba = asymptoticity(b, a);
      EXPECT_EQ(ab.asymptotic, ba.asymptotic);
      EXPECT_EQ(ab.strongly_asymptotic, ba.strongly_asymptotic);
      if (ab.strongly_asymptotic) EXPECT_NEAR(ab.alignment_shift, -ba.alignment_shift, 1e-6);
      for (std::size_t k = 0; k < ab.t.size(); ++k) EXPECT_LE(ab.inf_profile[k], ab.sup_profile[k]);
      if (ab.strongly_asymptotic) EXPECT_TRUE(ab.asymptotic);
    }
  }
}

TEST(Asymptoticity, ShiftsAddUp) {
  const auto r1 = disk_ray({0, 0}), r2 = disk_ray({0, 0.5L}), r3 = disk_ray({-0.3L, -0.2L});
  const double t12 = asymptoticity(r1, r2).alignment_shift;
  const double t23 = asymptoticity(r2, r3).alignment_shift;
  const double t13 = asymptoticity(r1, r3).alignment_shift;
  EXPECT_NEAR(t13, t12 + t23, 10 * 1e-3);
  EXPECT_NEAR(t13, t12 + t23, 1e-6);
}

TEST(Asymptoticity, RejectsMismatchedInputs) {
  EXPECT_THROW(asymptoticity(disk_ray({0, 0}, {1, 0}, 20), disk_ray({0, 0}, {1, 0}, 10)), Rejection);
  const auto slab = geodesic_ray(kSlab, Point::slab(0, 0), BoundaryTarget::plus_infinity(), 20, 0.05);
  EXPECT_THROW(asymptoticity(disk_ray({0, 0}), slab), Rejection);
}

TEST(IsGeodesic, CylinderDiagonalShortcut) {
  GeodesicPath curve(kCylinder);
  for (int k = 0; k <= 400; ++k) {
    const double t = 4.0 * k / 400;
    curve.samples.push_back({t * std::sqrt(2.0), Point::cylinder(t, t)});
  }
  EXPECT_FALSE(is_geodesic(curve, 1e-9).geodesic);
  // On [0, 2] the angle never wraps past pi and the helix is a geodesic.
  curve.samples.resize(201);
  EXPECT_TRUE(is_geodesic(curve, 1e-9).geodesic);
}

TEST(IsGeodesic, DoubledSpeedFails) {
  GeodesicPath curve(kDisk);
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.05 * k;
    curve.samples.push_back({t, Point::disk({0, std::tanh(t)})});
  }
  EXPECT_FALSE(is_geodesic(curve, 1e-6).geodesic);
}

TEST(AlmostGeodesic, ExactGeodesicHasNoDefect) {
  const DefectProfile d = almost_geodesic_defect(disk_ray({0, 0}));
  for (std::size_t k = 0; k < d.t.size(); ++k) {
    EXPECT_LT(d.lower[k], 1e-9);
    EXPECT_LT(d.upper[k], 1e-9);
  }
  EXPECT_TRUE(d.almost_geodesic);
}

TEST(AlmostGeodesic, ImageUnderMobius) {
  const MapDescriptor f = disk_mobius({0.5L, 0});
  const GeodesicPath ray = disk_ray({0, 0});
  GeodesicPath image(kDisk);
  image.kind = PathKind::Ray;
  for (const auto& s : ray.samples) image.samples.push_back({s.t, *f.apply(s.point)});
  image.horizon = ray.horizon;
  image.step = ray.step;
  const DefectProfile d = almost_geodesic_defect(image);
  for (double u : d.upper) EXPECT_LT(u, 1e-9);
  EXPECT_TRUE(std::is_sorted(d.lower.rbegin(), d.lower.rend()));
}

TEST(AlmostGeodesic, ConstantCurveFails) {
  GeodesicPath curve(kDisk);
  for (int k = 0; k <= 100; ++k) curve.samples.push_back({0.1 * k, Point::disk({0.1L, 0})});
  const DefectProfile d = almost_geodesic_defect(curve);
  EXPECT_FALSE(d.almost_geodesic);
  EXPECT_NEAR(d.lower.front(), 10.0, 1e-9);
}

TEST(Region, Membership) {
  const GeodesicPath ray = disk_ray({0, 0});
  EXPECT_TRUE(geodesic_region_membership(ray, 1e-6, ray.samples[37].point));
  const auto slab = geodesic_ray(kSlab, Point::slab(0, 0), BoundaryTarget::plus_infinity(), 20, 0.05);
  EXPECT_TRUE(geodesic_region_membership(slab, 1.0, Point::slab(5, 0.5L)));
  EXPECT_FALSE(geodesic_region_membership(ray, 0.1, Point::disk({0, 0.9L})));
}

TEST(DistanceToPath, RefinesBetweenSamples) {
  const GeodesicPath ray = geodesic_ray(kDisk, Point::disk({0, 0}), BoundaryTarget::unit_circle(1), 10, 1.0);
  const Point x = Point::disk({static_cast<Real>(std::tanh(1.25)), 0});
  double t = 0.0;
  EXPECT_LT(distance_to_path(ray, x, &t), 1e-9);
  EXPECT_NEAR(t, 2.5, 1e-6);
}
