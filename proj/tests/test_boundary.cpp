#include <gtest/gtest.h>

#include <cmath>

#include "coarselab/boundary.hpp"

using namespace coarselab;

namespace {

const Space kDisk = Space::poincare_disk();
const Space kSlab = Space::l1_slab();

double disk_horofunction(Complex w) {
  return static_cast<double>(std::log(std::norm(Complex(1, 0) - w) / (1 - std::norm(w))));
}

std::vector<Point> dyadic_sequence(int n_max) {
  std::vector<Point> seq;
  for (int n = 1; n <= n_max; ++n) seq.push_back(Point::disk({1 - std::ldexp(Real(1), -n), 0}));
  return seq;
}

std::vector<Point> disk_landmarks() {
  std::vector<Point> out{Point::disk({0, 0})};
  for (int k = 0; k < 16; ++k) out.push_back(Point::disk(std::polar<Real>(0.9L, kTwoPi * k / 16)));
  for (int k = 0; k < 8; ++k) out.push_back(Point::disk(std::polar<Real>(0.4L, kTwoPi * k / 8 + 0.3L)));
  return out;
}

GeodesicPath disk_ray(Complex from, Complex to) {
  return geodesic_ray(kDisk, Point::disk(from), BoundaryTarget::unit_circle(to), 20, 0.05);
}

GeodesicPath slab_ray(Real y) {
  return geodesic_ray(kSlab, Point::slab(0, y), BoundaryTarget::plus_infinity(), 20, 0.05);
}

std::vector<Point> slab_landmarks() {
  std::vector<Point> out{Point::slab(0, 0), Point::slab(0, 1), Point::slab(0, -1)};
  for (int i = 0; i <= 4; ++i) {
    for (int j = -2; j <= 2; ++j) out.push_back(Point::slab(i * 0.75L, j * 0.5L));
  }
  return out;
}

}  // namespace

TEST(Horofunction, SlabSequenceIsExact) {
  for (Real y0 : {-1.0L, -0.25L, 0.5L}) {
    std::vector<Point> seq;
    for (int n = 1; n <= 20; ++n) seq.push_back(Point::slab(n, y0));
    const auto lm = slab_landmarks();
    const HorofunctionSample h = horofunction_from_sequence(kSlab, seq, Point::slab(0, 0), lm);
    for (std::size_t k = 0; k < lm.size(); ++k) {
      const Real w1 = lm[k].x, w2 = lm[k].y;
      EXPECT_EQ(h.values[k], static_cast<double>(-w1 + std::fabs(w2 - y0) - std::fabs(y0)));
    }
    EXPECT_EQ(h.residual, 0.0);
  }
}

TEST(Horofunction, DiskSequenceMatchesClosedForm) {
  const auto lm = disk_landmarks();
  const HorofunctionSample h = horofunction_from_sequence(kDisk, dyadic_sequence(20), lm[0], lm);
  for (std::size_t k = 0; k < lm.size(); ++k) EXPECT_NEAR(h.values[k], disk_horofunction(lm[k].z()), 1e-4);
  EXPECT_EQ(h.values[0], 0.0);
}

TEST(Horofunction, PathGraphRay) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < 40; ++v) edges.push_back({v - 1, v, 1});
  const Space g = build_graph_space(edges);
  const GeodesicPath ray = geodesic_ray(g, g.node_point(5), BoundaryTarget::node_sequence({20, 39}), 30, 1);
  std::vector<Point> lm;
  for (NodeId v = 0; v < 12; ++v) lm.push_back(g.node_point(v));
  const HorofunctionSample b = busemann(g, ray, g.node_point(5), lm);
  for (NodeId v = 0; v < 12; ++v) EXPECT_EQ(b.values[v], -(static_cast<double>(v) - 5.0));
}

TEST(Horofunction, RejectsNonDivergingSequence) {
  const std::vector<Point> bouncing{Point::disk({0.5L, 0}), Point::disk({0.9L, 0}), Point::disk({0.1L, 0})};
  EXPECT_THROW(horofunction_from_sequence(kDisk, bouncing, Point::disk({0, 0}), disk_landmarks()), Rejection);
}

TEST(Busemann, DiskRayMatchesSequence) {
  const auto lm = disk_landmarks();
  const HorofunctionSample b = busemann(kDisk, disk_ray({0, 0}, {1, 0}), lm[0], lm);
  const HorofunctionSample h = horofunction_from_sequence(kDisk, dyadic_sequence(20), lm[0], lm);
  for (std::size_t k = 0; k < lm.size(); ++k) {
    EXPECT_NEAR(b.values[k], h.values[k], 1e-4);
    EXPECT_NEAR(b.values[k], disk_horofunction(lm[k].z()), 1e-6);
  }
}

TEST(Busemann, SlabLandmark) {
  const HorofunctionSample b = busemann(kSlab, slab_ray(0), Point::slab(0, 0), {Point::slab(0, 0), Point::slab(0, 1)});
  EXPECT_EQ(b.value_at(Point::slab(0, 1)), 1.0);
}

TEST(Busemann, RejectsNonGeodesic) {
  GeodesicPath fake(kDisk);
  fake.kind = PathKind::Ray;
  for (int k = 0; k <= 100; ++k) fake.samples.push_back({0.1 * k, Point::disk({0, std::tanh(0.1L * k)})});
  fake.horizon = 10;
  EXPECT_THROW(busemann(kDisk, fake, Point::disk({0, 0}), disk_landmarks()), Rejection);
}

TEST(Busemann, ShiftedRay) {
  // gamma_s(t) = gamma(t + s). With a common base the values agree; normalised
  // at each ray's own start they differ by s.
  const double s = 1.5;
  const GeodesicPath gamma = disk_ray({0, 0}, {1, 0});
  const Point start = Point::disk({static_cast<Real>(std::tanh(s / 2)), 0});
  const GeodesicPath shifted = disk_ray(start.z(), {1, 0});
  auto lm = disk_landmarks();
  lm.push_back(start);
  const Point p = lm[0];
  const auto b = busemann(kDisk, gamma, p, lm), bs = busemann(kDisk, shifted, p, lm);
  for (std::size_t k = 0; k < lm.size(); ++k) EXPECT_NEAR(bs.values[k], b.values[k], 1e-6);
  std::vector<Point> lm_start{start};
  lm_start.insert(lm_start.end(), lm.begin(), lm.end() - 1);
  const auto own = busemann(kDisk, shifted, start, lm_start);
  for (std::size_t k = 1; k < lm_start.size(); ++k) {
    EXPECT_NEAR(own.values[k], b.value_at(lm_start[k]) + s, 1e-6);
  }
}

TEST(Busemann, BasePointIndependence) {
  const auto lm = disk_landmarks();
  const GeodesicPath gamma = disk_ray({0.2L, -0.3L}, {0, 1});
  const auto b0 = busemann(kDisk, gamma, lm[0], lm), b1 = busemann(kDisk, gamma, lm[5], lm);
  const double offset = b0.values[0] - b1.values[0];
  for (std::size_t k = 0; k < lm.size(); ++k) {
    EXPECT_NEAR(b0.values[k] - b1.values[k], offset, 2 * std::max(b0.residual, b1.residual) + 1e-12);
  }
}

TEST(HorofunctionDistance, Examples) {
  const auto lm = slab_landmarks();
  const Point p = Point::slab(0, 0);
  const auto lo = busemann(kSlab, slab_ray(-1), p, lm), hi = busemann(kSlab, slab_ray(1), p, lm);
  EXPECT_EQ(horofunction_distance(lo, lo), 0.0);
  EXPECT_EQ(horofunction_distance(lo, hi), 2.0);

  const auto dl = disk_landmarks();
  const auto to_one = busemann(kDisk, disk_ray({0, 0}, {1, 0}), dl[0], dl);
  const auto to_minus_one = busemann(kDisk, disk_ray({0, 0}, {-1, 0}), dl[0], dl);
  // At w = 0.9 the closed forms are log(0.01 / 0.19) and log(3.61 / 0.19).
  EXPECT_GT(horofunction_distance(to_one, to_minus_one), 4.0);
  EXPECT_NEAR(horofunction_distance(to_one, to_minus_one), std::log(3.61 / 0.01), 1e-6);
}

TEST(HorofunctionDistance, RejectsMismatchedLandmarks) {
  const auto lm = slab_landmarks();
  auto fewer = lm;
  fewer.pop_back();
  const Point p = Point::slab(0, 0);
  EXPECT_THROW(horofunction_distance(busemann(kSlab, slab_ray(0), p, lm), busemann(kSlab, slab_ray(0), p, fewer)),
               Rejection);
}

TEST(Compactification, SlabSegmentOfHorofunctions) {
  std::vector<CompareDirection> dirs;
  for (Real y : {-1.0L, -0.5L, 0.0L, 0.5L, 1.0L}) dirs.push_back({"y", {slab_ray(y)}, {}});
  const auto report = compactification_compare(kSlab, dirs, Point::slab(0, 0), slab_landmarks());
  EXPECT_EQ(report.ray_classes, 1u);
  EXPECT_EQ(report.clusters, 5u);
  EXPECT_FALSE(report.bijective());
  const std::size_t n = report.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) EXPECT_GE(report.distances[i * n + j], 0.5 - 1e-9);
  }
  ASSERT_EQ(report.verdicts.size(), 1u);
  EXPECT_FALSE(report.verdicts[0].holds);
}

TEST(Compactification, DiskBijection) {
  const std::vector<CompareDirection> dirs{
      {"1", {disk_ray({0, 0}, {1, 0}), disk_ray({0, 0.5L}, {1, 0})}, {}},
      {"i", {disk_ray({0, 0}, {0, 1}), disk_ray({-0.4L, 0.1L}, {0, 1})}, {}},
  };
  const auto report = compactification_compare(kDisk, dirs, Point::disk({0, 0}), disk_landmarks());
  EXPECT_EQ(report.ray_classes, 2u);
  EXPECT_EQ(report.clusters, 2u);
  EXPECT_TRUE(report.bijective());
  for (const auto& v : report.verdicts) EXPECT_TRUE(v.holds);
}

TEST(Compactification, DuplicatedRay) {
  const GeodesicPath r = disk_ray({0.1L, 0}, {0, -1});
  const auto report =
      compactification_compare(kDisk, {{"a", {r, r}, {}}}, Point::disk({0, 0}), disk_landmarks());
  EXPECT_EQ(report.ray_classes, 1u);
  EXPECT_EQ(report.clusters, 1u);
  EXPECT_EQ(report.distances[1], 0.0);
}

TEST(Horosphere, DiskTangentDisk) {
  const auto seq = dyadic_sequence(20);
  const Point p = Point::disk({0, 0});
  const auto v = horosphere_membership(kDisk, Point::disk({0.5L, 0}), {seq}, 1.0, p, HorosphereMode::Big);
  EXPECT_TRUE(v.member);
  EXPECT_NEAR(v.value, std::log(1.0 / 3.0), 1e-4);
  EXPECT_NEAR(v.margin, -std::log(1.0 / 3.0), 1e-4);
  // -0.5: |1 - z|^2 / (1 - |z|^2) = 3 > 1.
  EXPECT_FALSE(horosphere_membership(kDisk, Point::disk({-0.5L, 0}), {seq}, 1.0, p, HorosphereMode::Big).member);
  for (auto mode : {HorosphereMode::Big, HorosphereMode::Small}) {
    EXPECT_TRUE(horosphere_membership(kDisk, p, {seq}, 1.5, p, mode).member);
  }
}

TEST(Horosphere, SlabSmallStrictlyInsideBig) {
  std::vector<Point> upper, lower;
  for (int k = 1; k <= 40; ++k) upper.push_back(Point::slab(k, 1)), lower.push_back(Point::slab(k, -1));
  const Point p = Point::slab(0, 0), z = Point::slab(0, 1);
  const auto big = horosphere_membership(kSlab, z, {upper, lower}, 1.0, p, HorosphereMode::Big);
  const auto small = horosphere_membership(kSlab, z, {upper, lower}, 1.0, p, HorosphereMode::Small);
  EXPECT_TRUE(big.member);
  EXPECT_FALSE(small.member);
  EXPECT_EQ(big.value, -1.0);
  EXPECT_EQ(small.value, 1.0);
}

TEST(Horosphere, RejectsNonDivergingSequence) {
  const std::vector<Point> seq(10, Point::disk({0.3L, 0}));
  EXPECT_THROW(horosphere_membership(kDisk, Point::disk({0, 0}), {seq}, 1.0, Point::disk({0, 0}),
                                     HorosphereMode::Big),
               Rejection);
}

TEST(Landmarks, DefaultSetStartsAtBase) {
  const Point p = Point::disk({0.1L, 0.2L});
  const auto lm = default_landmarks(kDisk, p, 50, 3.0, 1);
  ASSERT_EQ(lm.size(), 50u);
  EXPECT_EQ(lm[0], p);
  for (const Point& q : lm) EXPECT_LE(kDisk.distance(p, q), 3.0 + 1e-9);
}
