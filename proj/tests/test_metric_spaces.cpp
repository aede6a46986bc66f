#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "coarselab/config.hpp"
#include "coarselab/space.hpp"

using namespace coarselab;

namespace {

constexpr double kPiD = std::numbers::pi;

// Composite Simpson rule, used as an independent oracle for line integrals of densities.
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST(ClosedForm, CylinderShiftFlipDisplacement) {
  const Space cyl = Space::flat_cylinder();
  const double d = cyl.distance(Point::cylinder(0, 0), Point::cylinder(1, kPi));
  EXPECT_NEAR(d, std::sqrt(1 + kPiD * kPiD), 1e-12);
  EXPECT_NEAR(d, 3.296908309, 1e-9);
}

TEST(ClosedForm, CylinderUsesShorterArc) {
  const Space cyl = Space::flat_cylinder();
  EXPECT_NEAR(cyl.distance(Point::cylinder(0, 0.1), Point::cylinder(0, 2 * kPiD - 0.1)), 0.2, 1e-12);
}

TEST(ClosedForm, SlabL1) {
  EXPECT_DOUBLE_EQ(Space::l1_slab().distance(Point::slab(0, -1), Point::slab(3, 1)), 5.0);
}

TEST(ClosedForm, DiskAgainstIntegratedDensity) {
  // Along a radius the metric is the integral of 2 / (1 - r^2).
  const double integral = simpson([](double r) { return 2 / (1 - r * r); }, 0.0, 0.5);
  const double d = Space::poincare_disk().distance(Point::disk({0, 0}), Point::disk({0.5, 0}));
  EXPECT_NEAR(integral, std::log(3.0), 1e-10);
  EXPECT_NEAR(d, integral, 1e-10);
}

TEST(ClosedForm, StripCentrelineAndVerticalOracles) {
  const Space strip = Space::hyperbolic_strip();
  // Density pi / (2 cos(pi y / 2)): along the real axis d(0, x) = pi x / 2.
  for (int n = 1; n <= 5; ++n) {
    EXPECT_NEAR(strip.distance(Point::strip({0, 0}), Point::strip({2.0L * n, 0})), kPiD * n, 1e-10);
  }
  const double y = 0.7;
  const double vertical = simpson([](double s) { return kPiD / (2 * std::cos(kPiD * s / 2)); }, 0.0, y);
  EXPECT_NEAR(strip.distance(Point::strip({0, 0}), Point::strip({0, y})), vertical, 1e-9);
}

TEST(ClosedForm, StripMatchesDiskThroughConformalMap) {
  const Space strip = Space::hyperbolic_strip();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-3, 3), uy(-0.9, 0.9);
  for (int k = 0; k < 50; ++k) {
    const Complex z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
    // sinh^2(d/2) = (cosh(pi dx/2) - cos(a - b)) / (2 cos a cos b), written out independently.
    const double dx = static_cast<double>(z.real() - w.real());
    const double a = kPiD * static_cast<double>(z.imag()) / 2, b = kPiD * static_cast<double>(w.imag()) / 2;
    const double arg = (std::cosh(kPiD * dx / 2) - std::cos(a - b)) / (2 * std::cos(a) * std::cos(b));
    const double oracle = 2 * std::asinh(std::sqrt(arg));
    EXPECT_NEAR(strip.distance(Point::strip(z), Point::strip(w)), oracle, 1e-9);
    EXPECT_NEAR(static_cast<double>(disk_distance(strip_to_disk(z), strip_to_disk(w))), oracle, 1e-9);
  }
}

TEST(ClosedForm, StripDiskMapsAreInverse) {
  const Complex z(1.3L, -0.4L);
  EXPECT_LT(std::abs(disk_to_strip(strip_to_disk(z)) - z), 1e-15L);
}

TEST(ClosedForm, RejectsPointsOutsideTheModel) {
  EXPECT_THROW(Space::poincare_disk().distance(Point::disk({1, 0}), Point::disk({0, 0})), Rejection);
  EXPECT_THROW(Space::hyperbolic_strip().require(Point::strip({0, 1})), Rejection);
  EXPECT_THROW(Space::l1_slab().require(Point::slab(-0.1L, 0)), Rejection);
  EXPECT_THROW(Space::l1_slab().require(Point::slab(1, 1.5L)), Rejection);
  EXPECT_THROW(Space::poincare_disk().require(Point::slab(0, 0)), Rejection);
}

TEST(ClosedForm, ToleranceIsZero) {
  EXPECT_EQ(Space::poincare_disk().tolerance(), 0.0);
  EXPECT_EQ(Space::flat_cylinder().tolerance(), 0.0);
}

TEST(PointCoord, CylinderAngleReduced) {
  const Point p = Point::cylinder(0, -kPi / 2);
  EXPECT_NEAR(static_cast<double>(p.y), 1.5 * kPiD, 1e-15);
  EXPECT_GE(Point::cylinder(0, 7 * kPi).y, 0);
  EXPECT_LT(Point::cylinder(0, 7 * kPi).y, kTwoPi);
}

TEST(Graph, ShortestPathsAndTieBreak) {
  // Square 0-1-3, 0-2-3 with equal lengths: the predecessor with the smaller index wins.
  const std::vector<Edge> edges{{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}};
  const Space g = build_graph_space(edges);
  EXPECT_EQ(g.distance(Point::graph_node(0), Point::graph_node(3)), 2.0);
  EXPECT_EQ(g.shortest_path(0, 3), (std::vector<NodeId>{0, 1, 3}));
}

TEST(Graph, RejectsBadInput) {
  const std::vector<Edge> negative{{0, 1, -1}};
  EXPECT_THROW(build_graph_space(negative), Rejection);
  const std::vector<Edge> split{{0, 1, 1}, {2, 3, 1}};
  try {
    build_graph_space(split);
    FAIL() << "disconnected graph accepted";
  } catch (const DisconnectedSpace& e) {
    EXPECT_FALSE(e.component().empty());
  }
  const std::vector<Edge> ok{{0, 1, 1}};
  EXPECT_THROW(build_graph_space(ok).distance(Point::graph_node(0), Point::graph_node(5)), Rejection);
}

TEST(ConformalGrid, UnitDensityDiagonal) {
  const double h = 0.25;
  const Space grid = build_conformal_grid(rectangle_mask(3, 3, h), DensitySpec::user_table(std::vector<double>(9, 1.0)),
                                          Stencil::Eight);
  const GridLayout& g = *grid.grid();
  const NodeId a = *g.node_at(0, 0), b = *g.node_at(2 * h, 2 * h);
  EXPECT_NEAR(grid.distance(Point::grid_node(a), Point::grid_node(b)), 2 * std::sqrt(2.0) * h, 1e-12);
}

TEST(ConformalGrid, RejectsDisconnectedMaskAndBadDensity) {
  const GridMask split = mask_from_rle({"2x1 3x0 2x1"}, 0.1, 0, 0);
  EXPECT_THROW(build_conformal_grid(split, DensitySpec::user_table(std::vector<double>(7, 1.0))), DisconnectedSpace);
  std::vector<double> table(9, 1.0);
  table[4] = 0.0;
  EXPECT_THROW(build_conformal_grid(rectangle_mask(3, 3, 0.1), DensitySpec::user_table(table)), Rejection);
}

TEST(ConformalGrid, DiskDensityApproximatesLn3) {
  const Space grid = build_conformal_grid(disk_mask(0.01), DensitySpec::poincare_disk());
  const GridLayout& g = *grid.grid();
  const double d = grid.distance(Point::grid_node(*g.node_at(0, 0)), Point::grid_node(*g.node_at(0.5, 0)));
  EXPECT_GT(grid.tolerance(), 0.0);
  EXPECT_LE(std::fabs(d - std::log(3.0)), grid.tolerance());
  // Straight along a lattice row the trapezoidal rule is second order.
  EXPECT_NEAR(d, std::log(3.0), 1e-3);
}

TEST(ConformalGrid, StripMinusIntegersSymmetricAndStable) {
  auto measure = [](double h) {
    const Space grid = build_conformal_grid(strip_minus_integers_mask(-3, 3, h, h),
                                            DensitySpec::quasihyperbolic(DomainShape::StripMinusIntegers));
    const GridLayout& g = *grid.grid();
    const Point a = Point::grid_node(*g.node_at(-0.5, 0)), b = Point::grid_node(*g.node_at(0.5, 0));
    const double ab = grid.distance(a, b);
    EXPECT_EQ(ab, grid.distance(b, a));
    EXPECT_TRUE(std::isfinite(ab));
    return ab;
  };
  const double coarse = measure(0.05), fine = measure(0.025);
  EXPECT_NEAR(fine, coarse, 0.1 * fine);
}

TEST(ConformalGrid, StripDensityMatchesClosedForm) {
  const Space grid = build_conformal_grid(strip_mask(-3, 3, 0.05), DensitySpec::strip());
  const Space strip = Space::hyperbolic_strip();
  const GridLayout& g = *grid.grid();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> ix(-40, 40), iy(-10, 10);
  for (int k = 0; k < 20; ++k) {
    const double x1 = ix(rng) * 0.05, y1 = iy(rng) * 0.05, x2 = ix(rng) * 0.05, y2 = iy(rng) * 0.05;
    const double dg = grid.distance(Point::grid_node(*g.node_at(x1, y1)), Point::grid_node(*g.node_at(x2, y2)));
    const double dc = strip.distance(Point::strip({x1, y1}), Point::strip({x2, y2}));
    EXPECT_LE(std::fabs(dg - dc), grid.tolerance() + 1e-3 + 0.03 * dc) << x1 << "," << y1 << " " << x2 << "," << y2;
    EXPECT_GE(dg, dc - 1e-3);
  }
}

TEST(ConformalGrid, RefinementDoesNotIncreaseDistance) {
  std::vector<double> previous_d;
  double previous_eps = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const Space grid = build_conformal_grid(strip_mask(-2, 2, h), DensitySpec::strip());
    const GridLayout& g = *grid.grid();
    std::vector<double> d;
    for (auto [x, y] : std::vector<std::pair<double, double>>{{1.0, 0.5}, {1.5, -0.3}, {-1.0, 0.2}}) {
      d.push_back(grid.distance(Point::grid_node(*g.node_at(0, 0)), Point::grid_node(*g.node_at(x, y))));
    }
    for (std::size_t k = 0; k < previous_d.size(); ++k) EXPECT_LE(d[k], previous_d[k] + previous_eps);
    previous_d = d;
    previous_eps = grid.tolerance();
  }
}

TEST(Sampling, GraphNodesWithoutRepetition) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < 40; ++v) edges.push_back({v - 1, v, 1});
  const Space g = build_graph_space(edges);
  const auto pts = sample_points(g, g.node_count(), 5);
  std::set<NodeId> seen;
  for (const Point& p : pts) EXPECT_TRUE(seen.insert(p.node).second);
  EXPECT_EQ(seen.size(), g.node_count());
}

TEST(Sampling, DeterministicDisk) {
  const Space disk = Space::poincare_disk();
  EXPECT_EQ(sample_points(disk, 100, 7), sample_points(disk, 100, 7));
  EXPECT_NE(sample_points(disk, 100, 7), sample_points(disk, 100, 8));
  for (const Point& p : sample_points(disk, 100, 7)) EXPECT_LT(std::abs(p.z()), 1);
}

TEST(Sampling, CylinderAnglesReduced) {
  for (const Point& p : sample_points(Space::flat_cylinder(), 1000, 1)) {
    EXPECT_GE(p.y, 0);
    EXPECT_LT(p.y, kTwoPi);
  }
}

TEST(Config, ParsesSectionsAndRepeats) {
  const auto cfg = KeyValueConfig::parse_string("a = 1  # comment\n[grid]\nspacing = 0.5\nrow = 1\nrow = 2\n");
  EXPECT_EQ(cfg.get_int("a", 0), 1);
  EXPECT_DOUBLE_EQ(cfg.get_double("grid.spacing", 0), 0.5);
  EXPECT_EQ(cfg.get_all("grid.row").size(), 2u);
  EXPECT_THROW(cfg.get_int("grid.spacing", 0), Rejection);
}

TEST(Config, LoadsGraphAndGrid) {
  const Space g = load_space(KeyValueConfig::parse_string("kind = graph\nedge = 0 1 2\nedge = 1 2 3\n"));
  EXPECT_EQ(g.distance(Point::graph_node(0), Point::graph_node(2)), 5.0);
  const Space grid = load_space(
      KeyValueConfig::parse_string("kind = conformal-grid\nmask = strip\nspacing = 0.1\nx_min = -1\nx_max = 1\n"
                                   "density = strip-density\n"));
  EXPECT_EQ(grid.kind(), SpaceKind::ConformalGrid);
  EXPECT_GT(grid.node_count(), 100u);
  EXPECT_THROW(load_space(KeyValueConfig::parse_string("kind = torus\n")), Rejection);
}
