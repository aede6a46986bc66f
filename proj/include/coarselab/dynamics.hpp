#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarselab/geodesics.hpp"
#include "coarselab/maps.hpp"

namespace coarselab {

// ---------------------------------------------------------------------------
// Isometry check
// ---------------------------------------------------------------------------

struct IsometryCheck {
  std::size_t pairs_checked = 0;
  /// Pairs with an image outside the model.
  std::size_t pairs_skipped = 0;
  /// max |d(fx, fy) - d(x, y)|.
  double worst_defect = 0.0;
  /// max (d(fx, fy) - d(x, y))^+.
  double worst_expansion = 0.0;
  double slack = 0.0;
  bool isometric = false;
  bool nonexpanding = false;
};

/// Compares d(fx, fy) with d(x, y) on n_pairs random pairs whose images stay
/// in the model, with slack 2 eps_d plus a rounding floor of 1e-12 (1 + d). On
/// large graphs the first point of each pair comes from a pool of
/// `source_pool` nodes so that each distance row is computed once.
IsometryCheck check_isometry(const Space& space, const MapDescriptor& f, std::size_t n_pairs, std::uint64_t seed,
                             std::size_t source_pool = 16);

// ---------------------------------------------------------------------------
// Divergence rate and minimal displacement
// ---------------------------------------------------------------------------

struct RateRow {
  std::size_t n = 0;
  double distance = 0.0;
  double ratio = 0.0;
};

struct DivergenceEstimate {
  /// min over n of d(x, f^n x) / n; the headline value.
  double c = 0.0;
  /// d(x, f^N x) / N.
  double primary = 0.0;
  /// (d_N - d_{N/2}) / (N - N/2).
  double tail_quotient = 0.0;
  /// Spread of the three estimates.
  double spread = 0.0;
  std::vector<RateRow> table;
  std::size_t steps = 0;
  /// The orbit left the model (grid window) or lost precision before N.
  bool truncated = false;
  std::string truncation_reason;
};

DivergenceEstimate divergence_rate(const Space& space, const MapDescriptor& f, const Point& x, std::size_t n);

struct DisplacementSearch {
  /// Analytic spaces: number of pattern-search starts.
  std::size_t starts = 32;
  double final_step = 1e-8;
  /// Discrete spaces: nodes to examine (all nodes when empty).
  std::vector<NodeId> candidates;
};

struct DisplacementEstimate {
  double tau = 0.0;
  Point argmin;
  /// The minimiser stays inside the model instead of drifting to the boundary.
  bool attained = false;
  std::size_t evaluations = 0;
};

/// d(x, f x).
double displacement(const Space& space, const MapDescriptor& f, const Point& x);

DisplacementEstimate minimal_displacement(const Space& space, const MapDescriptor& f,
                                          const DisplacementSearch& search = {});

/// Pattern-search descent of the displacement from one start.
DisplacementEstimate descend_displacement(const Space& space, const MapDescriptor& f, const Point& start,
                                          double final_step = 1e-8);

// ---------------------------------------------------------------------------
// Classification and boundary behaviour
// ---------------------------------------------------------------------------

enum class Classification { Elliptic, Parabolic, Hyperbolic, Indeterminate };
std::string_view to_string(Classification c);

struct ClassifyOptions {
  /// Orbit counts as bounded when its second-half sup exceeds the first-half
  /// sup by at most growth_tolerance * (1 + first-half sup).
  double growth_tolerance = 0.02;
  double c_hyperbolic = 0.05;
  double c_parabolic = 0.02;
};

struct ClassificationReport {
  Classification verdict = Classification::Indeterminate;
  double c = 0.0;
  double first_half_sup = 0.0;
  double second_half_sup = 0.0;
  std::string evidence;
};

ClassificationReport classify(const Space& space, const MapDescriptor& f, const Point& x, std::size_t n,
                              const ClassifyOptions& options = {});

struct DenjoyWolffEstimate {
  /// "unit-circle", "+inf", "-inf", or a grid exit side.
  std::string kind;
  Complex direction{0, 0};
  std::vector<Point> orbit_tails;
  double spread = 0.0;
  bool agree = false;
};

DenjoyWolffEstimate denjoy_wolff(const Space& space, const MapDescriptor& f, const std::vector<Point>& starts,
                                 std::size_t n, double tol = 1e-2);

struct DilationEstimate {
  double log_lambda = 0.0;
  double residual = 0.0;
  std::vector<double> t;
  std::vector<double> values;
};

/// d(z, p) - d(f z, p) along a ray (terminal value) toward the boundary point.
DilationEstimate dilation_along_ray(const Space& space, const MapDescriptor& f, const GeodesicPath& ray,
                                    const Point& p);
/// Same along a sequence (minimum over the last half).
DilationEstimate dilation_along_sequence(const Space& space, const MapDescriptor& f,
                                         const std::vector<Point>& sequence, const Point& p);

struct BrfpVerdict {
  bool brfp = false;
  DilationEstimate dilation;
  /// Per radius: distance of the images' boundary coordinate from eta at the horizon.
  std::vector<double> radii;
  std::vector<double> image_error;
  bool finite_dilation = false;
  bool geodesic_limit = false;
};

/// Boundary regular fixed point test at the end of `ray`, for analytic spaces.
BrfpVerdict brfp_check(const Space& space, const MapDescriptor& f, const GeodesicPath& ray, const Point& p,
                       const std::vector<double>& radii, double tol = 1e-3);

// ---------------------------------------------------------------------------
// Axes
// ---------------------------------------------------------------------------

struct AxisOptions {
  double horizon = 20.0;
  double step = 0.05;
  /// Largest admissible tau - c; negative picks 1e-3 or 5 eps_d on grids.
  double tol_gap = -1.0;
  /// Precomputed estimates; computed from x0 when absent.
  std::optional<double> c;
  std::optional<double> tau;
  std::size_t rate_steps = 1000;
  DisplacementSearch search;
};

struct AxisResult {
  explicit AxisResult(GeodesicPath p) : path(std::move(p)) {}

  GeodesicPath path;
  double c = 0.0;
  double tau = 0.0;
  double gap = 0.0;
  /// max_t d(f(Gamma(t)), Gamma(t + tau)).
  double invariance_defect = 0.0;
  GeodesicCheck geodesic;
  /// Shift a with f(Gamma(0)) = Gamma(a).
  double translation = 0.0;
  /// Disk only: largest hyperbolic distance of the samples from the real diameter.
  std::optional<double> distance_to_real_diameter;
};

/// Concatenation of f^k([x0, f x0]), k in [-K, K). Rejects when tau - c
/// exceeds the gap tolerance or tau is 0.
AxisResult construct_axis(const Space& space, const MapDescriptor& f, const Point& x0,
                          const AxisOptions& options = {});

struct UniquenessReport {
  std::vector<Point> projected_starts;
  /// Largest pairwise Hausdorff distance between the central parts of the axes.
  double separation = 0.0;
  std::vector<double> pairwise;
  bool unique = false;
};

/// Builds an axis from each start (analytic starts are first moved to a local
/// minimiser of the displacement) and compares them.
UniquenessReport axis_uniqueness_probe(const Space& space, const MapDescriptor& f, const std::vector<Point>& starts,
                                       const AxisOptions& options = {}, double tol = 1e-6);

/// Hausdorff distance between the samples of two paths with |t| <= window.
double axis_separation(const GeodesicPath& a, const GeodesicPath& b, double window);

// ---------------------------------------------------------------------------
// Powers
// ---------------------------------------------------------------------------

struct PowerRow {
  int n = 1;
  double c = 0.0;
  double tau = 0.0;
  double tau_over_n = 0.0;
  /// |c(f^n) - n c(f)| / max(n c(f), 1e-12).
  double c_relative_error = 0.0;
};

struct PowerTable {
  std::vector<PowerRow> rows;
  bool c_linear = false;
  bool tau_subadditive = false;
};

PowerTable power_consistency(const Space& space, const MapDescriptor& f, int n_max, const Point& x, std::size_t n,
                             const DisplacementSearch& search = {}, double relative_tol = 1e-2);

// ---------------------------------------------------------------------------
// Summary
// ---------------------------------------------------------------------------

struct DynamicsReport {
  std::string map_name;
  DivergenceEstimate rate;
  DisplacementEstimate displacement;
  ClassificationReport classification;
  std::optional<DenjoyWolffEstimate> denjoy_wolff;
  std::optional<DilationEstimate> dilation;
  std::optional<AxisResult> axis;
  std::string axis_status;
  double gap = 0.0;
  double tol_gap = 0.0;
};

struct AnalyzeOptions {
  std::size_t rate_steps = 1000;
  DisplacementSearch search;
  AxisOptions axis;
  /// Extra starts for the Denjoy-Wolff agreement check.
  std::vector<Point> dw_starts;
  /// Ray toward the boundary point where the dilation is evaluated.
  std::optional<GeodesicPath> dilation_ray;
  Point dilation_base;
};

DynamicsReport analyze(const Space& space, const MapDescriptor& f, const Point& x, const AnalyzeOptions& options);

/// Default gap tolerance: 1e-3 on closed-form spaces, 5 eps_d on grids.
double default_tol_gap(const Space& space);

}  // namespace coarselab
