#include "coarselab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <numbers>

namespace coarselab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Exploratory: return "exploratory";
  }
  return "?";
}

bool ScenarioReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Verdict::Fail; });
}

const Check* ScenarioReport::find(const std::string& check) const {
  for (const Check& c : checks) {
    if (c.name == check) return &c;
  }
  return nullptr;
}

Json ScenarioReport::to_json(const std::string& timestamp) const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["scenario"] = name;
  j["timestamp"] = timestamp;
  j["input"] = input;
  Json list = Json::array();
  for (const Check& c : checks) {
    list.push_back({{"name", c.name},
                    {"verdict", std::string(to_string(c.verdict))},
                    {"measured", c.measured},
                    {"target", c.target},
                    {"note", c.note}});
  }
  j["checks"] = list;
  j["ok"] = ok();
  j["details"] = details;
  j["manifest"] = manifest;
  return j;
}

void apply_config_file(ScenarioConfig& config, const KeyValueConfig& file) {
  config.seed = static_cast<std::uint64_t>(file.get_int("seed", static_cast<long long>(config.seed)));
  config.horizon = file.get_double("horizon", config.horizon);
  config.step = file.get_double("step", config.step);
  if (file.has("spacing")) config.spacing = file.get_double("spacing", 0.0);
  if (file.has("out")) config.out_dir = file.get_string("out", config.out_dir.string());
  for (const auto& [k, v] : file.entries()) config.extra.set(k, v);
}

namespace {

class Run {
 public:
  Run(const ScenarioConfig& config) : config_(config) {
    report_.name = config.name;
    report_.input = {{"seed", config.seed}, {"horizon", number(config.horizon)}, {"step", number(config.step)}};
    if (config.spacing) report_.input["spacing"] = number(*config.spacing);
    for (const auto& [k, v] : config.extra.entries()) report_.input["extra"][k] = v;
  }

  const ScenarioConfig& config() const { return config_; }
  double extra(const std::string& key, double fallback) const { return config_.extra.get_double(key, fallback); }

  void check(const std::string& name, bool pass, Json measured, Json target, std::string note = {}) {
    report_.checks.push_back({name, pass ? Verdict::Pass : Verdict::Fail, std::move(measured), std::move(target),
                              std::move(note)});
  }
  void explore(const std::string& name, Json measured, std::string note = {}) {
    report_.checks.push_back({name, Verdict::Exploratory, std::move(measured), nullptr, std::move(note)});
  }
  Json& details() { return report_.details; }

  /// Registers `name` in the manifest and writes it when files are enabled.
  void file(const std::string& name, const std::function<void(const std::filesystem::path&)>& writer) {
    report_.manifest.push_back(name);
    if (config_.write_files) writer(dir() / name);
  }

  std::filesystem::path dir() const { return config_.out_dir / config_.name; }
  ScenarioReport finish() { return std::move(report_); }

 private:
  ScenarioConfig config_;
  ScenarioReport report_;
};

Json within(double value, double tol) { return {{"value", number(value)}, {"tolerance", number(tol)}}; }

const double kLn3 = std::log(3.0);

// ---------------------------------------------------------------------------

void cylinder_gap(Run& run) {
  const Space space = Space::flat_cylinder();
  const MapDescriptor f = cylinder_shift_flip(1);
  const Point x = Point::cylinder(0, 0);
  const double tau_exact = std::sqrt(1.0 + std::numbers::pi * std::numbers::pi);
  const auto steps = static_cast<std::size_t>(run.extra("rate_steps", 1000));

  const DivergenceEstimate rate = divergence_rate(space, f, x, steps);
  run.check("divergence rate", std::fabs(rate.c - 1.0) <= 1e-3, to_json(rate, false), within(1.0, 1e-3));
  const DisplacementEstimate tau = minimal_displacement(space, f);
  run.check("minimal displacement", std::fabs(tau.tau - tau_exact) <= 1e-5, to_json(tau), within(tau_exact, 1e-5));
  run.check("c <= tau", rate.c <= tau.tau + default_tol_gap(space),
            {{"c", number(rate.c)}, {"tau", number(tau.tau)}}, "c <= tau + tol_gap");

  AxisOptions axis;
  axis.c = rate.c;
  axis.tau = tau.tau;
  std::string status;
  try {
    construct_axis(space, f, tau.argmin, axis);
    status = "constructed";
  } catch (const Rejection& e) {
    status = std::string("rejected: ") + e.what();
  }
  const double gap = tau.tau - rate.c;
  run.check("axis rejected", status.rfind("rejected", 0) == 0 && std::fabs(gap - (tau_exact - 1.0)) < 1e-3,
            {{"status", status}, {"gap", number(gap)}}, within(tau_exact - 1.0, 1e-3));

  const PowerTable powers = power_consistency(space, f, 2, x, steps);
  const PowerRow& sq = powers.rows[1];
  run.check("power consistency", powers.c_linear && std::fabs(sq.c - 2.0) <= 1e-3 && std::fabs(sq.tau - 2.0) <= 1e-5 &&
                                     sq.tau_over_n <= tau.tau,
            to_json(powers), {{"c(f^2)", 2}, {"tau(f^2)", 2}, {"tau(f^2)/2 <= tau(f)", true}});

  run.details()["classification"] = to_json(classify(space, f, x, steps));
  run.file("rate.csv", [&](const auto& p) { write_rate_csv(p, rate); });
  run.file("power.csv", [&](const auto& p) { write_power_csv(p, powers); });
}

// ---------------------------------------------------------------------------

void disk_approaching(Run& run) {
  const Space space = Space::poincare_disk();
  const double horizon = run.config().horizon;
  const double step = run.config().step;
  // gamma starts at 0.5i and trails sigma (from 0), so the partner of
  // gamma(T_max) lies inside the truncated sigma.
  const Point p0 = Point::disk({0, 0.5});
  const Point p1 = Point::disk({0, 0});
  const GeodesicPath gamma = geodesic_ray(space, p0, BoundaryTarget::unit_circle(1), horizon, step);
  const GeodesicPath sigma = geodesic_ray(space, p1, BoundaryTarget::unit_circle(1), horizon, step);
  const AsymptoticityProfile profile = asymptoticity(gamma, sigma);
  const AsymptoticityProfile reverse = asymptoticity(sigma, gamma);

  run.check("strongly asymptotic", profile.strongly_asymptotic && profile.asymptotic, to_json(profile),
            "asymptotic and strongly asymptotic");
  run.check("inf profile at horizon", profile.inf_profile.back() < 1e-3, number(profile.inf_profile.back()),
            "< 1e-3");
  run.check("inf profile trend", profile.inf_log_slope < -1e-3, number(profile.inf_log_slope), "log-slope < -1e-3");
  run.check("symmetric verdict",
            reverse.strongly_asymptotic == profile.strongly_asymptotic &&
                std::fabs(reverse.alignment_shift + profile.alignment_shift) < 1e-6,
            to_json(reverse), "same verdict, opposite shift");

  const HorofunctionSample b = busemann(space, gamma, p0, {p0, p1});
  const double shift = b.value_at(p1);
  run.check("Busemann shift", std::fabs(shift - profile.alignment_shift) < 1e-3,
            {{"busemann", number(shift)}, {"alignment_shift", number(profile.alignment_shift)}},
            "|B(sigma(0), gamma(0)) - T| < 1e-3");
  const double closed = -std::log(5.0 / 3.0);
  run.check("shift closed form", std::fabs(profile.alignment_shift - closed) < 1e-3, number(profile.alignment_shift),
            within(closed, 1e-3), "-log((1 - |w|^2) / |1 - w|^2) at w = 0.5i");

  run.file("gamma.csv", [&](const auto& p) { write_path_csv(p, gamma); });
  run.file("sigma.csv", [&](const auto& p) { write_path_csv(p, sigma); });
  run.file("profile.csv", [&](const auto& p) { write_profile_csv(p, profile); });
}

// ---------------------------------------------------------------------------

void disk_dynamics(Run& run) {
  const Space space = Space::poincare_disk();
  const MapDescriptor f = disk_mobius({0.5, 0});
  const Point origin = Point::disk({0, 0});
  const double horizon = run.config().horizon;
  const double step = run.config().step;
  const auto steps = static_cast<std::size_t>(run.extra("rate_steps", 1000));

  const DivergenceEstimate rate = divergence_rate(space, f, origin, steps);
  run.check("divergence rate", std::fabs(rate.c - kLn3) <= 1e-3, to_json(rate, false), within(kLn3, 1e-3));
  const DisplacementEstimate tau = minimal_displacement(space, f);
  run.check("minimal displacement", std::fabs(tau.tau - kLn3) <= 1e-3, to_json(tau), within(kLn3, 1e-3));
  const ClassificationReport cls = classify(space, f, origin, steps);
  run.check("classification", cls.verdict == Classification::Hyperbolic, to_json(cls), "hyperbolic");

  const GeodesicPath to_one = geodesic_ray(space, origin, BoundaryTarget::unit_circle(1), horizon, step);
  const GeodesicPath to_minus_one = geodesic_ray(space, origin, BoundaryTarget::unit_circle(-1), horizon, step);
  const DilationEstimate attracting = dilation_along_ray(space, f, to_one, origin);
  run.check("dilation at 1", std::fabs(attracting.log_lambda + kLn3) <= 1e-3, to_json(attracting),
            within(-kLn3, 1e-3));
  run.check("c = -log lambda", std::fabs(rate.c + attracting.log_lambda) < 1e-3,
            number(rate.c + attracting.log_lambda), "|c + log lambda| < 1e-3");
  const DilationEstimate repelling = dilation_along_ray(space, f, to_minus_one, origin);
  run.check("dilation at -1", std::fabs(repelling.log_lambda - kLn3) <= 1e-3, to_json(repelling), within(kLn3, 1e-3));

  AxisOptions axis_options;
  axis_options.horizon = horizon;
  axis_options.step = step;
  axis_options.c = rate.c;
  axis_options.tau = tau.tau;
  const AxisResult axis = construct_axis(space, f, origin, axis_options);
  run.check("axis invariance", axis.invariance_defect < 1e-6, number(axis.invariance_defect), "< 1e-6");
  run.check("axis on real diameter", *axis.distance_to_real_diameter < 1e-6, number(*axis.distance_to_real_diameter),
            "< 1e-6");
  run.check("axis geodesic", axis.geodesic.geodesic && std::fabs(axis.translation - rate.c) < 1e-3, to_json(axis),
            "is_geodesic and translation = c");
  const UniquenessReport unique =
      axis_uniqueness_probe(space, f, {origin, Point::disk({0.1, 0})}, axis_options, 1e-6);
  run.check("axis uniqueness", unique.separation < 1e-6, number(unique.separation), "< 1e-6");

  const DenjoyWolffEstimate dw =
      denjoy_wolff(space, f, {origin, Point::disk({0, 0.3}), Point::disk({-0.5, 0.2})}, steps);
  run.check("Denjoy-Wolff point", dw.agree && std::abs(dw.direction - Complex(1, 0)) < 1e-2, to_json(dw), "1");

  const BrfpVerdict at_one = brfp_check(space, f, to_one, origin, {0.5, 1.0, 2.0});
  run.check("BRFP at 1", at_one.brfp && std::fabs(std::exp(at_one.dilation.log_lambda) - 1.0 / 3.0) < 1e-3,
            {{"brfp", at_one.brfp}, {"lambda", number(std::exp(at_one.dilation.log_lambda))}}, "BRFP, lambda = 1/3");
  const GeodesicPath to_i = geodesic_ray(space, origin, BoundaryTarget::unit_circle({0, 1}), horizon, step);
  const BrfpVerdict at_i = brfp_check(space, f, to_i, origin, {0.5, 1.0, 2.0});
  run.check("no BRFP at i", !at_i.brfp, {{"brfp", at_i.brfp}, {"image_error", number(at_i.image_error.front())}},
            "not a BRFP");

  std::vector<Point> seq;
  for (int n = 1; n <= 20; ++n) seq.push_back(Point::disk({1 - std::ldexp(Real(1), -n), 0}));
  const Point z = Point::disk({0.5, 0});
  const HorosphereVerdict big = horosphere_membership(space, z, {seq}, 1.0, origin, HorosphereMode::Big);
  const HorosphereVerdict small = horosphere_membership(space, z, {seq}, 1.0, origin, HorosphereMode::Small);
  const double h_exact = std::log(1.0 / 3.0);
  run.check("horospheres at 1", big.member && small.member && std::fabs(big.value - h_exact) < 1e-4 &&
                                    std::fabs(small.value - h_exact) < 1e-4,
            {{"big", number(big.value)}, {"small", number(small.value)}}, within(h_exact, 1e-4));

  run.file("rate.csv", [&](const auto& p) { write_rate_csv(p, rate); });
  run.file("axis.csv", [&](const auto& p) { write_path_csv(p, axis.path); });
}

// ---------------------------------------------------------------------------

void slab_boundaries(Run& run) {
  const Space space = Space::l1_slab();
  const double horizon = run.config().horizon;
  const double step = run.config().step;
  const Point p = Point::slab(0, 0);
  const std::vector<double> heights{-1.0, -0.5, 0.0, 0.5, 1.0};

  std::vector<CompareDirection> directions;
  for (double y : heights) {
    CompareDirection d;
    d.label = "y=" + std::to_string(y);
    d.rays.push_back(geodesic_ray(space, Point::slab(0, y), BoundaryTarget::plus_infinity(), horizon, step));
    directions.push_back(std::move(d));
  }
  std::vector<Point> landmarks = default_landmarks(space, p, 50, 3.0, run.config().seed);
  landmarks.push_back(Point::slab(0, 1));
  landmarks.push_back(Point::slab(0, -1));
  const CompactificationReport cmp = compactification_compare(space, directions, p, landmarks);

  double sup_max = 0.0;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    for (std::size_t j = i + 1; j < directions.size(); ++j) {
      sup_max = std::max(sup_max, asymptoticity(directions[i].rays[0], directions[j].rays[0]).sup_max);
    }
  }
  double min_distance = kInfinity;
  const std::size_t n = cmp.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) min_distance = std::min(min_distance, cmp.distances[i * n + j]);
  }
  run.check("ray classes", cmp.ray_classes == 1, cmp.ray_classes, 1);
  run.check("pairwise sup profiles", sup_max <= 2.0 + 1e-12, number(sup_max), "<= 2");
  run.check("horofunction clusters", cmp.clusters == 5, cmp.clusters, 5);
  run.check("horofunction separation", min_distance >= 0.5 - 1e-9, number(min_distance), ">= 0.5 - 1e-9");
  run.details()["comparison"] = to_json(cmp);

  // Two sequences toward the single end: big and small horospheres differ.
  std::vector<Point> upper, lower;
  for (int k = 1; k <= 40; ++k) {
    upper.push_back(Point::slab(k, 1));
    lower.push_back(Point::slab(k, -1));
  }
  const Point z = Point::slab(0, 1);
  const HorosphereVerdict big = horosphere_membership(space, z, {upper, lower}, 1.0, p, HorosphereMode::Big);
  const HorosphereVerdict small = horosphere_membership(space, z, {upper, lower}, 1.0, p, HorosphereMode::Small);
  run.check("small horosphere strictly inside big", big.member && !small.member,
            {{"big", number(big.value)}, {"small", number(small.value)}}, "big member, small not");

  for (std::size_t k = 0; k < cmp.samples.size(); ++k) {
    run.file("horofunction_" + std::to_string(k) + ".csv",
             [&](const auto& path) { write_horofunction_csv(path, space, cmp.samples[k]); });
  }
}

// ---------------------------------------------------------------------------

struct GridRun {
  double spacing = 0.0;
  Space space;
  MapDescriptor f;
  DivergenceEstimate rate;
  DisplacementEstimate tau;
};

Space strip_minus_integers(double x_min, double x_max, double h) {
  return build_conformal_grid(strip_minus_integers_mask(x_min, x_max, h, h),
                              DensitySpec::quasihyperbolic(DomainShape::StripMinusIntegers), Stencil::Sixteen);
}

/// Nodes of one period cell x in [c, c + 1), y >= 0: a fundamental domain of
/// the displacement of z -> conj(z) + 1.
std::vector<NodeId> unit_cell(const GridLayout& grid, double centre) {
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < grid.node_to_cell.size(); ++v) {
    const auto [x, y] = grid.position(v);
    if (x >= centre - 1e-9 && x < centre + 1 - 1e-9 && y >= -1e-9) nodes.push_back(v);
  }
  return nodes;
}

GridRun grid_estimates(double x_min, double x_max, double h, std::size_t steps) {
  GridRun g{h, strip_minus_integers(x_min, x_max, h), {}, {}, {}};
  g.f = grid_conj_translate(g.space);
  const GridLayout& grid = *g.space.grid();
  const auto start = grid.node_at(x_min + 0.4, 0.0);
  if (!start) throw Rejection("orbit start is not a grid node");
  g.rate = divergence_rate(g.space, g.f, Point::grid_node(*start), steps);
  DisplacementSearch search;
  search.candidates = unit_cell(grid, std::round((x_min + x_max) / 2));
  g.tau = minimal_displacement(g.space, g.f, search);
  return g;
}

void strip_minus_z(Run& run) {
  const double fine = run.config().spacing.value_or(0.02);
  const double coarse = run.extra("coarse_spacing", 2 * fine);
  const double x_min = run.extra("x_min", -10.0);
  const double x_max = run.extra("x_max", 10.0);
  const auto steps = static_cast<std::size_t>(run.extra("rate_steps", 100));
  const auto pairs = static_cast<std::size_t>(run.extra("pairs", 1000));

  const GridRun hi = grid_estimates(x_min, x_max, fine, steps);
  const GridRun lo = grid_estimates(x_min, x_max, coarse, steps);
  const double eps = hi.space.tolerance();
  run.details()["grid"] = {{"spacing", number(fine)},
                           {"coarse_spacing", number(coarse)},
                           {"nodes", hi.space.node_count()},
                           {"coarse_nodes", lo.space.node_count()},
                           {"eps_d", number(eps)},
                           {"coarse_eps_d", number(lo.space.tolerance())},
                           {"puncture_radius", number(fine)}};

  const IsometryCheck iso = check_isometry(hi.space, hi.f, pairs, run.config().seed);
  run.check("conj-translate isometry", iso.isometric && iso.pairs_checked > 0, to_json(iso), "defect <= 2 eps_d");
  run.check("c <= tau + 5 eps_d", hi.rate.c <= hi.tau.tau + 5 * eps,
            {{"c", number(hi.rate.c)}, {"tau", number(hi.tau.tau)}, {"eps_d", number(eps)}}, "c <= tau + 5 eps_d");
  const double c_change = std::fabs(hi.rate.c - lo.rate.c) / std::max(hi.rate.c, 1e-12);
  const double tau_change = std::fabs(hi.tau.tau - lo.tau.tau) / std::max(hi.tau.tau, 1e-12);
  run.check("resolution stability", c_change <= 0.1 && tau_change <= 0.1,
            {{"c_fine", number(hi.rate.c)},
             {"c_coarse", number(lo.rate.c)},
             {"tau_fine", number(hi.tau.tau)},
             {"tau_coarse", number(lo.tau.tau)},
             {"c_relative_change", number(c_change)},
             {"tau_relative_change", number(tau_change)}},
            "relative change <= 0.1");
  run.explore("gap tau - c", {{"gap", number(hi.tau.tau - hi.rate.c)}, {"eps_d", number(eps)}},
              "measured on the quasihyperbolic proxy; no reference value exists");
  run.details()["rate"] = to_json(hi.rate, false);
  run.details()["displacement"] = to_json(hi.tau);

  // Four-point probe on a pool of nodes from the middle of the window.
  const GridLayout& grid = *hi.space.grid();
  std::vector<Point> pool;
  const auto pool_size = static_cast<std::size_t>(run.extra("delta_pool", 24));
  for (std::uint64_t k = 0; pool.size() < pool_size && k < 100000; ++k) {
    const Point q = hi.space.node_point(static_cast<NodeId>(mix_seed(run.config().seed, k) % hi.space.node_count()));
    if (std::fabs(grid.position(q.node).first) <= 3.0) pool.push_back(q);
  }
  const DeltaReport delta = four_point_delta_on(hi.space, pool);
  run.explore("four-point delta probe", to_json(delta), "bounded defect on a truncated window; not a certificate");

  AxisOptions axis_options;
  axis_options.c = hi.rate.c;
  axis_options.tau = hi.tau.tau;
  axis_options.horizon = run.config().horizon;
  try {
    const AxisResult axis = construct_axis(hi.space, hi.f, hi.tau.argmin, axis_options);
    run.explore("axis", to_json(axis));
    run.file("axis.csv", [&](const auto& p) { write_path_csv(p, axis.path); });
    const auto [ax, ay] = grid.position(hi.tau.argmin.node);
    if (auto mirror = grid.node_at(ax, -ay); mirror && *mirror != hi.tau.argmin.node) {
      const UniquenessReport u =
          axis_uniqueness_probe(hi.space, hi.f, {hi.tau.argmin, Point::grid_node(*mirror)}, axis_options, eps);
      run.explore("axis uniqueness probe", {{"separation", number(u.separation)}, {"unique_at_eps_d", u.unique}});
    }
  } catch (const Rejection& e) {
    run.explore("axis", std::string("rejected: ") + e.what());
  }

  run.file("rate_fine.csv", [&](const auto& p) { write_rate_csv(p, hi.rate); });
  run.file("rate_coarse.csv", [&](const auto& p) { write_rate_csv(p, lo.rate); });
}

struct Registered {
  ScenarioInfo info;
  void (*run)(Run&);
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> list = {
      {{"cylinder_gap", "flat cylinder shift-flip: divergence rate 1, minimal displacement sqrt(1+pi^2), no axis"},
       cylinder_gap},
      {{"disk_approaching", "two disk rays to one boundary point: strong asymptoticity and the Busemann shift"},
       disk_approaching},
      {{"disk_dynamics", "disk Mobius map a = 0.5: c = tau = ln 3, dilation, axis, Denjoy-Wolff point, horospheres"},
       disk_dynamics},
      {{"slab_boundaries", "l1 slab: one class of rays but a segment of distinct horofunctions"}, slab_boundaries},
      {{"strip_minus_Z", "grid model of the strip minus the integers under z -> conj(z) + 1 (exploratory)"},
       strip_minus_z},
  };
  return list;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void prepare_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw Rejection("cannot create output directory '" + dir.string() + "'");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".csv" || ext == ".json")) std::filesystem::remove(entry.path());
  }
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& r : registry()) out.push_back(r.info);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  const Registered* entry = nullptr;
  for (const auto& r : registry()) {
    if (r.info.name == config.name) entry = &r;
  }
  if (!entry) {
    std::string names;
    for (const auto& info : list_scenarios()) names += (names.empty() ? "" : ", ") + info.name;
    throw Rejection("unknown scenario '" + config.name + "'; registered scenarios: " + names);
  }
  if (!(config.horizon > 0) || !(config.step > 0) || (config.spacing && !(*config.spacing > 0))) {
    throw Rejection("horizon, step and spacing must be positive");
  }
  Run run(config);
  if (config.write_files) prepare_directory(run.dir());
  entry->run(run);
  ScenarioReport report = run.finish();
  report.manifest.push_back("report.json");
  if (config.write_files) write_text(run.dir() / "report.json", report.to_json(utc_timestamp()).dump(2) + "\n");
  return report;
}

}  // namespace coarselab
