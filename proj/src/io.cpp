#include "coarselab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coarselab {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

namespace {

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw Rejection("cannot write '" + file.string() + "'");
  out.precision(12);
  return out;
}

}  // namespace

Json to_json(const Point& p) {
  Json j;
  j["space"] = std::string(to_string(p.kind));
  if (p.discrete()) {
    j["node"] = p.node;
  } else {
    j["x"] = number(static_cast<double>(p.x));
    j["y"] = number(static_cast<double>(p.y));
  }
  return j;
}

Json to_json(const DeltaReport& r) {
  Json j;
  j["delta_slim"] = number(r.delta_slim);
  j["delta_four_point"] = number(r.delta_four_point);
  j["triangles_sampled"] = r.triangles_sampled;
  j["quadruples_sampled"] = r.quadruples_sampled;
  j["exhaustive"] = r.exhaustive;
  j["seed"] = r.seed;
  j["resolution_disclaimer"] = number(r.resolution / 2);
  if (r.triangles_sampled > 0) {
    Json tri = Json::array();
    for (const Point& p : r.triangle_witness) tri.push_back(to_json(p));
    j["triangle_witness"] = tri;
    j["witness_side"] = r.witness_side;
  }
  if (r.quadruples_sampled > 0) {
    Json quad = Json::array();
    for (const Point& p : r.quadruple_witness) quad.push_back(to_json(p));
    j["quadruple_witness"] = quad;
  }
  return j;
}

Json to_json(const HorofunctionSample& h) {
  Json j;
  j["base"] = to_json(h.base);
  j["provenance"] = h.provenance;
  j["residual"] = number(h.residual);
  j["values"] = numbers(h.values);
  return j;
}

Json to_json(const CompactificationReport& r) {
  Json j;
  j["horizon"] = number(r.horizon);
  j["tol_cluster"] = number(r.tol_cluster);
  j["ray_classes"] = r.ray_classes;
  j["horofunction_clusters"] = r.clusters;
  j["bijective"] = r.bijective();
  Json samples = Json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    samples.push_back({{"direction", r.sample_direction[i]},
                       {"ray_class", r.sample_ray_class[i]},
                       {"cluster", r.sample_cluster[i]},
                       {"provenance", r.samples[i].provenance},
                       {"residual", number(r.samples[i].residual)}});
  }
  j["samples"] = samples;
  j["distances"] = numbers(r.distances);
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"class_a", v.class_a},
                        {"class_b", v.class_b},
                        {"check", v.class_a == v.class_b ? "well defined" : "injective"},
                        {"min_distance", number(v.min_distance)},
                        {"max_distance", number(v.max_distance)},
                        {"holds", v.holds}});
  }
  j["verdicts"] = verdicts;
  return j;
}

Json to_json(const AsymptoticityProfile& p) {
  return {{"sup_max", number(p.sup_max)},
          {"sup_slope", number(p.sup_slope)},
          {"inf_terminal", number(p.inf_terminal)},
          {"verdict_horizon", number(p.verdict_horizon)},
          {"inf_log_slope", number(p.inf_log_slope)},
          {"alignment_shift", number(p.alignment_shift)},
          {"asymptotic", p.asymptotic},
          {"strongly_asymptotic", p.strongly_asymptotic}};
}

Json to_json(const IsometryCheck& c) {
  return {{"pairs_checked", c.pairs_checked},
          {"pairs_skipped", c.pairs_skipped},
          {"worst_defect", number(c.worst_defect)},
          {"worst_expansion", number(c.worst_expansion)},
          {"slack", number(c.slack)},
          {"isometric", c.isometric},
          {"nonexpanding", c.nonexpanding}};
}

Json to_json(const DivergenceEstimate& e, bool with_table) {
  Json j = {{"c", number(e.c)},
            {"primary", number(e.primary)},
            {"tail_quotient", number(e.tail_quotient)},
            {"spread", number(e.spread)},
            {"steps", e.steps},
            {"truncated", e.truncated}};
  if (e.truncated) j["truncation"] = e.truncation_reason;
  if (with_table) {
    Json table = Json::array();
    for (const auto& row : e.table) table.push_back({row.n, number(row.distance), number(row.ratio)});
    j["table"] = table;
  }
  return j;
}

Json to_json(const DisplacementEstimate& e) {
  return {{"tau", number(e.tau)}, {"argmin", to_json(e.argmin)}, {"attained", e.attained},
          {"evaluations", e.evaluations}};
}

Json to_json(const ClassificationReport& c) {
  return {{"verdict", std::string(to_string(c.verdict))}, {"c", number(c.c)},
          {"first_half_sup", number(c.first_half_sup)}, {"second_half_sup", number(c.second_half_sup)},
          {"evidence", c.evidence}};
}

Json to_json(const DenjoyWolffEstimate& e) {
  Json tails = Json::array();
  for (const Point& p : e.orbit_tails) tails.push_back(to_json(p));
  return {{"kind", e.kind},
          {"direction", {number(static_cast<double>(e.direction.real())), number(static_cast<double>(e.direction.imag()))}},
          {"orbit_tails", tails},
          {"spread", number(e.spread)},
          {"agree", e.agree}};
}

Json to_json(const DilationEstimate& e) {
  return {{"log_lambda", number(e.log_lambda)}, {"residual", number(e.residual)}};
}

Json to_json(const AxisResult& a) {
  Json j = {{"c", number(a.c)},
            {"tau", number(a.tau)},
            {"gap", number(a.gap)},
            {"invariance_defect", number(a.invariance_defect)},
            {"geodesic", a.geodesic.geodesic},
            {"geodesic_defect", number(a.geodesic.worst_defect)},
            {"translation", number(a.translation)},
            {"samples", a.path.samples.size()}};
  if (a.distance_to_real_diameter) j["distance_to_real_diameter"] = number(*a.distance_to_real_diameter);
  return j;
}

Json to_json(const PowerTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n}, {"c", number(r.c)}, {"tau", number(r.tau)}, {"tau_over_n", number(r.tau_over_n)},
                    {"c_relative_error", number(r.c_relative_error)}});
  }
  return {{"rows", rows}, {"c_linear", t.c_linear}, {"tau_subadditive", t.tau_subadditive}};
}

Json to_json(const DynamicsReport& r) {
  Json j;
  j["map"] = r.map_name;
  j["rate"] = to_json(r.rate);
  j["displacement"] = to_json(r.displacement);
  j["classification"] = to_json(r.classification);
  j["gap"] = number(r.gap);
  j["tol_gap"] = number(r.tol_gap);
  if (r.denjoy_wolff) j["denjoy_wolff"] = to_json(*r.denjoy_wolff);
  if (r.dilation) j["dilation"] = to_json(*r.dilation);
  j["axis_status"] = r.axis_status;
  if (r.axis) j["axis"] = to_json(*r.axis);
  return j;
}

std::pair<double, double> coordinates(const Space& space, const Point& p) {
  if (const GridLayout* g = space.grid()) return g->position(p.node);
  if (p.discrete()) return {static_cast<double>(p.node), 0.0};
  return {static_cast<double>(p.x), static_cast<double>(p.y)};
}

void write_path_csv(const std::filesystem::path& file, const GeodesicPath& path) {
  auto out = open_out(file);
  out << "t,c1,c2\n";
  for (const auto& s : path.samples) {
    const auto [a, b] = coordinates(path.space, s.point);
    out << s.t << ',' << a << ',' << b << '\n';
  }
}

GeodesicPath read_path_csv(const std::filesystem::path& file, const Space& space) {
  std::ifstream in(file);
  if (!in) throw Rejection("cannot open '" + file.string() + "'");
  GeodesicPath path(space);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double t, a, b;
    if (!(row >> t >> a >> b)) throw Rejection("bad path row '" + line + "'");
    Point p;
    if (const GridLayout* g = space.grid()) {
      auto n = g->node_at(a, b);
      if (!n) throw Rejection("path row does not sit on a grid node: " + line);
      p = Point::grid_node(*n);
    } else {
      switch (space.kind()) {
        case SpaceKind::Graph: p = Point::graph_node(static_cast<NodeId>(std::llround(a))); break;
        case SpaceKind::PoincareDisk: p = Point::disk({a, b}); break;
        case SpaceKind::HyperbolicStrip: p = Point::strip({a, b}); break;
        case SpaceKind::FlatCylinder: p = Point::cylinder(a, b); break;
        case SpaceKind::L1Slab: p = Point::slab(a, b); break;
        default: break;
      }
    }
    space.require(p);
    if (!path.samples.empty()) path.step = std::max(path.step, t - path.samples.back().t);
    path.samples.push_back({t, p});
  }
  if (path.samples.empty()) throw Rejection("path file has no samples");
  path.horizon = path.t_end();
  return path;
}

void write_profile_csv(const std::filesystem::path& file, const AsymptoticityProfile& profile) {
  auto out = open_out(file);
  out << "t,sup,inf\n";
  for (std::size_t k = 0; k < profile.t.size(); ++k) {
    out << profile.t[k] << ',' << profile.sup_profile[k] << ',' << profile.inf_profile[k] << '\n';
  }
}

void write_horofunction_csv(const std::filesystem::path& file, const Space& space, const HorofunctionSample& h) {
  auto out = open_out(file);
  out << "c1,c2,value\n";
  for (std::size_t k = 0; k < h.landmarks.size(); ++k) {
    const auto [a, b] = coordinates(space, h.landmarks[k]);
    out << a << ',' << b << ',' << h.values[k] << '\n';
  }
}

void write_rate_csv(const std::filesystem::path& file, const DivergenceEstimate& e) {
  auto out = open_out(file);
  out << "n,distance,ratio\n";
  for (const auto& row : e.table) out << row.n << ',' << row.distance << ',' << row.ratio << '\n';
}

void write_power_csv(const std::filesystem::path& file, const PowerTable& t) {
  auto out = open_out(file);
  out << "n,c,tau,tau_over_n\n";
  for (const auto& r : t.rows) out << r.n << ',' << r.c << ',' << r.tau << ',' << r.tau_over_n << '\n';
}

void write_witness_csv(const std::filesystem::path& file, const Space& space, const DeltaReport& r) {
  auto out = open_out(file);
  out << "role,c1,c2\n";
  for (const Point& p : r.triangle_witness) {
    const auto [a, b] = coordinates(space, p);
    out << "triangle," << a << ',' << b << '\n';
  }
  for (const Point& p : r.quadruple_witness) {
    const auto [a, b] = coordinates(space, p);
    out << "quadruple," << a << ',' << b << '\n';
  }
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  auto out = open_out(file);
  out << text;
}

}  // namespace coarselab
