#include "coarselab/config.hpp"

#include <fstream>
#include <sstream>

namespace coarselab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig config;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Rejection("config line " + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Rejection("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Rejection("config line " + std::to_string(line_no) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    config.entries_.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Rejection("cannot open config file '" + path + "'");
  return parse(in);
}

bool KeyValueConfig::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  std::optional<std::string> value;
  for (const auto& [k, v] : entries_) {
    if (k == key) value = v;  // last one wins
  }
  return value;
}

std::vector<std::string> KeyValueConfig::get_all(const std::string& key) const {
  std::vector<std::string> values;
  for (const auto& [k, v] : entries_) {
    if (k == key) values.push_back(v);
  }
  return values;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double x = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw Rejection("config key '" + key + "' expects a number, got '" + *v + "'");
  }
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const long long x = std::stoll(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw Rejection("config key '" + key + "' expects an integer, got '" + *v + "'");
  }
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }

Space load_space(const KeyValueConfig& config) {
  const auto kind_name = config.get("kind");
  if (!kind_name) throw Rejection("space config needs a 'kind'");
  const SpaceKind kind = space_kind_from_string(*kind_name);
  switch (kind) {
    case SpaceKind::PoincareDisk: return Space::poincare_disk();
    case SpaceKind::HyperbolicStrip: return Space::hyperbolic_strip();
    case SpaceKind::FlatCylinder: return Space::flat_cylinder();
    case SpaceKind::L1Slab: return Space::l1_slab();
    case SpaceKind::Graph: {
      std::vector<Edge> edges;
      for (const std::string& line : config.get_all("edge")) {
        std::istringstream in(line);
        Edge e;
        if (!(in >> e.a >> e.b >> e.weight)) throw Rejection("bad edge line '" + line + "'");
        edges.push_back(e);
      }
      return build_graph_space(edges, static_cast<std::size_t>(config.get_int("nodes", 0)));
    }
    case SpaceKind::ConformalGrid: break;
  }

  const double spacing = config.get_double("spacing", 0.05);
  const std::string mask_name = config.get_string("mask", "strip-minus-integers");
  const double x_min = config.get_double("x_min", -10.0);
  const double x_max = config.get_double("x_max", 10.0);
  GridMask mask;
  DomainShape shape = DomainShape::Mask;
  if (mask_name == "strip-minus-integers") {
    mask = strip_minus_integers_mask(x_min, x_max, spacing, config.get_double("puncture_radius", spacing));
    shape = DomainShape::StripMinusIntegers;
  } else if (mask_name == "strip") {
    mask = strip_mask(x_min, x_max, spacing);
    shape = DomainShape::Strip;
  } else if (mask_name == "disk") {
    mask = disk_mask(spacing);
    shape = DomainShape::Disk;
  } else if (mask_name == "rectangle") {
    mask = rectangle_mask(static_cast<std::size_t>(config.get_int("nx", 10)),
                          static_cast<std::size_t>(config.get_int("ny", 10)), spacing,
                          config.get_double("origin_x", 0.0), config.get_double("origin_y", 0.0));
  } else if (mask_name == "rle") {
    mask = mask_from_rle(config.get_all("row"), spacing, config.get_double("origin_x", 0.0),
                         config.get_double("origin_y", 0.0));
  } else {
    throw Rejection("unknown mask '" + mask_name + "'");
  }

  DensitySpec density;
  density.kind = density_kind_from_string(config.get_string("density", "quasihyperbolic"));
  density.domain = shape;
  if (density.kind == DensityKind::UserTable) {
    for (const std::string& row : config.get_all("table_row")) {
      std::istringstream in(row);
      double v = 0.0;
      while (in >> v) density.table.push_back(v);
    }
  }
  const long long stencil = config.get_int("stencil", 16);
  if (stencil != 8 && stencil != 16) throw Rejection("stencil must be 8 or 16");
  return build_conformal_grid(mask, density, stencil == 8 ? Stencil::Eight : Stencil::Sixteen);
}

}  // namespace coarselab
