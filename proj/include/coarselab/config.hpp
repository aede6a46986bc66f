#pragma once

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarselab/space.hpp"

namespace coarselab {

/// Line-oriented `key = value` text. `#` starts a comment, `[section]`
/// prefixes following keys with "section.", and keys may repeat.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::vector<std::string> get_all(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;

  void set(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Builds a space from a description such as
///
///     kind = conformal-grid
///     mask = strip-minus-integers   # or strip, disk, rectangle, rle
///     spacing = 0.02
///     x_min = -10
///     x_max = 10
///     density = quasihyperbolic
///     stencil = 16
///
/// Graph spaces list `edge = a b weight` lines. RLE masks give one
/// `row = 3x0 5x1` line per row plus `origin_x` / `origin_y`; user density
/// tables give one `table_row = v v v` line per row.
Space load_space(const KeyValueConfig& config);

}  // namespace coarselab
