#pragma once

// Column-oriented result tables and their CSV / JSON encodings.
//
// CSV layout: '#'-prefixed "key = value" comment lines carrying the effective
// configuration, one header row, then one row per record. Numbers are written
// with 17 significant digits so a read-back reproduces them bit for bit.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cloak {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
  }
  /// Index of a named column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  /// Numeric value at (row, named column); throws if the cell holds text.
  double number(std::size_t row, const std::string& name) const;
};

/// Cell-wise equality; NaN compares equal to NaN.
bool same_contents(const Table& a, const Table& b);

std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// {"config": {meta...}, "records": [{column: value, ...}, ...]}; NaN becomes null.
void write_json(std::ostream& out, const Table& table);

}  // namespace cloak
