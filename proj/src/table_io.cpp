#include "cloakcyl/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace cloak {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

Cell parse_cell(const std::string& text) {
  if (text.empty()) return std::string{};
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() + text.size()) return v;
  return text;
}

bool cells_equal(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const double* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return std::get<std::string>(a) == std::get<std::string>(b);
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, const std::string& name) const {
  return std::get<double>(rows.at(row).at(column(name)));
}

bool same_contents(const Table& a, const Table& b) {
  if (a.meta != b.meta || a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      if (!cells_equal(a.rows[r][c], b.rows[r][c])) return false;
    }
  }
  return true;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& [key, value] : table.meta) out << "# " << key << " = " << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << quote_if_needed(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const double* v = std::get_if<double>(&row[c])) {
        out << format_number(*v);
      } else {
        out << quote_if_needed(std::get<std::string>(row[c]));
      }
    }
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(1);
      const auto eq = body.find(" = ");
      if (eq == std::string::npos) {
        t.add_meta(trim(body), "");
      } else {
        // keep the value verbatim apart from the separator
        t.add_meta(trim(body.substr(0, eq)), body.substr(eq + 3));
      }
      continue;
    }
    if (!have_header) {
      t.columns = split_csv_line(line);
      have_header = true;
      continue;
    }
    std::vector<Cell> row;
    for (const std::string& f : split_csv_line(line)) row.push_back(parse_cell(f));
    if (row.size() != t.columns.size()) throw std::runtime_error("CSV row width mismatch");
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV has no header row");
  return t;
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) doc["config"][key] = value;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const double* v = std::get_if<double>(&row[c])) {
        rec[table.columns[c]] = std::isfinite(*v) ? nlohmann::ordered_json(*v) : nullptr;
      } else {
        rec[table.columns[c]] = std::get<std::string>(row[c]);
      }
    }
    doc["records"].push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cloak
