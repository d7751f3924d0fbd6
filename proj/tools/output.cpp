#include "output.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "catbell/error.hpp"

namespace catbell::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json echo_json(const ConfigEcho& echo) {
  auto j = nlohmann::json::object();
  for (const auto& [k, v] : echo) j[k] = v;
  return j;
}

void write_table(std::ostream& os, const Table& t, const ConfigEcho& echo, Format format) {
  if (format == Format::kJson) {
    auto rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      auto obj = nlohmann::json::object();
      for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = r[c];
      rows.push_back(std::move(obj));
    }
    os << nlohmann::json{{"config", echo_json(echo)}, {"rows", rows}}.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : echo) os << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << format_number(r[c]);
    os << '\n';
  }
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (!header) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw DomainError(ErrorCode::kIo, "non-numeric CSV cell: " + cell);
      }
    }
    if (row.size() != t.columns.size()) throw DomainError(ErrorCode::kIo, "ragged CSV row");
    t.rows.push_back(std::move(row));
  }
  if (!header) throw DomainError(ErrorCode::kIo, "CSV has no header");
  return t;
}

}  // namespace catbell::cli
