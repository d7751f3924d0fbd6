#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace catbell::cli {

enum class Format { kCsv, kJson };

/// Key/value pairs echoed ahead of every output.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);  // 17 significant digits

void write_table(std::ostream& os, const Table& t, const ConfigEcho& echo, Format format);
nlohmann::json echo_json(const ConfigEcho& echo);

/// Reads `#` comments, a header line and numeric rows.
Table read_csv(std::istream& is);

}  // namespace catbell::cli
