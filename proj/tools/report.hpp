#pragma once

// One report per CLI run: metadata, scalar values, an optional long-format
// table and the contract outcome, written as JSON or CSV.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace gaussweyl::cli {

using Cell = std::variant<double, long long, std::string>;

struct Report {
  std::string command;
  std::string result;  // what the run checks, in words
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json quadrature = nlohmann::ordered_json::object();
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<nlohmann::ordered_json> violations;

  bool ok() const { return violations.empty(); }
  void violate(const std::string& name, double measured, double limit, const std::string& detail = "");
  void row(std::vector<Cell> cells);
};

void write_json(const Report& r, std::ostream& out);
// Metadata as leading "# key=value" lines, then RFC 4180 header and rows.
// Without a table the scalar values become "name,value" rows.
void write_csv(const Report& r, std::ostream& out);

std::string format_number(double v);

}  // namespace gaussweyl::cli
