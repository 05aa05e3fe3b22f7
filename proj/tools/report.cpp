#include "report.hpp"

#include <charconv>
#include <cmath>

namespace gaussweyl::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void Report::violate(const std::string& name, double measured, double limit, const std::string& detail) {
  nlohmann::ordered_json v;
  v["check"] = name;
  v["measured"] = measured;
  v["limit"] = limit;
  if (!detail.empty()) v["detail"] = detail;
  violations.push_back(std::move(v));
}

void Report::row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }

namespace {

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d == 0.0 ? 0.0 : *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return quote(std::get<std::string>(c));
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

void flatten(const std::string& prefix, const nlohmann::ordered_json& j, std::ostream& out) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      flatten(prefix + k + ".", v, out);
    } else if (v.is_array()) {
      out << "# " << prefix << k << '=' << v.dump() << "\r\n";
    } else {
      out << "# " << prefix << k << '=' << scalar_text(v) << "\r\n";
    }
  }
}

}  // namespace

void write_json(const Report& r, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["tool"] = "gaussweyl";
  doc["version"] = GAUSSWEYL_VERSION;
  doc["command"] = r.command;
  doc["result"] = r.result;
  doc["config"] = r.config;
  doc["quadrature"] = r.quadrature;
  doc["values"] = r.values;
  if (!r.columns.empty()) {
    nlohmann::ordered_json table;
    table["columns"] = r.columns;
    table["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      nlohmann::ordered_json jr = nlohmann::ordered_json::array();
      for (const auto& c : row) jr.push_back(cell_json(c));
      table["rows"].push_back(std::move(jr));
    }
    doc["table"] = std::move(table);
  }
  doc["contract"]["ok"] = r.ok();
  doc["contract"]["violations"] = r.violations;
  out << doc.dump(2) << '\n';
}

void write_csv(const Report& r, std::ostream& out) {
  out << "# tool=gaussweyl " << GAUSSWEYL_VERSION << "\r\n";
  out << "# command=" << r.command << "\r\n";
  out << "# result=" << r.result << "\r\n";
  flatten("config.", r.config, out);
  flatten("quadrature.", r.quadrature, out);
  if (!r.columns.empty()) flatten("value.", r.values, out);
  out << "# contract=" << (r.ok() ? "pass" : "fail") << "\r\n";
  for (const auto& v : r.violations) out << "# violation=" << v.dump() << "\r\n";
  if (r.columns.empty()) {
    out << "name,value\r\n";
    for (const auto& [k, v] : r.values.items()) {
      if (v.is_array() || v.is_object()) continue;
      out << quote(k) << ',' << quote(scalar_text(v)) << "\r\n";
    }
    return;
  }
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << quote(r.columns[i]);
  out << "\r\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\r\n";
  }
}

}  // namespace gaussweyl::cli
