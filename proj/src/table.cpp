#include "magineq/table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "magineq/errors.hpp"

namespace magineq {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InputError("row width differs from the column count");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 14);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch == '\n' ? ' ' : ch;
  }
  return quoted + "\"";
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : table.metadata) {
    ordered_json parsed = ordered_json::parse(value, nullptr, false);
    meta[key] = parsed.is_discarded() ? ordered_json(value) : parsed;
  }
  doc["metadata"] = meta;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        // Round-trip through the CSV text so both formats carry the same digits.
        const std::string text = format_number(*d);
        if (std::isfinite(*d)) r.push_back(ordered_json::parse(text));
        else r.push_back(text);
      } else if (const auto* b = std::get_if<bool>(&c)) {
        r.push_back(*b);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

}  // namespace magineq
