#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace magineq {

/// One output cell. Numbers are written in 15-significant-digit scientific
/// notation, booleans as true/false.
using Cell = std::variant<double, std::string, bool>;

inline Cell number_cell(double v) { return Cell(std::in_place_type<double>, v); }
inline Cell text_cell(std::string v) { return Cell(std::in_place_type<std::string>, std::move(v)); }
inline Cell flag_cell(bool v) { return Cell(std::in_place_type<bool>, v); }

struct Table {
  /// Ordered key/value metadata. Values are raw JSON texts so the config
  /// echo survives as an object in JSON output.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Locale-independent %.14e; nan and +-inf spelled out.
std::string format_number(double v);

/// '#'-prefixed metadata lines, a header row, then comma-separated rows.
void write_csv(const Table& table, std::ostream& out);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}; numbers use
/// the same text as CSV (non-finite values become strings).
void write_json(const Table& table, std::ostream& out);

}  // namespace magineq
