#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace transduce::cli {

/// Version of the CSV column layout and JSON document shape. Bump on any
/// change to column names, order or meaning.
inline constexpr int kSchemaVersion = 1;

const char* tool_version();

enum class ColumnType { real, integer, text };
const char* to_string(ColumnType t);

struct Column {
  std::string name;
  ColumnType type = ColumnType::real;
  std::string unit;  // empty for dimensionless
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; throws std::invalid_argument on a width or type mismatch.
  void add_row(std::vector<Cell> row);
};

/// Cell-by-cell equality with NaN equal to NaN and doubles compared bitwise
/// otherwise.
bool identical(const Table& a, const Table& b);

struct TableHeader {
  std::string tool_version;
  int schema_version = kSchemaVersion;
  std::string config_hash;
  std::string command;
};

/// CSV with '#'-prefixed header lines, a column-name row, then the data.
/// Doubles use %.17g; non-finite values are written as inf, -inf, nan.
std::string to_csv(const Table& table, const TableHeader& header);

/// {"schema_version", "tool_version", "config_hash", "command", "table",
///  "columns": [{"name","type","unit"}], "rows": [[...]]}. Non-finite
/// doubles are the strings "inf", "-inf", "nan".
std::string to_json(const Table& table, const TableHeader& header);

struct ParsedTable {
  TableHeader header;
  Table table;
};
/// Inverse of to_json. Throws std::runtime_error on a malformed document or
/// an unsupported schema version.
ParsedTable table_from_json(const std::string& text);

}  // namespace transduce::cli
