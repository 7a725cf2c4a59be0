#include "transduce_cli/table.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#ifndef TRANSDUCE_VERSION
#define TRANSDUCE_VERSION "0.0.0"
#endif

namespace transduce::cli {

const char* tool_version() { return TRANSDUCE_VERSION; }

const char* to_string(ColumnType t) {
  switch (t) {
    case ColumnType::real: return "real";
    case ColumnType::integer: return "integer";
    case ColumnType::text: return "text";
  }
  return "?";
}

namespace {

ColumnType column_type_from(const std::string& s) {
  if (s == "real") return ColumnType::real;
  if (s == "integer") return ColumnType::integer;
  if (s == "text") return ColumnType::text;
  throw std::runtime_error("unknown column type '" + s + "'");
}

bool matches(const Cell& c, ColumnType t) {
  switch (t) {
    case ColumnType::real: return std::holds_alternative<double>(c);
    case ColumnType::integer: return std::holds_alternative<std::int64_t>(c);
    case ColumnType::text: return std::holds_alternative<std::string>(c);
  }
  return false;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument(name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns.size()));
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!matches(row[i], columns[i].type))
      throw std::invalid_argument(name + ": cell type mismatch in column " + columns[i].name);
  rows.push_back(std::move(row));
}

bool identical(const Table& a, const Table& b) {
  if (a.name != b.name || a.columns.size() != b.columns.size() || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.columns.size(); ++i)
    if (a.columns[i].name != b.columns[i].name || a.columns[i].type != b.columns[i].type ||
        a.columns[i].unit != b.columns[i].unit)
      return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (std::size_t i = 0; i < a.columns.size(); ++i) {
      const Cell& x = a.rows[r][i];
      const Cell& y = b.rows[r][i];
      if (x.index() != y.index()) return false;
      if (const auto* dx = std::get_if<double>(&x)) {
        const double dy = std::get<double>(y);
        if (std::isnan(*dx) && std::isnan(dy)) continue;
        if (std::bit_cast<std::uint64_t>(*dx) != std::bit_cast<std::uint64_t>(dy)) return false;
      } else if (x != y) {
        return false;
      }
    }
  }
  return true;
}

std::string to_csv(const Table& table, const TableHeader& header) {
  std::string out;
  out += "# tool_version=" + header.tool_version + "\n";
  out += "# schema_version=" + std::to_string(header.schema_version) + "\n";
  out += "# config_hash=" + header.config_hash + "\n";
  out += "# command=" + header.command + "\n";
  out += "# table=" + table.name + "\n";
  out += "# units=";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i].unit.empty() ? "1" : table.columns[i].unit;
  }
  out += "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.columns[i].name);
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out += format_double(v);
            else if constexpr (std::is_same_v<T, std::int64_t>)
              out += std::to_string(v);
            else
              out += csv_escape(v);
          },
          row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& table, const TableHeader& header) {
  using nlohmann::json;
  json doc;
  doc["schema_version"] = header.schema_version;
  doc["tool_version"] = header.tool_version;
  doc["config_hash"] = header.config_hash;
  doc["command"] = header.command;
  doc["table"] = table.name;
  json cols = json::array();
  for (const auto& c : table.columns) cols.push_back({{"name", c.name}, {"type", to_string(c.type)}, {"unit", c.unit}});
  doc["columns"] = std::move(cols);
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& cell : row) {
      if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d))
          r.push_back(*d);
        else
          r.push_back(format_double(*d));
      } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        r.push_back(*i);
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

ParsedTable table_from_json(const std::string& text) {
  using nlohmann::json;
  ParsedTable out;
  try {
    const json doc = json::parse(text);
    out.header.schema_version = doc.at("schema_version").get<int>();
    if (out.header.schema_version != kSchemaVersion)
      throw std::runtime_error("unsupported schema version " + std::to_string(out.header.schema_version));
    out.header.tool_version = doc.at("tool_version").get<std::string>();
    out.header.config_hash = doc.at("config_hash").get<std::string>();
    out.header.command = doc.at("command").get<std::string>();
    out.table.name = doc.at("table").get<std::string>();
    for (const auto& c : doc.at("columns"))
      out.table.columns.push_back(
          {c.at("name").get<std::string>(), column_type_from(c.at("type").get<std::string>()), c.at("unit").get<std::string>()});
    for (const auto& r : doc.at("rows")) {
      if (r.size() != out.table.columns.size()) throw std::runtime_error("row width mismatch");
      std::vector<Cell> row;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const json& v = r[i];
        switch (out.table.columns[i].type) {
          case ColumnType::real:
            if (v.is_string()) {
              const auto s = v.get<std::string>();
              if (s == "nan")
                row.emplace_back(std::numeric_limits<double>::quiet_NaN());
              else if (s == "inf")
                row.emplace_back(std::numeric_limits<double>::infinity());
              else if (s == "-inf")
                row.emplace_back(-std::numeric_limits<double>::infinity());
              else
                throw std::runtime_error("bad real '" + s + "'");
            } else {
              row.emplace_back(v.get<double>());
            }
            break;
          case ColumnType::integer: row.emplace_back(v.get<std::int64_t>()); break;
          case ColumnType::text: row.emplace_back(v.get<std::string>()); break;
        }
      }
      out.table.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed results JSON: ") + e.what());
  }
  return out;
}

}  // namespace transduce::cli
