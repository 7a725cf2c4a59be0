#include "transduce_cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <utility>

#include "transduce/constants.hpp"
#include "transduce/errors.hpp"

namespace transduce::cli {

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  int line = 0;
  int column0 = 1;  // column of s[0]

  int column() const { return column0 + static_cast<int>(i); }
  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  void skip_space() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(msg, line, column()); }
};

bool is_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::optional<double> full_number(std::string_view t) {
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

Value parse_one(Cursor& c) {
  c.skip_space();
  Value v;
  v.line = c.line;
  v.column = c.column();
  if (c.done()) c.fail("expected a value");
  const char ch = c.peek();
  if (ch == '"') {
    ++c.i;
    v.kind = Value::Kind::string;
    while (true) {
      if (c.done()) throw ConfigError("unterminated string", v.line, v.column);
      char x = c.s[c.i++];
      if (x == '"') break;
      if (x == '\\') {
        if (c.done()) c.fail("unterminated escape");
        x = c.s[c.i++];
        if (x != '"' && x != '\\') c.fail(std::string("unknown escape \\") + x);
      }
      v.text.push_back(x);
    }
    return v;
  }
  if (ch == '[') {
    ++c.i;
    v.kind = Value::Kind::array;
    c.skip_space();
    if (c.peek() == ']') {
      ++c.i;
      return v;
    }
    while (true) {
      v.items.push_back(parse_one(c));
      c.skip_space();
      if (c.peek() == ',') {
        ++c.i;
        continue;
      }
      if (c.peek() == ']') {
        ++c.i;
        break;
      }
      c.fail("expected ',' or ']' in array");
    }
    return v;
  }
  const std::size_t start = c.i;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != ' ' && c.peek() != '\t') ++c.i;
  const std::string_view tok = c.s.substr(start, c.i - start);
  v.text = std::string(tok);
  if (tok == "true" || tok == "false") {
    v.kind = Value::Kind::boolean;
    v.boolean = tok == "true";
    return v;
  }
  if (const auto n = full_number(tok)) {
    v.kind = Value::Kind::number;
    v.number = *n;
    return v;
  }
  throw ConfigError("cannot parse value '" + std::string(tok) + "' (dimensional quantities are quoted, e.g. \"2 MHz\")",
                    v.line, v.column);
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Unit {
  const char* name;
  double factor;
};

double lookup(const std::vector<Unit>& table, std::string_view unit, const Value& v, const std::string& path,
              Dimension dim) {
  for (const auto& u : table)
    if (unit == u.name) return u.factor;
  std::string accepted;
  for (const auto& u : table) accepted += std::string(accepted.empty() ? "" : ", ") + u.name;
  throw ConfigError(path + ": unknown " + to_string(dim) + " unit '" + std::string(unit) + "' (accepted: " + accepted +
                        ")",
                    v.line, v.column);
}

}  // namespace

const Value* Document::find(std::string_view section, std::string_view key) const {
  for (const auto& e : entries_)
    if (e.section == section && e.key == key) return &e.value;
  return nullptr;
}

bool Document::has_section(std::string_view section) const {
  for (const auto& e : entries_)
    if (e.section == section) return true;
  return false;
}

void Document::add(Entry e) {
  if (find(e.section, e.key))
    throw ConfigError("duplicate key '" + e.key + "' in section [" + e.section + "]", e.line, e.column);
  entries_.push_back(std::move(e));
}

void Document::set(Entry e) {
  for (auto& x : entries_) {
    if (x.section == e.section && x.key == e.key) {
      x = std::move(e);
      return;
    }
  }
  entries_.push_back(std::move(e));
}

Value parse_value(std::string_view text, int line, int column) {
  Cursor c{text, 0, line, column};
  Value v = parse_one(c);
  c.skip_space();
  if (!c.done()) c.fail("unexpected trailing characters");
  return v;
}

Document parse_config(std::string_view text) {
  Document doc;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim_right(strip_comment(raw));
    Cursor c{line, 0, line_no, 1};
    c.skip_space();
    if (c.done()) continue;

    if (c.peek() == '[') {
      ++c.i;
      const std::size_t start = c.i;
      while (!c.done() && is_key_char(c.peek())) ++c.i;
      if (c.i == start) c.fail("expected a section name");
      const std::string name(line.substr(start, c.i - start));
      if (c.peek() != ']') c.fail("expected ']'");
      ++c.i;
      c.skip_space();
      if (!c.done()) c.fail("unexpected characters after section header");
      doc.add_section({name, line_no, 1});
      section = name;
      continue;
    }

    const int key_col = c.column();
    const std::size_t start = c.i;
    while (!c.done() && is_key_char(c.peek())) ++c.i;
    if (c.i == start) c.fail("expected a key");
    const std::string key(line.substr(start, c.i - start));
    c.skip_space();
    if (c.peek() != '=') c.fail("expected '=' after key");
    ++c.i;
    if (section.empty()) throw ConfigError("key '" + key + "' appears before any [section]", line_no, key_col);
    Value v = parse_one(c);
    c.skip_space();
    if (!c.done()) {
      c.fail(v.kind == Value::Kind::number ? "unexpected trailing characters (quantities with units are quoted, e.g. \"2 MHz\")"
                                           : "unexpected trailing characters");
    }
    doc.add(Entry{section, key, std::move(v), line_no, key_col});
  }
  return doc;
}

void apply_override(Document& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
    throw ConfigError("override '" + std::string(assignment) + "' must look like section.key=value");
  Entry e;
  e.section = std::string(assignment.substr(0, dot));
  e.key = std::string(assignment.substr(dot + 1, eq - dot - 1));
  if (e.section.empty() || e.key.empty())
    throw ConfigError("override '" + std::string(assignment) + "' must look like section.key=value");
  const std::string_view rhs = assignment.substr(eq + 1);
  try {
    e.value = parse_value(rhs, 0, 0);
  } catch (const ConfigError&) {
    e.value.kind = Value::Kind::string;
    e.value.text = std::string(rhs);
  }
  doc.set(std::move(e));
}

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::rate: return "rate";
    case Dimension::frequency: return "frequency";
    case Dimension::temperature: return "temperature";
    case Dimension::length: return "length";
    case Dimension::volume: return "volume";
    case Dimension::energy: return "energy";
    case Dimension::electric_dipole: return "electric dipole";
    case Dimension::magnetic_dipole: return "magnetic dipole";
    case Dimension::density_of_states: return "density of states";
    case Dimension::recombination: return "recombination constant";
    case Dimension::density: return "density";
    case Dimension::power: return "power";
  }
  return "?";
}

double parse_quantity(const Value& v, Dimension dim, const std::string& path) {
  if (v.kind != Value::Kind::string)
    throw ConfigError(path + ": expected a quoted quantity with a unit, e.g. \"1.5 MHz\"", v.line, v.column);
  std::string_view s = v.text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  s = trim_right(s);
  const auto sp = s.find_first_of(" \t");
  if (sp == std::string_view::npos)
    throw ConfigError(path + ": missing unit in '" + v.text + "'", v.line, v.column);
  const auto num = full_number(s.substr(0, sp));
  if (!num) throw ConfigError(path + ": cannot parse number in '" + v.text + "'", v.line, v.column);
  std::string_view unit = s.substr(sp);
  while (!unit.empty() && (unit.front() == ' ' || unit.front() == '\t')) unit.remove_prefix(1);

  static const std::vector<Unit> rate{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
  static const std::vector<Unit> wavelength{{"nm", 1e-9}, {"um", 1e-6}};
  static const std::vector<Unit> temperature{{"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}};
  static const std::vector<Unit> length{{"nm", 1e-3}, {"um", 1.0}, {"mm", 1e3}, {"m", 1e6}};
  static const std::vector<Unit> volume{{"um3", 1.0}, {"um^3", 1.0}, {"nm3", 1e-9}, {"nm^3", 1e-9},
                                        {"mm3", 1e9}, {"mm^3", 1e9}};
  static const std::vector<Unit> energy{
      {"eV", 1.0}, {"meV", 1e-3}, {"ueV", 1e-6}, {"J", 1.0 / constants::elementary_charge}};
  static const std::vector<Unit> e_dipole{{"C m", 1.0}, {"D", constants::debye},
                                          {"e nm", constants::elementary_charge * 1e-9}};
  static const std::vector<Unit> m_dipole{{"J/T", 1.0}, {"muB", constants::bohr_magneton}};
  static const std::vector<Unit> dos{{"/eV/um3", 1.0}, {"/eV/um^3", 1.0}};
  static const std::vector<Unit> recomb{{"um3/s", 1.0}, {"um^3/s", 1.0}};
  static const std::vector<Unit> density{{"/um3", 1.0}, {"/um^3", 1.0}, {"/cm3", 1e-12}, {"/cm^3", 1e-12}};
  static const std::vector<Unit> power{{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}, {"pW", 1e-12}};

  switch (dim) {
    case Dimension::rate: return *num * lookup(rate, unit, v, path, dim);
    case Dimension::frequency:
      for (const auto& u : wavelength) {
        if (unit == u.name) {
          if (!(*num > 0.0)) throw ConfigError(path + ": wavelength must be > 0", v.line, v.column);
          return constants::speed_of_light / (*num * u.factor);
        }
      }
      return *num * lookup(rate, unit, v, path, dim);
    case Dimension::temperature: return *num * lookup(temperature, unit, v, path, dim);
    case Dimension::length: return *num * lookup(length, unit, v, path, dim);
    case Dimension::volume: return *num * lookup(volume, unit, v, path, dim);
    case Dimension::energy: return *num * lookup(energy, unit, v, path, dim);
    case Dimension::electric_dipole: return *num * lookup(e_dipole, unit, v, path, dim);
    case Dimension::magnetic_dipole: return *num * lookup(m_dipole, unit, v, path, dim);
    case Dimension::density_of_states: return *num * lookup(dos, unit, v, path, dim);
    case Dimension::recombination: return *num * lookup(recomb, unit, v, path, dim);
    case Dimension::density: return *num * lookup(density, unit, v, path, dim);
    case Dimension::power: return *num * lookup(power, unit, v, path, dim);
  }
  return *num;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace transduce::cli
