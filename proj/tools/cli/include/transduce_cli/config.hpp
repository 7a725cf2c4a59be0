#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace transduce::cli {

// Line-oriented config format:
//
//   # comment
//   [section]
//   key = 1.5e6              number
//   key = "0.8 MHz"          string; dimensional quantities are strings with a unit
//   key = true               boolean
//   key = ["1 MHz", "2 MHz"] single-line array
//
// Keys are unique within a section. Every error carries the 1-based line and
// column of the offending token.

struct Value {
  enum class Kind { number, string, boolean, array };
  Kind kind = Kind::number;
  double number = 0.0;
  bool boolean = false;
  std::string text;  // string contents, or the literal source text otherwise
  std::vector<Value> items;
  int line = 0;
  int column = 0;
};

struct Entry {
  std::string section;
  std::string key;
  Value value;
  int line = 0;    // 0 for command-line overrides
  int column = 0;
};

class Document {
 public:
  const Value* find(std::string_view section, std::string_view key) const;
  const std::vector<Entry>& entries() const { return entries_; }
  bool has_section(std::string_view section) const;

  void add(Entry e);  // throws on duplicate keys
  void set(Entry e);  // replaces an existing key

  struct SectionHeader {
    std::string name;
    int line = 0;
    int column = 0;
  };
  /// Every [section] header in source order, including empty sections.
  const std::vector<SectionHeader>& sections() const { return sections_; }
  void add_section(SectionHeader h) { sections_.push_back(std::move(h)); }

 private:
  std::vector<Entry> entries_;
  std::vector<SectionHeader> sections_;
};

Document parse_config(std::string_view text);
/// Parses one value. `line`/`column` locate the first character.
Value parse_value(std::string_view text, int line, int column);
/// Applies "section.key=value". A value that does not parse as a number,
/// boolean, array or quoted string is taken as a bare string, so
/// `optical.kappa_ex=0.25 GHz` works without shell quoting of the quotes.
void apply_override(Document& doc, std::string_view assignment);

enum class Dimension {
  rate,             // Hz, kHz, MHz, GHz, THz
  frequency,        // as rate, or a vacuum wavelength (nm, um)
  temperature,      // K, mK, uK
  length,           // nm, um, mm, m        -> um
  volume,           // um3, um^3, nm3, mm3  -> um^3
  energy,           // eV, meV, ueV, J      -> eV
  electric_dipole,  // C m, D (debye), e nm -> C m
  magnetic_dipole,  // J/T, muB             -> J/T
  density_of_states,  // /eV/um3
  recombination,      // um3/s
  density,            // /um3
  power,              // W, mW, uW, nW, pW
};
const char* to_string(Dimension d);

/// Value in the canonical unit of `dim` (Hz, K, um, um^3, eV, C m, J/T,
/// 1/(eV um^3), um^3/s, 1/um^3, W). `path` names the field in error messages.
double parse_quantity(const Value& v, Dimension dim, const std::string& path);

/// 64-bit FNV-1a, printed as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace transduce::cli
