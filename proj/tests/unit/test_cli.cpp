#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "transduce/errors.hpp"
#include "transduce_cli/commands.hpp"
#include "transduce_cli/config.hpp"
#include "transduce_cli/run_config.hpp"
#include "transduce_cli/table.hpp"

using namespace transduce;
using namespace transduce::cli;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string tcenter_text() { return read_file(transduce::testing::config_path("tcenter_table1")); }

// Location reported by a ConfigError raised while loading `text`.
std::pair<int, int> error_location(const std::string& text) {
  try {
    load_run_config(text);
  } catch (const ConfigError& e) {
    return {e.line(), e.column()};
  }
  return {-1, -1};
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("transduce_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(ConfigParser, ValuesOfEveryKind) {
  const auto doc = parse_config("# c\n[a]\nx = 1.5e6\ny = \"0.8 MHz\" # trailing\nz = true\nw = [1, \"2 Hz\"]\n");
  ASSERT_NE(doc.find("a", "x"), nullptr);
  EXPECT_EQ(doc.find("a", "x")->number, 1.5e6);
  EXPECT_EQ(doc.find("a", "y")->text, "0.8 MHz");
  EXPECT_TRUE(doc.find("a", "z")->boolean);
  ASSERT_EQ(doc.find("a", "w")->items.size(), 2u);
  EXPECT_EQ(doc.find("a", "w")->line, 6);
  EXPECT_EQ(doc.find("a", "missing"), nullptr);
}

TEST(ConfigParser, SyntaxErrorsCarryLineAndColumn) {
  auto loc = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return {e.line(), e.column()};
    }
    return {-1, -1};
  };
  EXPECT_EQ(loc("[a]\nx = \n"), std::make_pair(2, 4));
  EXPECT_EQ(loc("[a]\nx = \"open\n"), std::make_pair(2, 5));
  EXPECT_EQ(loc("[a\n"), std::make_pair(1, 3));
  EXPECT_EQ(loc("x = 1\n"), std::make_pair(1, 1));
  EXPECT_EQ(loc("[a]\nx = 1\nx = 2\n").first, 3);
  EXPECT_EQ(loc("[a]\nx = 1 2\n").first, 2);
}

TEST(ConfigParser, SchemaErrorsPointAtTheKey) {
  std::string t = tcenter_text();
  t.replace(t.find("g13 = "), 3, "g31");
  const auto [line, col] = error_location(t);
  EXPECT_GT(line, 0);
  EXPECT_EQ(col, 1);
  EXPECT_GT(error_location("[nonsense]\n").first, 0);
}

TEST(ConfigParser, MissingOrWrongUnitIsRejected) {
  std::string t = tcenter_text();
  t.replace(t.find("\"2 MHz\""), 7, "\"2\"");
  EXPECT_GT(error_location(t).first, 0);
  t = tcenter_text();
  t.replace(t.find("\"2 MHz\""), 7, "\"2 mK\"");
  EXPECT_GT(error_location(t).first, 0);
}

TEST(Quantities, CanonicalUnits) {
  auto q = [](const std::string& s, Dimension d) { return parse_quantity(parse_value("\"" + s + "\"", 1, 1), d, "t"); };
  EXPECT_DOUBLE_EQ(q("0.8 MHz", Dimension::rate), 8e5);
  EXPECT_DOUBLE_EQ(q("2 GHz", Dimension::rate), 2e9);
  EXPECT_NEAR(q("1326 nm", Dimension::frequency), 299792458.0 / 1326e-9, 1.0);
  EXPECT_DOUBLE_EQ(q("20 mK", Dimension::temperature), 0.02);
  EXPECT_DOUBLE_EQ(q("1.5 meV", Dimension::energy), 1.5e-3);
  EXPECT_DOUBLE_EQ(q("200 nm", Dimension::length), 0.2);
  EXPECT_DOUBLE_EQ(q("1 mW", Dimension::power), 1e-3);
  EXPECT_THROW(q("5 furlongs", Dimension::rate), ConfigError);
}

TEST(RunConfigLoading, BundledConfigsLoad) {
  for (const char* name : {"tcenter_table1", "ercenter_table1", "tcenter_fig2b", "tcenter_fig2c", "tcenter_fig4",
                           "ercenter_fig4"}) {
    EXPECT_NO_THROW(load_run_config_file(transduce::testing::config_path(name))) << name;
  }
}

TEST(RunConfigLoading, OverridesApplyAndChangeTheHash) {
  const auto base = load_run_config(tcenter_text());
  const auto same = load_run_config(tcenter_text());
  EXPECT_EQ(base.config_hash, same.config_hash);
  EXPECT_EQ(base.config_hash.size(), 16u);
  const auto over = load_run_config(tcenter_text(), {"optical.kappa_ex=0.25 GHz"});
  EXPECT_NE(over.config_hash, base.config_hash);
  EXPECT_DOUBLE_EQ(over.device.optical.kappa_ex.hz(), 0.25e9);
  EXPECT_THROW(load_run_config(tcenter_text(), {"optical.nonsense=1"}), ConfigError);
  EXPECT_THROW(load_run_config(tcenter_text(), {"no_equals_sign"}), ConfigError);
}

TEST(RunConfigLoading, UnphysicalValuesAreDomainErrors) {
  EXPECT_THROW(load_run_config(tcenter_text(), {"centers.gamma13=-1 MHz"}), DomainError);
}

TEST(Tables, JsonRoundTripKeepsNonFinite) {
  Table t{"demo", {{"a", ColumnType::real, "Hz"}, {"b", ColumnType::integer, ""}, {"c", ColumnType::text, ""}}, {}};
  t.add_row({1.0 / 3.0, std::int64_t{7}, std::string("x")});
  t.add_row({std::numeric_limits<double>::infinity(), std::int64_t{-1}, std::string("")});
  t.add_row({std::numeric_limits<double>::quiet_NaN(), std::int64_t{0}, std::string("y,z")});
  const TableHeader h{tool_version(), kSchemaVersion, "0123456789abcdef", "sweep"};
  const auto back = table_from_json(to_json(t, h));
  EXPECT_TRUE(identical(t, back.table));
  EXPECT_EQ(back.header.config_hash, h.config_hash);
  EXPECT_EQ(back.header.schema_version, kSchemaVersion);
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
  EXPECT_THROW(t.add_row({std::int64_t{1}, std::int64_t{1}, std::string()}), std::invalid_argument);
}

TEST(Tables, UnsupportedSchemaIsRejected) {
  Table t{"demo", {{"a", ColumnType::real, ""}}, {}};
  std::string j = to_json(t, TableHeader{tool_version(), kSchemaVersion + 1, "h", "c"});
  EXPECT_THROW(table_from_json(j), std::runtime_error);
}

TEST(Tables, CsvHeaderLines) {
  Table t{"demo", {{"omega", ColumnType::real, "Hz"}, {"eta", ColumnType::real, ""}}, {}};
  t.add_row({0.1, -std::numeric_limits<double>::infinity()});
  const auto csv = to_csv(t, TableHeader{"9.9.9", kSchemaVersion, "abc", "sweep"});
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[0], "# tool_version=9.9.9");
  EXPECT_NE(csv.find("# schema_version=1\n"), std::string::npos);
  EXPECT_NE(csv.find("# config_hash=abc\n"), std::string::npos);
  EXPECT_NE(csv.find("\nomega,eta\n"), std::string::npos);
  EXPECT_EQ(lines.back(), "0.10000000000000001,-inf");
}

TEST(Run, ExitCodes) {
  const auto dir = scratch_dir("exit");
  std::ostringstream out, err;
  RunRequest r;
  r.command = "budget";
  r.out_dir = (dir / "o").string();
  r.threads = 1;

  std::ofstream(dir / "bad.cfg") << "[centers]\nn_a = \n";
  r.config_path = (dir / "bad.cfg").string();
  EXPECT_EQ(run(r, out, err), 2);
  EXPECT_NE(err.str().find("2:"), std::string::npos);

  r.config_path = transduce::testing::config_path("tcenter_table1");
  r.overrides = {"centers.gamma12=0 Hz"};
  EXPECT_EQ(run(r, out, err), 3);

  r.overrides.clear();
  r.config_path = (dir / "does_not_exist.cfg").string();
  EXPECT_EQ(run(r, out, err), 2);

  r.config_path = transduce::testing::config_path("tcenter_table1");
  EXPECT_EQ(run(r, out, err), 0);
  EXPECT_TRUE(fs::exists(dir / "o" / "budget.csv"));
  EXPECT_TRUE(fs::exists(dir / "o" / "budget.json"));
  EXPECT_TRUE(fs::exists(dir / "o" / "summary.txt"));
}

TEST(Run, OutputsAreReproducible) {
  const auto dir = scratch_dir("repro");
  std::ostringstream out, err;
  RunRequest r;
  r.command = "sweep";
  r.config_path = transduce::testing::config_path("tcenter_table1");
  r.overrides = {"sweep.omega_points=21", "sweep.delta_points=21"};
  r.out_dir = (dir / "a").string();
  r.threads = 1;
  ASSERT_EQ(run(r, out, err), 0) << err.str();
  r.out_dir = (dir / "b").string();
  r.threads = 4;
  ASSERT_EQ(run(r, out, err), 0) << err.str();
  EXPECT_EQ(read_file(dir / "a" / "sweep.json"), read_file(dir / "b" / "sweep.json"));
  EXPECT_EQ(read_file(dir / "a" / "sweep.csv"), read_file(dir / "b" / "sweep.csv"));
}

TEST(Execute, BudgetTableHasUnits) {
  const auto cfg = load_run_config(tcenter_text());
  RunRequest r;
  r.command = "budget";
  const auto res = execute(cfg, r);
  ASSERT_EQ(res.tables.size(), 1u);
  const auto& t = res.tables[0];
  ASSERT_EQ(t.columns.size(), 3u);
  EXPECT_EQ(t.columns[0].name, "item");
  bool found = false;
  for (const auto& row : t.rows) {
    if (std::get<std::string>(row[0]) == "omega_p_matching") {
      EXPECT_NEAR(std::get<double>(row[1]), 4e6, 1e-3);
      EXPECT_EQ(std::get<std::string>(row[2]), "Hz");
      found = true;
    }
  }
  EXPECT_TRUE(found);
}
