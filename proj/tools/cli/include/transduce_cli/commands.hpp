#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transduce_cli/image.hpp"
#include "transduce_cli/run_config.hpp"
#include "transduce_cli/table.hpp"

namespace transduce::cli {

inline constexpr const char* kThreadsEnv = "TRANSDUCE_THREADS";
inline constexpr std::uint64_t kDefaultSeed = 20240611;

const std::vector<std::string>& command_names();

struct RunRequest {
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> out_dir;
  int threads = 0;  // 0 = TRANSDUCE_THREADS or hardware concurrency
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> solve;  // design only
  bool scan = false;                 // design only
};

struct CommandResult {
  std::vector<Table> tables;
  std::vector<std::pair<std::string, Raster>> images;  // base file name, raster
  std::string summary;
  bool passed = true;  // false makes run() exit 1 after writing artifacts
};

/// Runs one command on a loaded configuration without touching the disk.
CommandResult execute(const RunConfig& config, const RunRequest& request);

/// Loads the config, executes, writes `<table>.csv`, `<table>.json`,
/// images and summary.txt into the output directory, and prints the summary.
/// Exit status: 0 success, 1 failure, 2 parse error, 3 domain error.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Far-field readings of the traced dispersion contours: the microwave
/// branch omega at the two delta edges and the optical branch omega + delta
/// at the two omega edges, one value per branch sign.
struct AsymptoteReading {
  std::string family;  // "microwave" or "optical"
  std::string edge;    // "delta_min", "delta_max", "omega_min", "omega_max"
  double value = 0.0;  // omega (microwave) or omega + delta (optical), Hz
};
std::vector<AsymptoteReading> asymptote_readings(const ContourSet& set, const ContourWindow& window,
                                                 double edge_fraction = 0.98);

}  // namespace transduce::cli
