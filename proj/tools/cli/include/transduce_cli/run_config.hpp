#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "transduce/budget.hpp"
#include "transduce/explore.hpp"
#include "transduce_cli/config.hpp"

namespace transduce::cli {

struct SweepTask {
  Axis omega{-2.0e5, 2.0e5, 201};
  Axis delta{-5.0e9, 5.0e9, 201};
};

struct ContourTask {
  ContourWindow window{-4.0e6, 4.0e6, -2.0e11, 2.0e11, 2.0e3, 2.0e7, 801, 801};
  ContourOptions options;
};

struct OptimizeTask {
  OptimizeWindow window{-2.0e5, 2.0e5, -5.0e9, 5.0e9, 41, 41};
  OptimizeOptions options;
};

struct DesignTask {
  std::optional<DesignVariable> solve;
  std::vector<double> n_p;
  std::vector<double> sigma13;  // Hz
};

struct ValidateTask {
  std::size_t draws = 1000;
  std::size_t max_classes = 32;
  int max_nodes_per_axis = 8;
  bool ring_up = false;
  double ring_up_rtol = 1e-9;
};

struct OutputSpec {
  std::string dir = "out";
  bool images = true;
  bool csv = true;
  bool json = true;
};

struct RunConfig {
  std::string title;
  std::string reference;
  std::string config_hash;

  Device device;
  double n_p = 0.0;

  SweepTask sweep;
  ContourTask contours;
  OptimizeTask optimize;
  DesignTask design;
  ValidateTask validate;
  OutputSpec output;
};

/// Builds a run configuration from config text plus `section.key=value`
/// overrides. Unknown sections or keys, missing units and malformed values
/// raise ConfigError with the source line and column; unphysical values
/// raise DomainError naming the field.
RunConfig load_run_config(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig load_run_config_file(const std::string& path, const std::vector<std::string>& overrides = {});

/// The device resolved at the configured pump photon number.
System configured_system(const RunConfig& config);

}  // namespace transduce::cli
