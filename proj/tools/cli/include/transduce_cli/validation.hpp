#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "transduce/oracle.hpp"
#include "transduce/response.hpp"

namespace transduce::cli {

struct OracleCheck {
  std::string label;
  DrivePort port = DrivePort::microwave;
  double omega = 0.0;
  double delta = 0.0;
  std::size_t classes = 0;
  double eta_closed = 0.0;
  double eta_oracle = 0.0;
  double deviation = 0.0;  // relative; 0 when both are 0
  double rcond = 0.0;
};

double relative_deviation(double a, double b);

/// Closed-form efficiency against the steady-state linear solve for one
/// class list, operating point and drive port.
OracleCheck check_oracle(std::span<const CenterClass> classes, ModeLoss optical, ModeLoss microwave,
                         const OperatingPoint& point, DrivePort port, std::string label);

/// A random but physically shaped problem: 1..max_classes classes with
/// log-uniform couplings, linewidths, densities and pump, cavity losses
/// spanning several decades, and an operating point within a few linewidths.
struct RandomDraw {
  std::vector<CenterClass> classes;
  ModeLoss optical;
  ModeLoss microwave;
  OperatingPoint point;
};
RandomDraw random_draw(std::mt19937_64& rng, std::size_t max_classes);

/// Classes used to validate a configured ensemble: Gaussian ensembles are
/// product-discretized with the largest per-axis order that keeps the count
/// within `max_classes` (and at most `max_nodes_per_axis`).
std::vector<CenterClass> validation_classes(const EnsembleSpec& ensemble, std::size_t max_classes,
                                            int max_nodes_per_axis);

/// Operating points probed on a configured system: the origin plus points a
/// fraction of a linewidth to a few linewidths away on both axes.
std::vector<OperatingPoint> validation_points(const System& system);

}  // namespace transduce::cli
