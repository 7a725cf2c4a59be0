#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "transduce/model.hpp"

namespace transduce {

/// How a Gaussian ensemble is averaged.
///
/// `product` is a nodes13 x nodes12 Gauss-Hermite product rule; every node is
/// an ordinary CenterClass. `hermite_voigt` uses Gauss-Hermite nodes along
/// the optical detuning only and averages the spin detuning in closed form
/// (the Gaussian average of the spin-axis resolvent is a Faddeeva function).
/// The closed form matters when the pump-dressed pole ridge
/// delta13*delta12 ~ omega_p^2 falls inside the distribution: the ridge is
/// only gamma12 wide and a product rule cannot resolve it.
enum class QuadratureRule { product, hermite_voigt };

const char* to_string(QuadratureRule rule);
QuadratureRule quadrature_rule_from_string(const std::string& name);

/// Two-dimensional uncorrelated Gaussian inhomogeneous broadening over
/// (delta13, delta12). The detunings of `base` are ignored; its couplings,
/// linewidths and pump Rabi frequency are shared by every node.
struct GaussianEnsembleSpec {
  Rate mean13;
  Rate mean12;
  Rate sigma13;
  Rate sigma12;
  double n_total = 1.0;
  CenterClass base;
  int nodes13 = 32;
  int nodes12 = 32;
  QuadratureRule rule = QuadratureRule::hermite_voigt;
};

void validate(const GaussianEnsembleSpec& spec);

/// Explicit class list or a Gaussian distribution.
using EnsembleSpec = std::variant<std::vector<CenterClass>, GaussianEnsembleSpec>;

/// Product Gauss-Hermite discretization. A zero-width axis collapses to a
/// single node at its mean. Weights sum to n_total; classes are emitted in
/// mirror pairs (node k followed by its reflection through the means).
std::vector<CenterClass> discretize(const GaussianEnsembleSpec& spec);

/// Ensemble average with the spec's quadrature rule.
SusceptibilityTriplet ensemble_susceptibilities(const GaussianEnsembleSpec& spec, const OperatingPoint& point);

SusceptibilityTriplet susceptibilities(const EnsembleSpec& ensemble, const OperatingPoint& point);

double total_weight(const EnsembleSpec& ensemble);
EnsembleSpec with_total_weight(const EnsembleSpec& ensemble, double n_total);
EnsembleSpec with_pump_rabi(const EnsembleSpec& ensemble, Rate omega_p);

/// Classes suitable for the dense oracle. Gaussian specs are discretized
/// with a product rule whose per-axis order is capped at `max_nodes_per_axis`.
std::vector<CenterClass> explicit_classes(const EnsembleSpec& ensemble, int max_nodes_per_axis);

struct MonteCarloEstimate {
  SusceptibilityTriplet mean;
  /// Standard errors of the real and imaginary parts, packed as re + i*im.
  SusceptibilityTriplet standard_error;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Plain Monte Carlo average of the single-class response over the Gaussian
/// detuning distribution, scaled by n_total. Normal deviates come from
/// Box-Muller on std::mt19937_64 with 53-bit uniforms, so runs are
/// reproducible for a given seed on any platform.
MonteCarloEstimate monte_carlo_susceptibilities(const GaussianEnsembleSpec& spec, const OperatingPoint& point,
                                                std::size_t samples, std::uint64_t seed);

struct ConvergenceReport {
  bool converged = false;
  int nodes = 0;            // order at which order n and 2n agreed
  double last_change = 0.0;
  std::vector<std::pair<int, double>> history;  // (n, max relative change n -> 2n)
  std::string diagnostics;
};

/// Doubles the quadrature order from 1 until every susceptibility changes by
/// less than `tolerance` (relative) between orders n and 2n.
ConvergenceReport convergence_check(const GaussianEnsembleSpec& spec, const OperatingPoint& point, double tolerance,
                                    int max_nodes = 512);

}  // namespace transduce
