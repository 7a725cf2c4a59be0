#include "transduce_cli/validation.hpp"

#include <algorithm>
#include <cmath>

namespace transduce::cli {

double relative_deviation(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m > 0.0 ? std::abs(a - b) / m : 0.0;
}

OracleCheck check_oracle(std::span<const CenterClass> classes, ModeLoss optical, ModeLoss microwave,
                         const OperatingPoint& point, DrivePort port, std::string label) {
  OracleCheck out;
  out.label = std::move(label);
  out.port = port;
  out.omega = point.omega.hz();
  out.delta = point.delta.hz();
  out.classes = classes.size();
  out.eta_closed = efficiency(susceptibilities(classes, point), optical, microwave, point);
  const LinearSystem sys = assemble_linear_system(classes, optical, microwave, point, port);
  const SteadyState ss = solve_steady_state(sys, optical, microwave);
  out.eta_oracle = ss.efficiency;
  out.rcond = ss.rcond;
  out.deviation = relative_deviation(out.eta_closed, out.eta_oracle);
  return out;
}

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

RandomDraw random_draw(std::mt19937_64& rng, std::size_t max_classes) {
  RandomDraw d;
  const auto k = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(max_classes, 1))(rng);
  const double n_total = log_uniform(rng, 1e4, 1e10);
  for (std::size_t i = 0; i < k; ++i) {
    CenterClass c;
    c.g13 = Rate(log_uniform(rng, 1.0, 1e4));
    c.g12 = Rate(log_uniform(rng, 0.01, 10.0));
    c.gamma13 = Rate(log_uniform(rng, 1e4, 1e9));
    c.gamma12 = Rate(log_uniform(rng, 1e2, 1e6));
    c.delta13 = Rate(uniform(rng, -1e9, 1e9));
    c.delta12 = Rate(uniform(rng, -1e6, 1e6));
    c.omega_p = Rate(log_uniform(rng, 1e4, 1e8));
    c.weight = n_total / static_cast<double>(k) * log_uniform(rng, 0.1, 10.0);
    d.classes.push_back(c);
  }
  const Rate ka_ex(log_uniform(rng, 1e7, 1e10));
  const Rate kc_ex(log_uniform(rng, 1e3, 1e7));
  d.optical = {ka_ex, ka_ex + Rate(log_uniform(rng, 1e5, 1e9))};
  d.microwave = {kc_ex, kc_ex + Rate(log_uniform(rng, 1e2, 1e6))};
  d.point.omega = Rate(uniform(rng, -2.0, 2.0) * d.microwave.total.hz());
  d.point.delta = Rate(uniform(rng, -2.0, 2.0) * d.optical.total.hz());
  return d;
}

std::vector<CenterClass> validation_classes(const EnsembleSpec& ensemble, std::size_t max_classes,
                                            int max_nodes_per_axis) {
  if (std::holds_alternative<GaussianEnsembleSpec>(ensemble)) {
    for (int n = std::max(max_nodes_per_axis, 1); n > 1; --n) {
      auto classes = explicit_classes(ensemble, n);
      if (classes.size() <= max_classes) return classes;
    }
    return explicit_classes(ensemble, 1);
  }
  return std::get<std::vector<CenterClass>>(ensemble);
}

std::vector<OperatingPoint> validation_points(const System& system) {
  const double ka = (system.optical.kappa_ex + system.optical.kappa_in).hz();
  const double kc = (system.microwave.kappa_ex + system.microwave.kappa_in + system.kappa_c_qp).hz();
  return {
      {Rate(0.0), Rate(0.0)},
      {Rate(0.5 * kc), Rate(0.0)},
      {Rate(0.0), Rate(0.5 * ka)},
      {Rate(-0.7 * kc), Rate(1.3 * ka)},
      {Rate(3.0 * kc), Rate(-2.0 * ka)},
  };
}

}  // namespace transduce::cli
