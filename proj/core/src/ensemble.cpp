#include "transduce/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "transduce/errors.hpp"
#include "transduce/numeric.hpp"
#include "transduce/special_functions.hpp"

namespace transduce {

const char* to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::product: return "product";
    case QuadratureRule::hermite_voigt: return "hermite_voigt";
  }
  return "?";
}

QuadratureRule quadrature_rule_from_string(const std::string& name) {
  if (name == "product") return QuadratureRule::product;
  if (name == "hermite_voigt") return QuadratureRule::hermite_voigt;
  throw ConfigError("unknown quadrature rule '" + name + "' (expected product or hermite_voigt)");
}

void validate(const GaussianEnsembleSpec& spec) {
  validate(spec.base);
  if (!std::isfinite(spec.mean13.hz())) throw DomainError("mean13", "must be finite");
  if (!std::isfinite(spec.mean12.hz())) throw DomainError("mean12", "must be finite");
  if (!std::isfinite(spec.sigma13.hz()) || spec.sigma13.hz() < 0.0) throw DomainError("sigma13", "must be >= 0");
  if (!std::isfinite(spec.sigma12.hz()) || spec.sigma12.hz() < 0.0) throw DomainError("sigma12", "must be >= 0");
  if (!std::isfinite(spec.n_total) || spec.n_total <= 0.0) throw DomainError("n_total", "must be > 0");
  if (spec.nodes13 < 1) throw DomainError("nodes13", "must be >= 1");
  if (spec.nodes12 < 1) throw DomainError("nodes12", "must be >= 1");
}

namespace {

/// Nodes (as detunings) and probability weights for one Gaussian axis.
struct AxisRule {
  std::vector<double> detunings;
  std::vector<double> weights;
};

AxisRule axis_rule(Rate mean, Rate sigma, int n) {
  if (sigma.hz() == 0.0) return {{mean.hz()}, {1.0}};
  const auto gh = gauss_hermite(n);
  AxisRule r;
  r.detunings.resize(n);
  r.weights.resize(n);
  CompensatedSum total;
  for (int i = 0; i < n; ++i) {
    r.detunings[i] = mean.hz() + std::numbers::sqrt2 * sigma.hz() * gh.nodes[i];
    total.add(gh.weights[i]);
  }
  const double norm = total.value();
  for (int i = 0; i < n; ++i) r.weights[i] = gh.weights[i] / norm;
  return r;
}

/// Sum over the spin detuning in closed form for a fixed optical detuning.
SusceptibilityTriplet spin_averaged(const CenterClass& base, double delta13, Rate mean12, Rate sigma12,
                                    const OperatingPoint& point) {
  const double w = point.omega.hz();
  const double d = point.delta.hz();
  const std::complex<double> optical = (w + d) - complex_detuning(Rate(delta13), base.gamma13);
  const double om = base.omega_p.hz();
  const std::complex<double> shift = om * om / optical;
  const std::complex<double> z = std::complex<double>(w, 0.5 * base.gamma12.hz()) - shift;
  const std::complex<double> resolvent =
      sigma12.hz() > 0.0 ? gaussian_resolvent(z, mean12.hz(), sigma12.hz()) : 1.0 / (z - mean12.hz());

  const double g13 = base.g13.hz();
  const double g12 = base.g12.hz();
  return {g13 * g13 * (1.0 + shift * resolvent) / optical,
          g12 * g12 * resolvent,
          g12 * g13 * om * resolvent / optical};
}

SusceptibilityTriplet hermite_voigt(const GaussianEnsembleSpec& spec, const OperatingPoint& point) {
  const auto axis = axis_rule(spec.mean13, spec.sigma13, spec.nodes13);
  const std::size_t n = axis.detunings.size();
  CompensatedComplexSum a, c, ac;
  auto accumulate = [&](std::size_t i) {
    const auto t = spin_averaged(spec.base, axis.detunings[i], spec.mean12, spec.sigma12, point);
    const double wt = axis.weights[i] * spec.n_total;
    a.add(wt * t.xi_a);
    c.add(wt * t.xi_c);
    ac.add(wt * t.xi_ac);
  };
  // mirror pairs, outermost first
  for (std::size_t i = 0; i < n / 2; ++i) {
    accumulate(i);
    accumulate(n - 1 - i);
  }
  if (n % 2 == 1) accumulate(n / 2);
  return {a.value(), c.value(), ac.value()};
}

}  // namespace

std::vector<CenterClass> discretize(const GaussianEnsembleSpec& spec) {
  validate(spec);
  const auto r13 = axis_rule(spec.mean13, spec.sigma13, spec.nodes13);
  const auto r12 = axis_rule(spec.mean12, spec.sigma12, spec.nodes12);
  const std::size_t n13 = r13.detunings.size();
  const std::size_t n12 = r12.detunings.size();
  const std::size_t total = n13 * n12;

  CompensatedSum norm;
  for (std::size_t i = 0; i < n13; ++i)
    for (std::size_t j = 0; j < n12; ++j) norm.add(r13.weights[i] * r12.weights[j]);
  const double scale = spec.n_total / norm.value();

  auto make = [&](std::size_t flat) {
    const std::size_t i = flat / n12;
    const std::size_t j = flat % n12;
    CenterClass c = spec.base;
    c.delta13 = Rate(r13.detunings[i]);
    c.delta12 = Rate(r12.detunings[j]);
    c.weight = r13.weights[i] * r12.weights[j] * scale;
    return c;
  };

  std::vector<CenterClass> classes;
  classes.reserve(total);
  // flat index k mirrors to total-1-k for symmetric rules
  for (std::size_t k = 0; k < total / 2; ++k) {
    classes.push_back(make(k));
    classes.push_back(make(total - 1 - k));
  }
  if (total % 2 == 1) classes.push_back(make(total / 2));
  return classes;
}

SusceptibilityTriplet ensemble_susceptibilities(const GaussianEnsembleSpec& spec, const OperatingPoint& point) {
  validate(spec);
  if (spec.rule == QuadratureRule::product) {
    const auto classes = discretize(spec);
    return susceptibilities(classes, point);
  }
  return hermite_voigt(spec, point);
}

SusceptibilityTriplet susceptibilities(const EnsembleSpec& ensemble, const OperatingPoint& point) {
  return std::visit(
      [&](const auto& e) -> SusceptibilityTriplet {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, GaussianEnsembleSpec>) {
          return ensemble_susceptibilities(e, point);
        } else {
          return susceptibilities(std::span<const CenterClass>(e), point);
        }
      },
      ensemble);
}

double total_weight(const EnsembleSpec& ensemble) {
  if (const auto* g = std::get_if<GaussianEnsembleSpec>(&ensemble)) return g->n_total;
  CompensatedSum s;
  for (const auto& c : std::get<std::vector<CenterClass>>(ensemble)) s.add(c.weight);
  return s.value();
}

EnsembleSpec with_total_weight(const EnsembleSpec& ensemble, double n_total) {
  if (!std::isfinite(n_total) || n_total < 0.0) throw DomainError("n_total", "must be finite and >= 0");
  if (const auto* g = std::get_if<GaussianEnsembleSpec>(&ensemble)) {
    auto copy = *g;
    copy.n_total = n_total;
    return copy;
  }
  auto classes = std::get<std::vector<CenterClass>>(ensemble);
  const double current = total_weight(ensemble);
  if (current <= 0.0) throw DomainError("n_total", "cannot rescale an ensemble with zero weight");
  for (auto& c : classes) c.weight *= n_total / current;
  return classes;
}

EnsembleSpec with_pump_rabi(const EnsembleSpec& ensemble, Rate omega_p) {
  if (const auto* g = std::get_if<GaussianEnsembleSpec>(&ensemble)) {
    auto copy = *g;
    copy.base.omega_p = omega_p;
    return copy;
  }
  auto classes = std::get<std::vector<CenterClass>>(ensemble);
  for (auto& c : classes) c.omega_p = omega_p;
  return classes;
}

std::vector<CenterClass> explicit_classes(const EnsembleSpec& ensemble, int max_nodes_per_axis) {
  if (const auto* g = std::get_if<GaussianEnsembleSpec>(&ensemble)) {
    auto copy = *g;
    copy.nodes13 = std::min(copy.nodes13, max_nodes_per_axis);
    copy.nodes12 = std::min(copy.nodes12, max_nodes_per_axis);
    return discretize(copy);
  }
  return std::get<std::vector<CenterClass>>(ensemble);
}

namespace {

class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Running mean/variance of one real component (Welford).
struct Moments {
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double standard_error() const {
    return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  }
};

}  // namespace

MonteCarloEstimate monte_carlo_susceptibilities(const GaussianEnsembleSpec& spec, const OperatingPoint& point,
                                                std::size_t samples, std::uint64_t seed) {
  validate(spec);
  if (samples < 2) throw DomainError("samples", "need at least 2 samples");
  NormalSource normal(seed);
  Moments m[6];
  CenterClass c = spec.base;
  c.weight = spec.n_total;
  for (std::size_t s = 0; s < samples; ++s) {
    c.delta13 = Rate(spec.mean13.hz() + spec.sigma13.hz() * normal.next());
    c.delta12 = Rate(spec.mean12.hz() + spec.sigma12.hz() * normal.next());
    const auto t = class_susceptibility(c, point);
    m[0].add(t.xi_a.real());
    m[1].add(t.xi_a.imag());
    m[2].add(t.xi_c.real());
    m[3].add(t.xi_c.imag());
    m[4].add(t.xi_ac.real());
    m[5].add(t.xi_ac.imag());
  }
  MonteCarloEstimate est;
  est.mean = {{m[0].mean, m[1].mean}, {m[2].mean, m[3].mean}, {m[4].mean, m[5].mean}};
  est.standard_error = {{m[0].standard_error(), m[1].standard_error()},
                        {m[2].standard_error(), m[3].standard_error()},
                        {m[4].standard_error(), m[5].standard_error()}};
  est.samples = samples;
  est.seed = seed;
  return est;
}

ConvergenceReport convergence_check(const GaussianEnsembleSpec& spec, const OperatingPoint& point, double tolerance,
                                    int max_nodes) {
  validate(spec);
  if (!(tolerance > 0.0)) throw DomainError("tolerance", "must be > 0");
  if (max_nodes < 1) throw DomainError("max_nodes", "must be >= 1");

  auto at_order = [&](int n) {
    auto s = spec;
    s.nodes13 = n;
    s.nodes12 = n;
    return ensemble_susceptibilities(s, point);
  };

  ConvergenceReport report;
  SusceptibilityTriplet previous = at_order(1);
  for (int n = 1; 2 * n <= max_nodes; n *= 2) {
    const SusceptibilityTriplet next = at_order(2 * n);
    const double change = std::max({relative_difference(previous.xi_a, next.xi_a),
                                     relative_difference(previous.xi_c, next.xi_c),
                                     relative_difference(previous.xi_ac, next.xi_ac)});
    report.history.emplace_back(n, change);
    report.last_change = change;
    if (change < tolerance) {
      report.converged = true;
      report.nodes = n;
      return report;
    }
    previous = next;
  }
  std::ostringstream msg;
  msg << "no convergence to " << tolerance << " up to " << max_nodes << " nodes per axis (" << to_string(spec.rule)
      << "); last relative change " << report.last_change;
  report.diagnostics = msg.str();
  report.nodes = max_nodes;
  return report;
}

}  // namespace transduce
