#include <cmath>
#include <limits>

#include "transduce/errors.hpp"
#include "transduce/explore.hpp"
#include "transduce/parallel.hpp"

namespace transduce {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(name, "must be finite and > 0");
}

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError(name, "must be finite and >= 0");
}

const CenterClass& representative(const EnsembleSpec& ensemble) {
  if (const auto* g = std::get_if<GaussianEnsembleSpec>(&ensemble)) return g->base;
  const auto& classes = std::get<std::vector<CenterClass>>(ensemble);
  if (classes.empty()) throw DomainError("ensemble", "design needs at least one center class");
  const auto& c0 = classes.front();
  for (const auto& c : classes) {
    if (c.g12 != c0.g12 || c.g13 != c0.g13 || c.omega_p != c0.omega_p)
      throw DomainError("ensemble", "design needs uniform couplings and pump across classes");
  }
  return c0;
}

const OperatingPoint kOrigin{Rate(0.0), Rate(0.0), 0.0};

}  // namespace

const char* to_string(DesignVariable v) {
  switch (v) {
    case DesignVariable::omega_p: return "omega_p";
    case DesignVariable::n_a: return "n_a";
    case DesignVariable::kappa_a_ex: return "kappa_a_ex";
    case DesignVariable::kappa_c_ex: return "kappa_c_ex";
  }
  return "?";
}

DesignVariable design_variable_from_string(const std::string& name) {
  if (name == "omega_p") return DesignVariable::omega_p;
  if (name == "n_a") return DesignVariable::n_a;
  if (name == "kappa_a_ex") return DesignVariable::kappa_a_ex;
  if (name == "kappa_c_ex") return DesignVariable::kappa_c_ex;
  throw ConfigError("unknown design variable '" + name + "' (expected omega_p, n_a, kappa_a_ex or kappa_c_ex)");
}

double solve_matched_design(DesignVariable variable, const DesignInputs& in) {
  require_positive(in.g12.hz(), "g12");
  require_positive(in.g13.hz(), "g13");
  require_nonnegative(in.kappa_a_in.hz(), "optical.kappa_in");
  require_nonnegative(in.kappa_c_in.hz(), "microwave.kappa_in");
  const double gg = in.g12.hz() * in.g13.hz();

  auto kappa_a = [&] {
    require_nonnegative(in.kappa_a_ex.hz(), "optical.kappa_ex");
    const double k = in.kappa_a_ex.hz() + in.kappa_a_in.hz();
    require_positive(k, "optical.kappa");
    return k;
  };
  auto kappa_c = [&] {
    require_nonnegative(in.kappa_c_ex.hz(), "microwave.kappa_ex");
    const double k = in.kappa_c_ex.hz() + in.kappa_c_in.hz();
    require_positive(k, "microwave.kappa");
    return k;
  };

  switch (variable) {
    case DesignVariable::omega_p:
      require_positive(in.n_a, "n_a");
      return 2.0 * in.n_a * gg / std::sqrt(kappa_a() * kappa_c());
    case DesignVariable::n_a:
      require_positive(in.omega_p.hz(), "omega_p");
      return in.omega_p.hz() * std::sqrt(kappa_a() * kappa_c()) / (2.0 * gg);
    case DesignVariable::kappa_a_ex: {
      require_positive(in.n_a, "n_a");
      require_positive(in.omega_p.hz(), "omega_p");
      const double r = 2.0 * in.n_a * gg / in.omega_p.hz();
      const double k = r * r / kappa_c() - in.kappa_a_in.hz();
      if (!(k > 0.0)) throw DomainError("design.kappa_a_ex", "no positive external coupling reaches matching");
      return k;
    }
    case DesignVariable::kappa_c_ex: {
      require_positive(in.n_a, "n_a");
      require_positive(in.omega_p.hz(), "omega_p");
      const double r = 2.0 * in.n_a * gg / in.omega_p.hz();
      const double k = r * r / kappa_a() - in.kappa_c_in.hz();
      if (!(k > 0.0)) throw DomainError("design.kappa_c_ex", "no positive external coupling reaches matching");
      return k;
    }
  }
  return 0.0;
}

DesignInputs with_design_value(DesignInputs in, DesignVariable variable, double value) {
  switch (variable) {
    case DesignVariable::omega_p: in.omega_p = Rate(value); break;
    case DesignVariable::n_a: in.n_a = value; break;
    case DesignVariable::kappa_a_ex: in.kappa_a_ex = Rate(value); break;
    case DesignVariable::kappa_c_ex: in.kappa_c_ex = Rate(value); break;
  }
  return in;
}

DesignInputs design_inputs(const System& system) {
  const auto& c = representative(system.ensemble);
  DesignInputs in;
  in.n_a = total_weight(system.ensemble);
  in.g12 = c.g12;
  in.g13 = c.g13;
  in.omega_p = c.omega_p;
  in.kappa_a_ex = system.optical.kappa_ex;
  in.kappa_a_in = system.optical.kappa_in;
  in.kappa_c_ex = system.microwave.kappa_ex;
  in.kappa_c_in = system.microwave.kappa_in + system.kappa_c_qp;
  return in;
}

System apply_design(System system, DesignVariable variable, double value) {
  switch (variable) {
    case DesignVariable::omega_p: system.ensemble = with_pump_rabi(system.ensemble, Rate(value)); break;
    case DesignVariable::n_a: system.ensemble = with_total_weight(system.ensemble, value); break;
    case DesignVariable::kappa_a_ex: system.optical.kappa_ex = Rate(value); break;
    case DesignVariable::kappa_c_ex: system.microwave.kappa_ex = Rate(value); break;
  }
  return system;
}

MatchedDesign solve_and_check(DesignVariable variable, const System& system) {
  MatchedDesign d;
  d.variable = variable;
  d.value = solve_matched_design(variable, design_inputs(system));
  d.exact_cooperativity = evaluate(apply_design(system, variable, d.value), kOrigin).cooperativity;
  d.within_tolerance = d.exact_cooperativity >= 0.95 && d.exact_cooperativity <= 1.05;
  return d;
}

std::optional<double> exact_matching_density(const System& system) {
  const auto unit = susceptibilities(with_total_weight(system.ensemble, 1.0), kOrigin);
  const double ka = system.optical.kappa_ex.hz() + system.optical.kappa_in.hz();
  const double kc = system.microwave.kappa_ex.hz() + system.microwave.kappa_in.hz() + system.kappa_c_qp.hz();
  require_positive(ka, "optical.kappa");
  require_positive(kc, "microwave.kappa");
  const double la = 2.0 * std::abs(unit.xi_a.imag());
  const double lc = 2.0 * std::abs(unit.xi_c.imag());
  // 4 N^2 |u_ac|^2 = (ka + N la)(kc + N lc)
  const double a = 4.0 * std::norm(unit.xi_ac) - la * lc;
  const double b = ka * lc + kc * la;
  const double c = ka * kc;
  if (!(a > 0.0)) return std::nullopt;
  const double n = (b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
  if (!std::isfinite(n) || !(n > 0.0)) return std::nullopt;
  return n;
}

std::vector<DensityPumpRow> density_pump_sweep(const Device& device, const std::vector<double>& n_p,
                                               const std::vector<double>& sigma13, int threads) {
  std::vector<DensityPumpRow> rows(n_p.size() * sigma13.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    auto& row = rows[k];
    row.sigma13 = sigma13[k / n_p.size()];
    row.n_p = n_p[k % n_p.size()];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
      Device dev = device;
      if (auto* g = std::get_if<GaussianEnsembleSpec>(&dev.ensemble)) {
        g->sigma13 = Rate(row.sigma13);
      } else if (row.sigma13 != 0.0) {
        throw DomainError("ensemble", "an explicit class list cannot take an optical broadening");
      }
      System sys = resolve_system(dev, row.n_p);
      row.omega_p = representative(sys.ensemble).omega_p.hz();
      row.kappa_c_qp = sys.kappa_c_qp.hz();
      row.n_a_strong_pump = solve_matched_design(DesignVariable::n_a, design_inputs(sys));
      const auto n = exact_matching_density(sys);
      if (!n) throw DomainError("design.n_a", "no density reaches matching at this pump");
      row.n_a = *n;
      row.rho = row.n_a / (dev.geometry.v_optical * 1e-12);
      sys.ensemble = with_total_weight(sys.ensemble, row.n_a);
      const auto r = evaluate(sys, kOrigin);
      row.cooperativity = r.cooperativity;
      row.eta_total = r.eta_total;
      row.eta_internal = r.eta_internal;
      row.eta_a = r.eta_a;
      row.eta_c = r.eta_c;
      row.n_mo = r.n_mo;
      row.n_om = r.n_om;
    } catch (const std::exception& e) {
      row.n_a = row.rho = row.cooperativity = row.eta_total = row.eta_internal = nan;
      row.eta_a = row.eta_c = row.n_mo = row.n_om = nan;
      row.error = e.what();
    }
  });
  return rows;
}

EnhancementReport enhancement_report(const CenterClass& c, double multiple) {
  validate(c);
  require_positive(c.weight, "n_a");
  require_positive(c.omega_p.hz(), "omega_p");
  require_positive(multiple, "detuning_multiple");
  EnhancementReport r;
  const double om2 = c.omega_p.hz() * c.omega_p.hz();
  r.coupling_ratio = c.g12.hz() * c.g13.hz() * c.weight / om2;
  r.perturbative_factor = (r.coupling_ratio - 1.0) * (r.coupling_ratio - 1.0);
  r.detuning_multiple = multiple;
  const double root_n = std::sqrt(c.weight);
  const auto d13 = complex_detuning(Rate(multiple * c.g13.hz() * root_n), c.gamma13);
  const auto d12 = complex_detuning(Rate(multiple * c.g12.hz() * root_n), c.gamma12);
  const auto r13 = complex_detuning(Rate(0.0), c.gamma13);
  const auto r12 = complex_detuning(Rate(0.0), c.gamma12);
  r.detuned_ratio = std::norm(d13 * d12 - om2) / std::norm(r13 * r12 - om2);
  return r;
}

}  // namespace transduce
