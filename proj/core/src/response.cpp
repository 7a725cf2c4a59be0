#include "transduce/response.hpp"

#include <cmath>
#include <limits>

#include "transduce/constants.hpp"
#include "transduce/errors.hpp"

namespace transduce {

namespace {

void require_mode_loss(ModeLoss m, const char* name) {
  const std::string n(name);
  if (!std::isfinite(m.external.hz()) || m.external.hz() < 0.0) throw DomainError(n + ".kappa_ex", "must be >= 0");
  if (!std::isfinite(m.total.hz()) || m.total < m.external)
    throw DomainError(n + ".kappa", "total loss must be >= external coupling");
}

}  // namespace

double efficiency(const SusceptibilityTriplet& xi, ModeLoss optical, ModeLoss microwave, const OperatingPoint& point) {
  require_mode_loss(optical, "optical");
  require_mode_loss(microwave, "microwave");
  const std::complex<double> i(0.0, 1.0);
  const double w = point.omega.hz();
  const double d = point.delta.hz();
  const std::complex<double> pa = 0.5 * optical.total.hz() - i * (w + d - xi.xi_a);
  const std::complex<double> pc = 0.5 * microwave.total.hz() - i * (w - xi.xi_c);
  const std::complex<double> denom = xi.xi_ac * xi.xi_ac + pa * pc;
  const double num = optical.external.hz() * microwave.external.hz() * std::norm(xi.xi_ac);
  if (num == 0.0) return 0.0;
  const double den = std::norm(denom);
  if (!(den > 0.0)) throw DomainError("efficiency", "vanishing denominator (unphysical losses)");
  return num / den;
}

double cooperativity(std::complex<double> xi_ac, Rate kappa_a, Rate kappa_c) {
  if (!(kappa_a.hz() > 0.0)) throw DomainError("kappa_a", "must be > 0");
  if (!(kappa_c.hz() > 0.0)) throw DomainError("kappa_c", "must be > 0");
  return 4.0 * std::norm(xi_ac) / (kappa_a.hz() * kappa_c.hz());
}

EfficiencyDecomposition efficiency_decomposition(double c, Rate kappa_a_ex, Rate kappa_a, Rate kappa_c_ex,
                                                 Rate kappa_c) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("cooperativity", "must be finite and >= 0");
  if (!(kappa_a.hz() > 0.0)) throw DomainError("kappa_a", "must be > 0");
  if (!(kappa_c.hz() > 0.0)) throw DomainError("kappa_c", "must be > 0");
  if (kappa_a_ex.hz() < 0.0 || kappa_a_ex > kappa_a) throw DomainError("kappa_a_ex", "must lie in [0, kappa_a]");
  if (kappa_c_ex.hz() < 0.0 || kappa_c_ex > kappa_c) throw DomainError("kappa_c_ex", "must lie in [0, kappa_c]");
  EfficiencyDecomposition e;
  e.internal = 4.0 * c / ((c + 1.0) * (c + 1.0));
  e.optical = kappa_a_ex / kappa_a;
  e.microwave = kappa_c_ex / kappa_c;
  e.total = e.internal * e.optical * e.microwave;
  return e;
}

AddedNoise added_noise(const SusceptibilityTriplet& xi, ModeLoss optical, Rate kappa_c_ex, Rate kappa_c_in,
                       const OperatingPoint& point, double n_th) {
  require_mode_loss(optical, "optical");
  if (!std::isfinite(n_th) || n_th < 0.0) throw DomainError("n_th", "must be finite and >= 0");
  if (!(kappa_c_ex.hz() > 0.0)) throw DomainError("microwave.kappa_ex", "must be > 0");
  if (!(optical.external.hz() > 0.0)) throw DomainError("optical.kappa_ex", "must be > 0");
  if (!std::isfinite(kappa_c_in.hz()) || kappa_c_in.hz() < 0.0)
    throw DomainError("microwave.kappa_in", "must be finite and >= 0");

  AddedNoise out;
  const double source = kappa_c_in.hz() * n_th;
  out.n_mo = source / kappa_c_ex.hz();
  if (source == 0.0) {
    out.n_om = 0.0;
    return out;
  }
  const double coupling = std::norm(xi.xi_ac);
  if (coupling == 0.0) {
    out.n_om = std::numeric_limits<double>::infinity();
    return out;
  }
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> pa =
      0.5 * optical.total.hz() - i * (point.omega.hz() + point.delta.hz() - xi.xi_a);
  out.n_om = std::norm(pa) / coupling * source / optical.external.hz();
  return out;
}

Rate matching_pump_rabi(double n_a, Rate g12, Rate g13, Rate kappa_a, Rate kappa_c) {
  if (!(n_a > 0.0)) throw DomainError("n_a", "must be > 0");
  if (!(g12.hz() > 0.0)) throw DomainError("g12", "must be > 0");
  if (!(g13.hz() > 0.0)) throw DomainError("g13", "must be > 0");
  if (!(kappa_a.hz() > 0.0)) throw DomainError("kappa_a", "must be > 0");
  if (!(kappa_c.hz() > 0.0)) throw DomainError("kappa_c", "must be > 0");
  return Rate(2.0 * n_a * g12.hz() * g13.hz() / std::sqrt(kappa_a.hz() * kappa_c.hz()));
}

double thermal_occupation(double frequency_hz, double temperature_k) {
  if (!(temperature_k > 0.0) || !std::isfinite(temperature_k)) throw DomainError("temperature", "must be > 0");
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) throw DomainError("frequency", "must be > 0");
  const double x = constants::planck * frequency_hz / (constants::boltzmann * temperature_k);
  return 1.0 / std::expm1(x);
}

LossBudget itemize_losses(const CavityMode& optical, const CavityMode& microwave, Rate kappa_c_qp,
                          const SusceptibilityTriplet& xi) {
  validate(optical, "optical");
  validate(microwave, "microwave");
  if (!std::isfinite(kappa_c_qp.hz()) || kappa_c_qp.hz() < 0.0) throw DomainError("kappa_c_qp", "must be >= 0");
  LossBudget b;
  b.kappa_a_ex = optical.kappa_ex;
  b.kappa_a_in = optical.kappa_in;
  b.kappa_a_center = Rate(2.0 * std::abs(xi.xi_a.imag()));
  b.kappa_a_total = b.kappa_a_ex + b.kappa_a_in + b.kappa_a_center;
  b.kappa_c_ex = microwave.kappa_ex;
  b.kappa_c_in = microwave.kappa_in;
  b.kappa_c_center = Rate(2.0 * std::abs(xi.xi_c.imag()));
  b.kappa_c_qp = kappa_c_qp;
  b.kappa_c_total = b.kappa_c_ex + b.kappa_c_in + b.kappa_c_qp + b.kappa_c_center;
  return b;
}

ResponseReport report_from(const SusceptibilityTriplet& xi, const System& system, const OperatingPoint& point) {
  ResponseReport r;
  r.xi = xi;
  r.budget = itemize_losses(system.optical, system.microwave, system.kappa_c_qp, xi);
  const auto& b = r.budget;

  const ModeLoss optical{b.kappa_a_ex, b.kappa_a_ex + b.kappa_a_in};
  const ModeLoss microwave{b.kappa_c_ex, b.kappa_c_ex + b.kappa_c_in + b.kappa_c_qp};
  r.eta_total = efficiency(xi, optical, microwave, point);

  r.cooperativity = cooperativity(xi.xi_ac, b.kappa_a_total, b.kappa_c_total);
  const auto dec =
      efficiency_decomposition(r.cooperativity, b.kappa_a_ex, b.kappa_a_total, b.kappa_c_ex, b.kappa_c_total);
  r.eta_internal = dec.internal;
  r.eta_a = dec.optical;
  r.eta_c = dec.microwave;

  const auto noise = added_noise(xi, optical, b.kappa_c_ex, b.microwave_intrinsic(), point, system.n_th);
  r.n_mo = noise.n_mo;
  r.n_om = noise.n_om;
  return r;
}

ResponseReport evaluate(const System& system, const OperatingPoint& point) {
  return report_from(susceptibilities(system.ensemble, point), system, point);
}

}  // namespace transduce
