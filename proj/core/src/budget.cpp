#include "transduce/budget.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "transduce/constants.hpp"
#include "transduce/errors.hpp"

namespace transduce {

namespace {

constexpr double kCubicMicron = 1.0e-18;  // m^3
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(name, "must be finite and > 0");
}

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError(name, "must be finite and >= 0");
}

void require_fraction(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) throw DomainError(name, "must lie in [0, 1]");
}

// sqrt(omega F / (hbar eps0 eps_r V)) for an electric dipole, in rad/s per (C m).
double electric_field_factor(double f, double fill, const GeometrySpec& g) {
  return std::sqrt(kTwoPi * f * fill /
                   (constants::hbar * constants::vacuum_permittivity * g.eps_r * g.v_optical * kCubicMicron));
}

double magnetic_field_factor(double f, double fill, const GeometrySpec& g) {
  return std::sqrt(kTwoPi * f * fill * constants::vacuum_permeability /
                   (constants::hbar * g.v_microwave * kCubicMicron));
}

}  // namespace

void validate(const GeometrySpec& g) {
  require_positive(g.v_optical, "geometry.v_optical");
  require_positive(g.v_microwave, "geometry.v_microwave");
  require_fraction(g.fill_a, "geometry.fill_a");
  require_fraction(g.fill_b, "geometry.fill_b");
  require_fraction(g.fill_c, "geometry.fill_c");
  require_nonnegative(g.d_om, "geometry.d_om");
  require_positive(g.eps_r, "geometry.eps_r");
}

CouplingRates coupling_from_dipole(const DipoleSpec& d, const GeometrySpec& geometry, double f_optical,
                                   double f_microwave) {
  validate(geometry);
  require_nonnegative(d.d13, "dipoles.d13");
  require_nonnegative(d.mu12, "dipoles.mu12");
  require_positive(f_optical, "optical.frequency");
  require_positive(f_microwave, "microwave.frequency");
  CouplingRates r;
  r.g13 = Rate(d.d13 * electric_field_factor(f_optical, geometry.fill_a, geometry) / kTwoPi);
  r.g12 = Rate(d.mu12 * magnetic_field_factor(f_microwave, geometry.fill_c, geometry) / kTwoPi);
  return r;
}

Rate pump_rabi(const DipoleSpec& d, const GeometrySpec& geometry, double f_pump, double n_p) {
  validate(geometry);
  require_nonnegative(d.d23, "dipoles.d23");
  require_positive(f_pump, "pump.frequency");
  require_nonnegative(n_p, "pump.n_p");
  return Rate(d.d23 * std::sqrt(n_p) * electric_field_factor(f_pump, geometry.fill_b, geometry) / kTwoPi);
}

double optical_dipole_for(Rate g13, const GeometrySpec& geometry, double f_optical) {
  validate(geometry);
  require_nonnegative(g13.hz(), "g13");
  require_positive(f_optical, "optical.frequency");
  const double factor = electric_field_factor(f_optical, geometry.fill_a, geometry);
  if (!(factor > 0.0)) throw DomainError("geometry.fill_a", "zero filling factor has no inverse");
  return g13.hz() * kTwoPi / factor;
}

PumpRabiModel PumpRabiModel::from_calibration(Rate omega_ref, double n_ref) {
  require_nonnegative(omega_ref.hz(), "pump.omega_ref");
  require_positive(n_ref, "pump.n_ref");
  return PumpRabiModel(omega_ref / std::sqrt(n_ref));
}

PumpRabiModel PumpRabiModel::from_dipole(const DipoleSpec& dipoles, const GeometrySpec& geometry, double f_pump) {
  return PumpRabiModel(pump_rabi(dipoles, geometry, f_pump, 1.0));
}

Rate PumpRabiModel::operator()(double n_p) const {
  require_nonnegative(n_p, "pump.n_p");
  return coefficient_ * std::sqrt(n_p);
}

double PumpRabiModel::photons_for(Rate omega_p) const {
  require_nonnegative(omega_p.hz(), "omega_p");
  if (!(coefficient_.hz() > 0.0)) throw DomainError("pump", "model has zero coupling; no inverse");
  const double r = omega_p / coefficient_;
  return r * r;
}

double pump_leakage(double n_p, double f_pump, Rate kappa_b_sc) {
  require_nonnegative(n_p, "pump.n_p");
  require_nonnegative(f_pump, "pump.frequency");
  require_nonnegative(kappa_b_sc.hz(), "superconductor.kappa_b_sc");
  return constants::planck * f_pump * n_p * kappa_b_sc.hz();
}

QuasiparticleModel quasiparticle_model_from_string(const std::string& name) {
  if (name == "steady_state") return QuasiparticleModel::steady_state;
  if (name == "thermal") return QuasiparticleModel::thermal;
  if (name == "fixed") return QuasiparticleModel::fixed;
  throw ConfigError("unknown quasiparticle model '" + name + "' (expected steady_state, thermal or fixed)");
}

const char* to_string(QuasiparticleModel m) {
  switch (m) {
    case QuasiparticleModel::steady_state: return "steady_state";
    case QuasiparticleModel::thermal: return "thermal";
    case QuasiparticleModel::fixed: return "fixed";
  }
  return "?";
}

void validate(const SuperconductorSpec& sc) {
  require_fraction(sc.alpha_ki, "superconductor.alpha_ki");
  require_positive(sc.n0, "superconductor.n0");
  require_positive(sc.gap_ev, "superconductor.gap");
  require_nonnegative(sc.kappa_b_sc.hz(), "superconductor.kappa_b_sc");
  require_positive(sc.temperature, "superconductor.temperature");
  require_fraction(sc.pair_breaking_efficiency, "superconductor.pair_breaking_efficiency");
  require_positive(sc.recombination, "superconductor.recombination");
  require_nonnegative(sc.fixed_density, "superconductor.fixed_density");
}

double thermal_quasiparticle_density(const SuperconductorSpec& sc) {
  validate(sc);
  const double kt = constants::boltzmann * sc.temperature / constants::elementary_charge;  // eV
  return 2.0 * sc.n0 * std::sqrt(kTwoPi * kt * sc.gap_ev) * std::exp(-sc.gap_ev / kt);
}

double quasiparticle_density(const SuperconductorSpec& sc, double v_microwave, double p_leak) {
  validate(sc);
  require_positive(v_microwave, "geometry.v_microwave");
  require_nonnegative(p_leak, "p_leak");
  switch (sc.qp_model) {
    case QuasiparticleModel::fixed: return sc.fixed_density;
    case QuasiparticleModel::thermal: return thermal_quasiparticle_density(sc);
    case QuasiparticleModel::steady_state: {
      const double nth = thermal_quasiparticle_density(sc);
      const double gap_j = sc.gap_ev * constants::elementary_charge;
      const double generated = sc.pair_breaking_efficiency * p_leak / (gap_j * v_microwave * sc.recombination);
      return std::sqrt(nth * nth + generated);
    }
  }
  return 0.0;
}

Rate qp_loss_from_density(const SuperconductorSpec& sc, double f_microwave, double n_qp) {
  validate(sc);
  require_positive(f_microwave, "microwave.frequency");
  require_nonnegative(n_qp, "n_qp");
  const double gap_j = sc.gap_ev * constants::elementary_charge;
  const double f_t = sc.f_t ? sc.f_t(sc.temperature, f_microwave) : 1.0;
  require_nonnegative(f_t, "superconductor.f_t");
  const double k = f_microwave * (sc.alpha_ki / std::numbers::pi) * (n_qp / (sc.n0 * sc.gap_ev)) *
                   std::sqrt(2.0 * gap_j / (constants::planck * f_microwave)) * f_t;
  return Rate(k);
}

Rate qp_loss(const SuperconductorSpec& sc, double v_microwave, double f_microwave, double p_leak) {
  return qp_loss_from_density(sc, f_microwave, quasiparticle_density(sc, v_microwave, p_leak));
}

EvanescentLossModel EvanescentLossModel::fit(double d1, Rate k1, double d2, Rate k2) {
  require_nonnegative(d1, "evanescent.d1");
  require_nonnegative(d2, "evanescent.d2");
  require_positive(k1.hz(), "evanescent.k1");
  require_positive(k2.hz(), "evanescent.k2");
  if (!(d2 > d1)) throw DomainError("evanescent", "fit points must have d2 > d1");
  if (!(k1 > k2)) throw DomainError("evanescent", "loss must decrease with distance");
  EvanescentLossModel m;
  m.lambda = (d2 - d1) / std::log(k1 / k2);
  m.kappa0 = Rate(k1.hz() * std::exp(d1 / m.lambda));
  m.d_min = d1;
  m.d_max = d2;
  return m;
}

EvanescentLossModel EvanescentLossModel::default_fit() { return fit(0.2, Rate(1.0e10), 1.4, Rate(1.0)); }

EvanescentLossModel::Result EvanescentLossModel::evaluate(double d_om) const {
  require_nonnegative(d_om, "geometry.d_om");
  require_positive(lambda, "evanescent.lambda");
  Result r{Rate(kappa0.hz() * std::exp(-d_om / lambda)), std::nullopt};
  if (d_om < d_min || d_om > d_max) {
    std::ostringstream os;
    os << "d_om = " << d_om << " um lies outside the fitted range [" << d_min << ", " << d_max << "] um";
    r.warning = os.str();
  }
  return r;
}

Rate OpticalLossPolynomial::operator()(double n_p) const {
  require_nonnegative(n_p, "pump.n_p");
  const Rate k = c0 + Rate(c1 * n_p + c2 * n_p * n_p);
  require_nonnegative(k.hz(), "optical.kappa_in");
  return k;
}

Rate pump_loss_rate(const Device& device) {
  if (device.evanescent) return device.evanescent->evaluate(device.geometry.d_om).kappa;
  return device.superconductor.kappa_b_sc;
}

System resolve_system(const Device& device, double n_p) {
  require_nonnegative(n_p, "pump.n_p");
  System s;
  s.ensemble = with_pump_rabi(device.ensemble, device.pump(n_p));
  s.optical = device.optical;
  s.optical.kappa_in = device.optical_loss(n_p);
  s.microwave = device.microwave;
  const double p_leak = device.pump_loss_enabled ? pump_leakage(n_p, device.f_pump, pump_loss_rate(device)) : 0.0;
  s.kappa_c_qp = qp_loss(device.superconductor, device.geometry.v_microwave, device.microwave.omega_bare.hz(), p_leak);
  s.n_th = thermal_occupation(device.microwave.omega_bare.hz(), device.superconductor.temperature);
  return s;
}

LossBudget assemble_budget(const Device& device, const OperatingPoint& point) {
  const System s = resolve_system(device, point.n_pump);
  return itemize_losses(s.optical, s.microwave, s.kappa_c_qp, susceptibilities(s.ensemble, point));
}

Rate optical_center_loss_strong_pump(double n_a, Rate g13, Rate gamma12, Rate omega_p) {
  require_nonnegative(n_a, "n_a");
  require_positive(omega_p.hz(), "omega_p");
  return Rate(n_a * g13.hz() * g13.hz() * gamma12.hz() / (omega_p.hz() * omega_p.hz()));
}

Rate microwave_center_loss_strong_pump(double n_a, Rate g12, Rate gamma13, Rate omega_p) {
  require_nonnegative(n_a, "n_a");
  require_positive(omega_p.hz(), "omega_p");
  return Rate(n_a * g12.hz() * g12.hz() * gamma13.hz() / (omega_p.hz() * omega_p.hz()));
}

}  // namespace transduce
