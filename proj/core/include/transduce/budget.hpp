#pragma once

#include <functional>
#include <optional>
#include <string>

#include "transduce/ensemble.hpp"
#include "transduce/response.hpp"

namespace transduce {

/// Lengths in micrometres, volumes in cubic micrometres.
struct GeometrySpec {
  double v_optical = 1100.0 * 1.3 * 1.2;   // nonlinear medium (racetrack)
  double v_microwave = 1000.0 * 2.0 * 0.02;  // inductive central line
  double fill_a = 1.0;
  double fill_b = 1.0;
  double fill_c = 1.0;
  double d_om = 1.1;
  double eps_r = 11.7;
};
void validate(const GeometrySpec& g);

/// d13, d23 in C m; mu12 in J/T.
struct DipoleSpec {
  double d13 = 0.0;
  double d23 = 0.0;
  double mu12 = 0.0;
};

struct CouplingRates {
  Rate g13;
  Rate g12;
};

/// Vacuum couplings from dipoles. Frequencies are absolute, in Hz.
CouplingRates coupling_from_dipole(const DipoleSpec& dipoles, const GeometrySpec& geometry, double f_optical,
                                   double f_microwave);
/// Pump Rabi frequency for n_p intracavity pump photons.
Rate pump_rabi(const DipoleSpec& dipoles, const GeometrySpec& geometry, double f_pump, double n_p);
/// Inverse of the g13 formula: the optical dipole that yields `g13`.
double optical_dipole_for(Rate g13, const GeometrySpec& geometry, double f_optical);

/// Omega_p = coefficient * sqrt(N_p).
class PumpRabiModel {
 public:
  PumpRabiModel() = default;
  static PumpRabiModel from_calibration(Rate omega_ref, double n_ref);
  static PumpRabiModel from_dipole(const DipoleSpec& dipoles, const GeometrySpec& geometry, double f_pump);

  Rate operator()(double n_p) const;
  /// Photon number giving `omega_p`.
  double photons_for(Rate omega_p) const;
  Rate per_root_photon() const { return coefficient_; }

 private:
  explicit PumpRabiModel(Rate c) : coefficient_(c) {}
  Rate coefficient_{0.0};
};

/// P_l = h f_p N_p kappa_b^SC, in W.
double pump_leakage(double n_p, double f_pump, Rate kappa_b_sc);

enum class QuasiparticleModel {
  steady_state,  // sqrt(n_th(T)^2 + eta_pb P_l / (gap V_m R))
  thermal,       // n_th(T), pump independent
  fixed,         // constant density
};
QuasiparticleModel quasiparticle_model_from_string(const std::string& name);
const char* to_string(QuasiparticleModel m);

/// Temperature factor f(T, f_c) of the quasiparticle loss formula.
using TemperatureFactor = std::function<double(double temperature_k, double f_microwave)>;

/// Densities per (eV um^3) or per um^3, gap in eV, recombination constant in
/// um^3/s.
struct SuperconductorSpec {
  double alpha_ki = 0.2;
  double n0 = 4.0e10;
  double gap_ev = 1.5e-3;
  Rate kappa_b_sc{300.0};
  double temperature = 0.02;
  QuasiparticleModel qp_model = QuasiparticleModel::steady_state;
  double pair_breaking_efficiency = 0.5;
  double recombination = 3.0e4;
  double fixed_density = 0.0;
  TemperatureFactor f_t;  // empty means 1
};
void validate(const SuperconductorSpec& sc);

/// Thermal quasiparticle density 2 n0 sqrt(2 pi kT gap) exp(-gap/kT), per um^3.
double thermal_quasiparticle_density(const SuperconductorSpec& sc);
/// Quasiparticle density under leaked power p_leak (W), per um^3.
double quasiparticle_density(const SuperconductorSpec& sc, double v_microwave, double p_leak);
/// Loss from a given quasiparticle density.
Rate qp_loss_from_density(const SuperconductorSpec& sc, double f_microwave, double n_qp);
Rate qp_loss(const SuperconductorSpec& sc, double v_microwave, double f_microwave, double p_leak);

/// kappa(d) = kappa0 exp(-d / lambda), valid on [d_min, d_max] (um).
struct EvanescentLossModel {
  Rate kappa0{0.0};
  double lambda = 0.0;
  double d_min = 0.0;
  double d_max = 0.0;

  /// Exponential through (d1, k1) and (d2, k2).
  static EvanescentLossModel fit(double d1, Rate k1, double d2, Rate k2);
  /// 1e10 Hz at 0.2 um down to 1 Hz at 1.4 um.
  static EvanescentLossModel default_fit();

  struct Result {
    Rate kappa;
    std::optional<std::string> warning;
  };
  Result evaluate(double d_om) const;
};

/// kappa_a^in(N_p) = c0 + c1 N_p + c2 N_p^2 (pump-driven absorption in the host).
struct OpticalLossPolynomial {
  Rate c0;
  double c1 = 0.0;  // Hz per photon
  double c2 = 0.0;  // Hz per photon^2
  Rate operator()(double n_p) const;
};

/// Everything needed to turn a pump photon number into a resolved System.
struct Device {
  EnsembleSpec ensemble;  // the pump Rabi frequency of the classes is overwritten
  CavityMode optical;     // kappa_in is replaced by the polynomial
  CavityMode microwave;
  OpticalLossPolynomial optical_loss;
  PumpRabiModel pump;
  double f_pump = 0.0;  // absolute pump frequency, Hz
  SuperconductorSpec superconductor;
  GeometrySpec geometry;
  std::optional<EvanescentLossModel> evanescent;  // overrides kappa_b_sc from d_om
  bool pump_loss_enabled = true;
};

/// Pump leakage rate into the superconductor actually used by the device.
Rate pump_loss_rate(const Device& device);
System resolve_system(const Device& device, double n_p);
/// Itemized budget at the operating point (n_pump taken from `point`).
LossBudget assemble_budget(const Device& device, const OperatingPoint& point);

/// Strong-pump estimates of the center-induced losses at zero detunings.
Rate optical_center_loss_strong_pump(double n_a, Rate g13, Rate gamma12, Rate omega_p);
Rate microwave_center_loss_strong_pump(double n_a, Rate g12, Rate gamma13, Rate omega_p);

}  // namespace transduce
