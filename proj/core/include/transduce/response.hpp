#pragma once

#include <complex>

#include "transduce/ensemble.hpp"
#include "transduce/model.hpp"

namespace transduce {

/// Loss of one cavity mode, excluding the center-induced part (which enters
/// the response through the susceptibilities). total >= external.
struct ModeLoss {
  Rate external;
  Rate total;
};

/// Bidirectional conversion efficiency
///   k_a^ex k_c^ex |xi_ac|^2 / |xi_ac^2 + [k_a/2 - i(w+D-xi_a)][k_c/2 - i(w-xi_c)]|^2
double efficiency(const SusceptibilityTriplet& xi, ModeLoss optical, ModeLoss microwave, const OperatingPoint& point);

/// C = 4|xi_ac|^2 / (kappa_a kappa_c).
double cooperativity(std::complex<double> xi_ac, Rate kappa_a, Rate kappa_c);

struct EfficiencyDecomposition {
  double internal = 0.0;  // 4C/(C+1)^2
  double optical = 0.0;   // kappa_a^ex / kappa_a
  double microwave = 0.0; // kappa_c^ex / kappa_c
  double total = 0.0;     // product of the three
};

/// Kappas here are totals that already include center-induced loss.
EfficiencyDecomposition efficiency_decomposition(double cooperativity, Rate kappa_a_ex, Rate kappa_a, Rate kappa_c_ex,
                                                 Rate kappa_c);

struct AddedNoise {
  double n_mo = 0.0;  // microwave -> optical, input referred
  double n_om = 0.0;  // optical -> microwave; +inf when xi_ac = 0 with a live noise source
};

/// Thermal microwave noise referred to the converter input. `kappa_c_in` is
/// the full microwave intrinsic loss: residual, quasiparticle and
/// center-induced lines together.
AddedNoise added_noise(const SusceptibilityTriplet& xi, ModeLoss optical, Rate kappa_c_ex, Rate kappa_c_in,
                       const OperatingPoint& point, double n_th);

/// Pump Rabi frequency giving C = 1 at w = D = delta = 0 in the strong-pump
/// limit: 2 N g12 g13 / sqrt(kappa_a kappa_c).
Rate matching_pump_rabi(double n_a, Rate g12, Rate g13, Rate kappa_a, Rate kappa_c);

/// Bose-Einstein occupation of a mode at `frequency_hz` (ordinary Hz; the
/// photon energy is h*f).
double thermal_occupation(double frequency_hz, double temperature_k);

/// Itemized cavity losses. Each total is the sum of its lines.
struct LossBudget {
  Rate kappa_a_ex;
  Rate kappa_a_in;
  Rate kappa_a_center;
  Rate kappa_a_total;
  Rate kappa_c_ex;
  Rate kappa_c_in;
  Rate kappa_c_center;
  Rate kappa_c_qp;
  Rate kappa_c_total;

  /// Everything on the microwave side that is not the port.
  Rate microwave_intrinsic() const { return kappa_c_in + kappa_c_qp + kappa_c_center; }
};

/// Center-induced loss 2|Im xi| is added to the supplied cavity lines.
LossBudget itemize_losses(const CavityMode& optical, const CavityMode& microwave, Rate kappa_c_qp,
                          const SusceptibilityTriplet& xi);

struct ResponseReport {
  SusceptibilityTriplet xi;
  double cooperativity = 0.0;  // with center loss folded into the kappas
  double eta_total = 0.0;      // full complex expression
  double eta_internal = 0.0;
  double eta_a = 0.0;
  double eta_c = 0.0;
  double n_mo = 0.0;
  double n_om = 0.0;
  LossBudget budget;
};

/// A device resolved at a fixed pump photon number: every loss line is a
/// number and the ensemble carries its pump Rabi frequency.
struct System {
  EnsembleSpec ensemble;
  CavityMode optical;
  CavityMode microwave;
  Rate kappa_c_qp;
  double n_th = 0.0;
};

ResponseReport report_from(const SusceptibilityTriplet& xi, const System& system, const OperatingPoint& point);
ResponseReport evaluate(const System& system, const OperatingPoint& point);

}  // namespace transduce
