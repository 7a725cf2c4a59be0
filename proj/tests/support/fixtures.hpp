#pragma once

#include <string>
#include <vector>

#include "transduce/response.hpp"

namespace transduce::testing {

inline std::string config_path(const std::string& name) {
  return std::string(TRANSDUCE_CONFIG_DIR) + "/" + name + ".cfg";
}

// Reference T- and Er-center parameter sets, zero detunings.
inline CenterClass tcenter(double n_a = 1e6, double omega_p = 4e6) {
  return CenterClass{Rate(2e6), Rate(40.0), Rate(1e6), Rate(1.0), Rate(0.0), Rate(0.0), Rate(omega_p), n_a};
}

inline CenterClass ercenter(double n_a = 1e7, double omega_p = 4.5e6) {
  return CenterClass{Rate(3e4), Rate(300.0), Rate(1e4), Rate(1e3), Rate(0.0), Rate(0.0), Rate(omega_p), n_a};
}

inline System lossless_system(const CenterClass& c, double kappa_a_ex = 2e9, double kappa_c_ex = 0.8e6) {
  System s;
  s.ensemble = std::vector<CenterClass>{c};
  s.optical = CavityMode{Rate(2.26e14), Rate(kappa_a_ex), Rate(0.0)};
  s.microwave = CavityMode{Rate(5e9), Rate(kappa_c_ex), Rate(0.0)};
  return s;
}

inline GaussianEnsembleSpec broadened_tcenter(int nodes = 32, QuadratureRule rule = QuadratureRule::hermite_voigt) {
  GaussianEnsembleSpec g;
  g.sigma13 = Rate(30e6);
  g.sigma12 = Rate(100e3);
  g.n_total = 1e6;
  g.base = tcenter(1.0);
  g.nodes13 = nodes;
  g.nodes12 = nodes;
  g.rule = rule;
  return g;
}

}  // namespace transduce::testing
