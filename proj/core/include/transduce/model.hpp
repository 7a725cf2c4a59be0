#pragma once

#include <complex>
#include <span>
#include <vector>

#include "transduce/units.hpp"

namespace transduce {

/// One homogeneous sub-ensemble of three-level centers. `weight` is the
/// effective number of centers in the class; it is real so quadrature nodes
/// can be used directly as classes.
struct CenterClass {
  Rate g13;      // optical center-cavity coupling
  Rate g12;      // microwave center-cavity coupling
  Rate gamma13;  // optical transition linewidth
  Rate gamma12;  // spin transition linewidth
  Rate delta13;  // optical transition minus bare optical cavity frequency
  Rate delta12;  // spin transition minus bare microwave cavity frequency
  Rate omega_p;  // pump Rabi frequency seen by this class
  double weight = 1.0;
};

/// Throws DomainError if the class is unphysical (non-finite values,
/// gamma <= 0, negative couplings or weight).
void validate(const CenterClass& c);

struct CavityMode {
  Rate omega_bare;  // absolute frequency; only used by absolute-energy formulas
  Rate kappa_ex;    // external (port) coupling
  Rate kappa_in;    // intrinsic loss not caused by the centers
};

void validate(const CavityMode& mode, const char* name);

/// omega: microwave signal minus bare microwave cavity frequency.
/// delta: pump frequency minus (optical - microwave) cavity frequencies.
struct OperatingPoint {
  Rate omega;
  Rate delta;
  double n_pump = 0.0;
};

struct SusceptibilityTriplet {
  std::complex<double> xi_a;
  std::complex<double> xi_c;
  std::complex<double> xi_ac;

  /// Centers may only add loss: Im{xi_a} <= 0 and Im{xi_c} <= 0.
  bool passive() const { return xi_a.imag() <= 0.0 && xi_c.imag() <= 0.0; }

  SusceptibilityTriplet& operator+=(const SusceptibilityTriplet& o) {
    xi_a += o.xi_a;
    xi_c += o.xi_c;
    xi_ac += o.xi_ac;
    return *this;
  }
  friend SusceptibilityTriplet operator*(double s, const SusceptibilityTriplet& t) {
    return {s * t.xi_a, s * t.xi_c, s * t.xi_ac};
  }
};

/// delta - i*gamma/2. Requires gamma > 0 and finite inputs.
ComplexDetuning complex_detuning(Rate delta, Rate gamma);

/// Contribution of a single class, already multiplied by its weight.
SusceptibilityTriplet class_susceptibility(const CenterClass& c, const OperatingPoint& point);

/// Weighted sums over classes of the three ensemble susceptibilities.
/// Summation is compensated and follows the input order. An empty list
/// yields zeros.
SusceptibilityTriplet susceptibilities(std::span<const CenterClass> classes, const OperatingPoint& point);
inline SusceptibilityTriplet susceptibilities(const std::vector<CenterClass>& classes, const OperatingPoint& point) {
  return susceptibilities(std::span<const CenterClass>(classes), point);
}

}  // namespace transduce
