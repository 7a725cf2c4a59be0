#include "transduce/model.hpp"

#include <cmath>
#include <string>

#include "transduce/errors.hpp"
#include "transduce/numeric.hpp"

namespace transduce {

namespace {

void require_finite(Rate r, const char* name) {
  if (!std::isfinite(r.hz())) throw DomainError(name, "must be finite");
}

void require_nonnegative(Rate r, const char* name) {
  require_finite(r, name);
  if (r.hz() < 0.0) throw DomainError(name, "must be >= 0");
}

}  // namespace

void validate(const CenterClass& c) {
  require_nonnegative(c.g13, "g13");
  require_nonnegative(c.g12, "g12");
  require_nonnegative(c.omega_p, "omega_p");
  require_finite(c.delta13, "delta13");
  require_finite(c.delta12, "delta12");
  require_finite(c.gamma13, "gamma13");
  require_finite(c.gamma12, "gamma12");
  if (c.gamma13.hz() <= 0.0) throw DomainError("gamma13", "must be > 0");
  if (c.gamma12.hz() <= 0.0) throw DomainError("gamma12", "must be > 0");
  if (!std::isfinite(c.weight) || c.weight < 0.0) throw DomainError("weight", "must be finite and >= 0");
}

void validate(const CavityMode& mode, const char* name) {
  const std::string prefix(name);
  if (!std::isfinite(mode.kappa_ex.hz()) || mode.kappa_ex.hz() < 0.0)
    throw DomainError(prefix + ".kappa_ex", "must be finite and >= 0");
  if (!std::isfinite(mode.kappa_in.hz()) || mode.kappa_in.hz() < 0.0)
    throw DomainError(prefix + ".kappa_in", "must be finite and >= 0");
  if (!std::isfinite(mode.omega_bare.hz()) || mode.omega_bare.hz() < 0.0)
    throw DomainError(prefix + ".frequency", "must be finite and >= 0");
}

ComplexDetuning complex_detuning(Rate delta, Rate gamma) {
  if (!std::isfinite(delta.hz())) throw DomainError("delta", "must be finite");
  if (!std::isfinite(gamma.hz())) throw DomainError("gamma", "must be finite");
  if (gamma.hz() <= 0.0) throw DomainError("gamma", "must be > 0");
  return {delta.hz(), -0.5 * gamma.hz()};
}

SusceptibilityTriplet class_susceptibility(const CenterClass& c, const OperatingPoint& point) {
  const double w = point.omega.hz();
  const double d = point.delta.hz();
  const std::complex<double> optical = (w + d) - complex_detuning(c.delta13, c.gamma13);
  const std::complex<double> spin = w - complex_detuning(c.delta12, c.gamma12);
  const double om = c.omega_p.hz();
  const std::complex<double> denom = optical * spin - om * om;

  const double g13 = c.g13.hz();
  const double g12 = c.g12.hz();
  return {c.weight * g13 * g13 * spin / denom,
          c.weight * g12 * g12 * optical / denom,
          c.weight * g12 * g13 * om / denom};
}

SusceptibilityTriplet susceptibilities(std::span<const CenterClass> classes, const OperatingPoint& point) {
  CompensatedComplexSum a, c, ac;
  for (const auto& k : classes) {
    validate(k);
    const auto t = class_susceptibility(k, point);
    a.add(t.xi_a);
    c.add(t.xi_c);
    ac.add(t.xi_ac);
  }
  return {a.value(), c.value(), ac.value()};
}

}  // namespace transduce
