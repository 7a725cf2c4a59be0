#pragma once

// Rates are ordinary frequencies in Hz, exactly as quoted in device tables.
// The response formulas are homogeneous in rate units, so no 2*pi factors
// appear in them. Formulas that mix rates with absolute energies (thermal
// occupation, dipole couplings, pump power) convert explicitly.

#include <compare>
#include <complex>

namespace transduce {

class Rate {
 public:
  constexpr Rate() = default;
  constexpr explicit Rate(double hz) : hz_(hz) {}

  constexpr double hz() const { return hz_; }

  constexpr Rate operator-() const { return Rate(-hz_); }
  constexpr Rate& operator+=(Rate o) { hz_ += o.hz_; return *this; }
  constexpr Rate& operator-=(Rate o) { hz_ -= o.hz_; return *this; }
  constexpr Rate& operator*=(double s) { hz_ *= s; return *this; }

  friend constexpr Rate operator+(Rate a, Rate b) { return Rate(a.hz_ + b.hz_); }
  friend constexpr Rate operator-(Rate a, Rate b) { return Rate(a.hz_ - b.hz_); }
  friend constexpr Rate operator*(Rate a, double s) { return Rate(a.hz_ * s); }
  friend constexpr Rate operator*(double s, Rate a) { return Rate(a.hz_ * s); }
  friend constexpr Rate operator/(Rate a, double s) { return Rate(a.hz_ / s); }
  friend constexpr double operator/(Rate a, Rate b) { return a.hz_ / b.hz_; }

  friend constexpr auto operator<=>(Rate, Rate) = default;

 private:
  double hz_ = 0.0;
};

/// Complex detuning delta - i*gamma/2, in Hz.
using ComplexDetuning = std::complex<double>;

namespace literals {

constexpr Rate operator""_Hz(long double v) { return Rate(static_cast<double>(v)); }
constexpr Rate operator""_kHz(long double v) { return Rate(static_cast<double>(v) * 1e3); }
constexpr Rate operator""_MHz(long double v) { return Rate(static_cast<double>(v) * 1e6); }
constexpr Rate operator""_GHz(long double v) { return Rate(static_cast<double>(v) * 1e9); }
constexpr Rate operator""_THz(long double v) { return Rate(static_cast<double>(v) * 1e12); }
constexpr Rate operator""_Hz(unsigned long long v) { return Rate(static_cast<double>(v)); }
constexpr Rate operator""_kHz(unsigned long long v) { return Rate(static_cast<double>(v) * 1e3); }
constexpr Rate operator""_MHz(unsigned long long v) { return Rate(static_cast<double>(v) * 1e6); }
constexpr Rate operator""_GHz(unsigned long long v) { return Rate(static_cast<double>(v) * 1e9); }
constexpr Rate operator""_THz(unsigned long long v) { return Rate(static_cast<double>(v) * 1e12); }

}  // namespace literals

}  // namespace transduce
