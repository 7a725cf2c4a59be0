#pragma once

#include <complex>
#include <vector>

namespace transduce {

/// Gauss-Hermite rule for the weight exp(-x^2): nodes ascending, weights
/// summing to sqrt(pi). Nodes and weights are mirrored exactly about zero
/// (the middle node is exactly 0 for odd n). Weights of far-tail nodes may
/// underflow to zero for very large n; they carry no measurable mass.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int n);

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z), valid in the whole
/// complex plane. Relative accuracy is about 1e-13 in the upper half plane.
std::complex<double> faddeeva(std::complex<double> z);

/// E[1 / (z - X)] for X ~ Normal(mean, sigma^2), with Im z > 0 and sigma > 0.
/// This is the Gaussian average of a Lorentzian response (a Voigt profile).
std::complex<double> gaussian_resolvent(std::complex<double> z, double mean, double sigma);

}  // namespace transduce
