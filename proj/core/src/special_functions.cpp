#include "transduce/special_functions.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "transduce/errors.hpp"

namespace transduce {

namespace {

GaussHermiteRule compute_gauss_hermite(int n) {
  if (n < 1) throw DomainError("nodes", "Gauss-Hermite order must be >= 1");

  // Golub-Welsch eigenvalues as starting points, then Newton on the
  // orthonormal Hermite functions (polynomials times exp(-x^2/2)) so the
  // recurrence stays bounded for large orders. Far-tail weights underflow
  // to zero.
  constexpr double kPiM4 = 0.7511255444649425;  // pi^(-1/4)
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) sub(j - 1) = std::sqrt(0.5 * j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("nodes", "Gauss-Hermite eigenvalue iteration failed");

  const int half = (n + 1) / 2;
  std::vector<double> roots(half);
  std::vector<double> wts(half);
  for (int i = 0; i < half; ++i) {
    double z = std::abs(es.eigenvalues()(n - 1 - i));
    double dpsi = 0.0;
    for (int iter = 0; iter < 8; ++iter) {
      double p1 = kPiM4 * std::exp(-0.5 * z * z);
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      dpsi = std::sqrt(2.0 * n) * p2;  // p_n'(z) exp(-z^2/2)
      if (dpsi == 0.0) break;
      const double step = p1 / dpsi;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    roots[i] = z;
    wts[i] = dpsi == 0.0 ? 0.0 : 2.0 * std::exp(-z * z) / (dpsi * dpsi);
  }
  if (n % 2 == 1) roots[half - 1] = 0.0;

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < half; ++i) {
    rule.nodes[i] = -roots[i];
    rule.nodes[n - 1 - i] = roots[i];
    rule.weights[i] = wts[i];
    rule.weights[n - 1 - i] = wts[i];
  }
  return rule;
}

}  // namespace

GaussHermiteRule gauss_hermite(int n) {
  // rules are reused heavily by sweeps; computing one is O(n^2)
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  {
    const std::lock_guard lock(mutex);
    if (const auto it = cache.find(n); it != cache.end()) return it->second;
  }
  auto rule = compute_gauss_hermite(n);
  const std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

// Weideman's rational expansion of w(z) in the upper half plane, 40 terms.
constexpr int kTerms = 40;

struct WeidemanTable {
  std::array<double, kTerms> coeff{};
  double scale = 0.0;

  WeidemanTable() {
    const int m = 2 * kTerms;
    const int len = 2 * m;
    scale = std::sqrt(kTerms / std::numbers::sqrt2);
    std::array<double, 2 * 2 * kTerms> f{};
    // f[0] = 0, f[j] for j = 1 .. 2m-1 samples k = -m+1 .. m-1
    for (int j = 1; j < len; ++j) {
      const int k = j - m;
      const double theta = k * std::numbers::pi / m;
      const double t = scale * std::tan(0.5 * theta);
      f[j] = std::exp(-t * t) * (scale * scale + t * t);
    }
    // real part of the DFT of the half-shifted sequence, divided by 2m
    for (int n = 1; n <= kTerms; ++n) {
      double acc = 0.0;
      for (int j = 0; j < len; ++j) {
        const double v = f[(j + m) % len];
        acc += v * std::cos(2.0 * std::numbers::pi * j * n / len);
      }
      coeff[n - 1] = acc / len;
    }
  }
};

const WeidemanTable& weideman() {
  static const WeidemanTable table;
  return table;
}

std::complex<double> faddeeva_upper(std::complex<double> z) {
  const auto& tab = weideman();
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> lm = tab.scale - i * z;
  const std::complex<double> big_z = (tab.scale + i * z) / lm;
  std::complex<double> p = 0.0;
  for (int n = kTerms - 1; n >= 0; --n) p = p * big_z + tab.coeff[n];
  return 2.0 * p / (lm * lm) + (1.0 / std::sqrt(std::numbers::pi)) / lm;
}

}  // namespace

std::complex<double> faddeeva(std::complex<double> z) {
  if (z.imag() >= 0.0) {
    // w(-conj z) = conj w(z): evaluating only Re z >= 0 keeps mirrored
    // arguments bitwise symmetric.
    if (z.real() < 0.0) return std::conj(faddeeva_upper(-std::conj(z)));
    return faddeeva_upper(z);
  }
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

std::complex<double> gaussian_resolvent(std::complex<double> z, double mean, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma", "must be > 0 for a Gaussian average");
  if (!(z.imag() > 0.0)) throw DomainError("z", "resolvent requires Im z > 0");
  const double s = std::numbers::sqrt2 * sigma;
  const std::complex<double> zeta = (z - mean) / s;
  // integral exp(-t^2)/(zeta - t) dt = -i*pi*w(zeta)
  return std::complex<double>(0.0, -std::sqrt(std::numbers::pi) / s) * faddeeva(zeta);
}

}  // namespace transduce
