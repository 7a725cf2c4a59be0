#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "transduce/ensemble.hpp"
#include "transduce/errors.hpp"
#include "transduce/oracle.hpp"
#include "transduce/response.hpp"

using namespace transduce;
using transduce::testing::ercenter;
using transduce::testing::lossless_system;
using transduce::testing::tcenter;

namespace {

ModeLoss lossless(double k) { return {Rate(k), Rate(k)}; }

}  // namespace

TEST(Efficiency, ZeroCrossTermGivesZero) {
  const SusceptibilityTriplet xi{{1e5, -3e4}, {2e3, -10.0}, 0.0};
  EXPECT_EQ(efficiency(xi, {Rate(1e9), Rate(2e9)}, {Rate(1e5), Rate(3e5)}, {Rate(1e3), Rate(4e7)}), 0.0);
}

TEST(Efficiency, MatchedLosslessIsUnity) {
  const double ka = 2e9, kc = 0.8e6;
  const SusceptibilityTriplet xi{0.0, 0.0, std::sqrt(ka * kc / 4.0)};
  EXPECT_NEAR(efficiency(xi, lossless(ka), lossless(kc), OperatingPoint{}), 1.0, 1e-15);
}

TEST(Efficiency, TcenterTableOneMatchesOracle) {
  const std::vector<CenterClass> cs{tcenter()};
  const auto xi = susceptibilities(cs, OperatingPoint{});
  const double eta = efficiency(xi, lossless(2e9), lossless(0.8e6), OperatingPoint{});
  const double oracle = steady_state_efficiency(cs, lossless(2e9), lossless(0.8e6), OperatingPoint{}, DrivePort::microwave);
  EXPECT_LT(std::abs(eta - oracle) / oracle, 1e-9);
}

TEST(Efficiency, RejectsUnphysicalLosses) {
  const SusceptibilityTriplet xi{0.0, 0.0, 1e6};
  EXPECT_THROW(efficiency(xi, {Rate(2e9), Rate(1e9)}, lossless(1e5), OperatingPoint{}), DomainError);
  EXPECT_THROW(efficiency(xi, {Rate(-1.0), Rate(1e9)}, lossless(1e5), OperatingPoint{}), DomainError);
}

TEST(Efficiency, SymmetryUnderJointConjugation) {
  // (xi_a, xi_c, xi_ac, w, D) -> (-xi_a*, -xi_c*, xi_ac*, -w, -D) leaves eta unchanged
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const SusceptibilityTriplet xi{{1e8 * u(rng), -1e8 * std::abs(u(rng))},
                                   {1e5 * u(rng), -1e5 * std::abs(u(rng))},
                                   {1e7 * u(rng), 1e7 * u(rng)}};
    const OperatingPoint p{Rate(1e5 * u(rng)), Rate(1e9 * u(rng))};
    const SusceptibilityTriplet m{-std::conj(xi.xi_a), -std::conj(xi.xi_c), std::conj(xi.xi_ac)};
    const OperatingPoint q{-p.omega, -p.delta};
    const ModeLoss a{Rate(1e9), Rate(1.5e9)}, c{Rate(5e5), Rate(8e5)};
    const double e1 = efficiency(xi, a, c, p), e2 = efficiency(m, a, c, q);
    EXPECT_NEAR(e1, e2, 1e-13 * std::max(e1, 1e-300));
  }
}

TEST(Efficiency, ConjugatingOnlyTheCrossTermIsNotASymmetry) {
  const SusceptibilityTriplet xi{{3e8, -1e7}, {2e5, -1e3}, {1e7, 1.5e7}};
  const SusceptibilityTriplet m{xi.xi_a, xi.xi_c, std::conj(xi.xi_ac)};
  const ModeLoss a{Rate(1e9), Rate(1.5e9)}, c{Rate(5e5), Rate(8e5)};
  EXPECT_GT(std::abs(efficiency(xi, a, c, OperatingPoint{}) - efficiency(m, a, c, OperatingPoint{})), 1e-3);
}

TEST(Efficiency, MaximizedAtUnitCooperativity) {
  const double ka = 2e9, kc = 0.8e6;
  double best_c = 0.0, best = -1.0;
  for (int i = 1; i <= 4000; ++i) {
    const double c = 0.001 * i;
    const SusceptibilityTriplet xi{0.0, 0.0, std::sqrt(c * ka * kc / 4.0)};
    const double e = efficiency(xi, {Rate(0.9 * ka), Rate(ka)}, {Rate(0.7 * kc), Rate(kc)}, OperatingPoint{});
    if (e > best) best = e, best_c = c;
  }
  EXPECT_NEAR(best_c, 1.0, 1e-3);
}

TEST(Efficiency, NeverIncreasesWithIntrinsicLoss) {
  // triplets come from actual classes; an arbitrary xi_ac phase is not physical
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto lu = [&](double a, double b) { return std::exp(std::log(a) + u(rng) * std::log(b / a)); };
  for (int i = 0; i < 2000; ++i) {
    std::vector<CenterClass> cs;
    const int k = 1 + static_cast<int>(u(rng) * 3);
    for (int j = 0; j < k; ++j)
      cs.push_back(CenterClass{Rate(lu(1, 1e4)), Rate(lu(0.01, 10)), Rate(lu(1e4, 1e9)), Rate(lu(1e2, 1e6)),
                               Rate((u(rng) - 0.5) * 2e9), Rate((u(rng) - 0.5) * 2e6), Rate(lu(1e4, 1e8)),
                               lu(1e4, 1e10)});
    const OperatingPoint p{Rate((u(rng) - 0.5) * 2e6), Rate((u(rng) - 0.5) * 2e9)};
    const auto xi = susceptibilities(EnsembleSpec{cs}, p);
    const double ka = lu(1e7, 1e10), kc = lu(1e3, 1e7);
    double prev_a = 2.0, prev_c = 2.0;
    for (double extra : {0.0, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
      const double ea = efficiency(xi, {Rate(ka), Rate(ka * (1 + extra))}, lossless(kc), p);
      const double ec = efficiency(xi, lossless(ka), {Rate(kc), Rate(kc * (1 + extra))}, p);
      ASSERT_LE(ea, prev_a * (1 + 1e-12));
      ASSERT_LE(ec, prev_c * (1 + 1e-12));
      prev_a = ea, prev_c = ec;
    }
  }
}

TEST(Efficiency, DecompositionMatchesAtTheResonantPoint) {
  for (const auto& c : {tcenter(), ercenter(), tcenter(2.5e6, 9e6)}) {
    auto s = lossless_system(c);
    s.optical.kappa_in = Rate(3e7);
    s.microwave.kappa_in = Rate(2e4);
    const auto r = evaluate(s, OperatingPoint{});
    ASSERT_EQ(r.xi.xi_a.real(), 0.0);
    EXPECT_NEAR(r.eta_total / (r.eta_internal * r.eta_a * r.eta_c), 1.0, 1e-12);
  }
}

TEST(Cooperativity, Examples) {
  EXPECT_NEAR(cooperativity(2e7, Rate(2e9), Rate(0.8e6)), 1.0, 1e-15);
  EXPECT_EQ(cooperativity(0.0, Rate(2e9), Rate(0.8e6)), 0.0);
  const double c1 = cooperativity({3e6, 1e6}, Rate(1e9), Rate(1e6));
  EXPECT_NEAR(cooperativity({6e6, 2e6}, Rate(1e9), Rate(1e6)) / c1, 4.0, 1e-14);
  EXPECT_THROW(cooperativity(1.0, Rate(0.0), Rate(1.0)), DomainError);
}

TEST(Decomposition, Examples) {
  EXPECT_DOUBLE_EQ(efficiency_decomposition(1.0, Rate(1), Rate(2), Rate(1), Rate(4)).internal, 1.0);
  EXPECT_DOUBLE_EQ(efficiency_decomposition(3.0, Rate(1), Rate(2), Rate(1), Rate(4)).internal, 0.75);
  const auto d = efficiency_decomposition(1.0, Rate(2e9), Rate(2e9), Rate(8e5), Rate(8e5));
  EXPECT_DOUBLE_EQ(d.total, 1.0);
  const auto e = efficiency_decomposition(0.5, Rate(1), Rate(2), Rate(3), Rate(4));
  EXPECT_DOUBLE_EQ(e.optical, 0.5);
  EXPECT_DOUBLE_EQ(e.microwave, 0.75);
  EXPECT_DOUBLE_EQ(e.total, e.internal * 0.5 * 0.75);
  EXPECT_THROW(efficiency_decomposition(1.0, Rate(0), Rate(0), Rate(1), Rate(1)), DomainError);
}

TEST(AddedNoise, Examples) {
  const SusceptibilityTriplet xi{0.0, 0.0, 2e7};
  const ModeLoss a = lossless(2e9);
  EXPECT_NEAR(added_noise(xi, a, Rate(4e5), Rate(1e5), OperatingPoint{}, 0.1).n_mo, 0.025, 1e-15);
  const auto zero = added_noise(xi, a, Rate(4e5), Rate(1e5), OperatingPoint{}, 0.0);
  EXPECT_EQ(zero.n_mo, 0.0);
  EXPECT_EQ(zero.n_om, 0.0);
}

TEST(AddedNoise, LinesCrossAtMatchingForOverCoupledCavities) {
  const double ka = 2e9, kc = 0.8e6;
  const SusceptibilityTriplet xi{{0.0, 0.0}, {0.0, 0.0}, std::sqrt(ka * kc / 4.0)};
  const auto n = added_noise(xi, lossless(ka), Rate(kc), Rate(1e-3 * kc), OperatingPoint{}, 0.05);
  EXPECT_NEAR(n.n_om / n.n_mo, 1.0, 1e-12);
}

TEST(AddedNoise, InfiniteOnlyWithALiveSource) {
  const SusceptibilityTriplet xi{{0.0, -1.0}, {0.0, -1.0}, 0.0};
  EXPECT_TRUE(std::isinf(added_noise(xi, lossless(1e9), Rate(1e5), Rate(1e3), OperatingPoint{}, 0.1).n_om));
  EXPECT_EQ(added_noise(xi, lossless(1e9), Rate(1e5), Rate(1e3), OperatingPoint{}, 0.0).n_om, 0.0);
  EXPECT_EQ(added_noise(xi, lossless(1e9), Rate(1e5), Rate(0.0), OperatingPoint{}, 0.1).n_om, 0.0);
}

TEST(MatchingPump, TableOneValues) {
  EXPECT_NEAR(matching_pump_rabi(1e6, Rate(40), Rate(2e6), Rate(2e9), Rate(0.8e6)).hz(), 4e6, 1e-6);
  EXPECT_NEAR(matching_pump_rabi(1e7, Rate(300), Rate(3e4), Rate(2e9), Rate(0.8e6)).hz(), 4.5e6, 1e-6);
  EXPECT_DOUBLE_EQ(matching_pump_rabi(2e6, Rate(40), Rate(2e6), Rate(2e9), Rate(0.8e6)).hz(),
                   2 * matching_pump_rabi(1e6, Rate(40), Rate(2e6), Rate(2e9), Rate(0.8e6)).hz());
  EXPECT_THROW(matching_pump_rabi(1e6, Rate(40), Rate(2e6), Rate(0), Rate(1)), DomainError);
}

TEST(ThermalOccupation, Examples) {
  EXPECT_NEAR(thermal_occupation(5e9, 0.020), 6.1e-6, 0.1e-6);
  EXPECT_NEAR(thermal_occupation(5e9, 0.240), 0.58, 0.01);
  // independent: 1 / (exp(h f / k T) - 1) with the exponent computed separately
  const double x = 6.62607015e-34 * 5e9 / (1.380649e-23 * 0.1);
  EXPECT_NEAR(thermal_occupation(5e9, 0.1), 1.0 / std::expm1(x), 1e-15);
  EXPECT_EQ(thermal_occupation(5e9, 1e-4), 0.0);
  EXPECT_THROW(thermal_occupation(5e9, 0.0), DomainError);
  EXPECT_THROW(thermal_occupation(5e9, -1.0), DomainError);
}

TEST(Report, BudgetTotalsAreSums) {
  auto s = lossless_system(tcenter());
  s.optical.kappa_in = Rate(1e7);
  s.microwave.kappa_in = Rate(3e3);
  s.kappa_c_qp = Rate(120.0);
  const auto r = evaluate(s, {Rate(1e4), Rate(2e8)});
  const auto& b = r.budget;
  EXPECT_DOUBLE_EQ(b.kappa_a_total.hz(), (b.kappa_a_ex + b.kappa_a_in + b.kappa_a_center).hz());
  EXPECT_DOUBLE_EQ(b.kappa_c_total.hz(), (b.kappa_c_ex + b.kappa_c_in + b.kappa_c_qp + b.kappa_c_center).hz());
  EXPECT_GE(b.kappa_a_center.hz(), 0.0);
  EXPECT_GE(b.kappa_c_center.hz(), 0.0);
  EXPECT_NEAR(b.kappa_a_center.hz(), 2 * std::abs(r.xi.xi_a.imag()), 1e-9);
}

TEST(Report, EtaTotalBelowInternalAtResonance) {
  auto s = lossless_system(tcenter());
  s.optical.kappa_in = Rate(2e7);
  const auto r = evaluate(s, OperatingPoint{});
  EXPECT_LE(r.eta_total, r.eta_internal);
  EXPECT_LE(r.eta_total, r.eta_a * r.eta_c * (1 + 1e-12));
}
