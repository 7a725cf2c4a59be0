#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "transduce/ensemble.hpp"
#include "transduce/errors.hpp"

using namespace transduce;
using transduce::testing::broadened_tcenter;
using transduce::testing::tcenter;

namespace {

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Discretize, ZeroWidthCollapsesToOneClass) {
  GaussianEnsembleSpec g;
  g.mean13 = Rate(1e6);
  g.mean12 = Rate(-2e3);
  g.n_total = 1e6;
  g.base = tcenter(1.0);
  g.rule = QuadratureRule::product;
  const auto cs = discretize(g);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].delta13, Rate(1e6));
  EXPECT_EQ(cs[0].delta12, Rate(-2e3));
  EXPECT_EQ(cs[0].weight, 1e6);
}

TEST(Discretize, WeightsSumToTotalAndMirror) {
  auto g = broadened_tcenter(17, QuadratureRule::product);
  g.n_total = 3.7e6;
  g.nodes12 = 12;
  const auto cs = discretize(g);
  ASSERT_EQ(cs.size(), 17u * 12u);
  double sum = 0.0;
  for (const auto& c : cs) sum += c.weight;
  EXPECT_NEAR(sum / 3.7e6, 1.0, 1e-12);
  // mirror images are stored as adjacent pairs
  for (std::size_t i = 0; i + 1 < cs.size(); i += 2) {
    const auto& a = cs[i];
    const auto& b = cs[i + 1];
    EXPECT_EQ(a.delta13.hz(), -b.delta13.hz());
    EXPECT_EQ(a.delta12.hz(), -b.delta12.hz());
    EXPECT_EQ(a.weight, b.weight);
  }
}

TEST(Discretize, RejectsZeroNodes) {
  auto g = broadened_tcenter(0);
  EXPECT_THROW(discretize(g), DomainError);
  g = broadened_tcenter(4);
  g.sigma13 = Rate(-1.0);
  EXPECT_THROW(discretize(g), DomainError);
}

TEST(EnsembleSusceptibilities, RulesAgreeForNarrowBroadening) {
  // widths well below the pump-split lines: both rules converge quickly
  auto g = broadened_tcenter(48, QuadratureRule::product);
  g.sigma13 = Rate(1e6);
  g.sigma12 = Rate(1e3);
  auto h = g;
  h.rule = QuadratureRule::hermite_voigt;
  const OperatingPoint p{Rate(1e4), Rate(3e6)};
  const auto a = ensemble_susceptibilities(g, p);
  const auto b = ensemble_susceptibilities(h, p);
  EXPECT_LT(rel(a.xi_a, b.xi_a), 1e-8);
  EXPECT_LT(rel(a.xi_c, b.xi_c), 1e-8);
  EXPECT_LT(rel(a.xi_ac, b.xi_ac), 1e-8);
}

TEST(EnsembleSusceptibilities, ZeroMeanIsPurelyDissipativeAtOrigin) {
  for (auto rule : {QuadratureRule::product, QuadratureRule::hermite_voigt}) {
    for (int n : {8, 32, 33}) {
      const auto xi = ensemble_susceptibilities(broadened_tcenter(n, rule), OperatingPoint{});
      EXPECT_LE(std::abs(xi.xi_a.real()), 1e-9 * std::abs(xi.xi_a.imag())) << to_string(rule) << n;
      EXPECT_LE(std::abs(xi.xi_c.real()), 1e-9 * std::abs(xi.xi_c.imag())) << to_string(rule) << n;
    }
  }
}

TEST(EnsembleSusceptibilities, MatchesMonteCarloWithinThreeStandardErrors) {
  const auto g = broadened_tcenter(32);
  for (const OperatingPoint p : {OperatingPoint{}, OperatingPoint{Rate(2e4), Rate(5e7)}}) {
    const auto q = ensemble_susceptibilities(g, p);
    const auto mc = monte_carlo_susceptibilities(g, p, 200000, 99);
    auto within = [](std::complex<double> v, std::complex<double> m, std::complex<double> se) {
      return std::abs(v.real() - m.real()) <= 3 * se.real() + 1e-300 &&
             std::abs(v.imag() - m.imag()) <= 3 * se.imag() + 1e-300;
    };
    EXPECT_TRUE(within(q.xi_a, mc.mean.xi_a, mc.standard_error.xi_a)) << q.xi_a << " vs " << mc.mean.xi_a;
    EXPECT_TRUE(within(q.xi_c, mc.mean.xi_c, mc.standard_error.xi_c)) << q.xi_c << " vs " << mc.mean.xi_c;
    EXPECT_TRUE(within(q.xi_ac, mc.mean.xi_ac, mc.standard_error.xi_ac)) << q.xi_ac << " vs " << mc.mean.xi_ac;
  }
}

TEST(MonteCarlo, ReproducibleForAFixedSeed) {
  const auto g = broadened_tcenter();
  const auto a = monte_carlo_susceptibilities(g, OperatingPoint{}, 5000, 42);
  const auto b = monte_carlo_susceptibilities(g, OperatingPoint{}, 5000, 42);
  const auto c = monte_carlo_susceptibilities(g, OperatingPoint{}, 5000, 43);
  EXPECT_EQ(a.mean.xi_ac, b.mean.xi_ac);
  EXPECT_NE(a.mean.xi_ac, c.mean.xi_ac);
}

TEST(Convergence, ZeroWidthConvergesAtOneNode) {
  GaussianEnsembleSpec g;
  g.n_total = 1e6;
  g.base = tcenter(1.0);
  const auto r = convergence_check(g, OperatingPoint{}, 1e-6);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.nodes, 1);
}

TEST(Convergence, BroadenedTcenterPinnedOrder) {
  // regression value for the 30 MHz / 100 kHz widths at the origin
  const auto r = convergence_check(broadened_tcenter(), OperatingPoint{}, 1e-6);
  EXPECT_TRUE(r.converged) << r.diagnostics;
  EXPECT_EQ(r.nodes, 256);
  EXPECT_LT(r.last_change, 1e-6);
}

TEST(Convergence, StrongPumpConvergesAtLowerOrder) {
  auto weak = broadened_tcenter();
  weak.base.omega_p = Rate(1e5);
  auto strong = broadened_tcenter();
  strong.base.omega_p = Rate(1e9);
  const auto rw = convergence_check(weak, OperatingPoint{}, 1e-6);
  const auto rs = convergence_check(strong, OperatingPoint{}, 1e-6);
  ASSERT_TRUE(rs.converged);
  EXPECT_LT(rs.nodes, rw.converged ? rw.nodes : 1 << 20);
}

TEST(Convergence, ReportsFailureAtTheCap) {
  const auto r = convergence_check(broadened_tcenter(), OperatingPoint{}, 1e-15, 16);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Convergence, ProductRuleIsNotConvergedAtThirtyTwoNodes) {
  // the optical width (30 MHz) dwarfs the 1 Hz spin linewidth, so a product
  // rule keeps resolving spikes in delta12 long after the Voigt rule settles
  const auto p32 = ensemble_susceptibilities(broadened_tcenter(32, QuadratureRule::product), OperatingPoint{});
  const auto ref = ensemble_susceptibilities(broadened_tcenter(512), OperatingPoint{});
  EXPECT_GT(rel(p32.xi_c, ref.xi_c), 1e-2);
}

TEST(CrossTerm, SuppressedByBroadeningAtWeakPumpAndRecoveredAtStrongPump) {
  auto ratio = [](double omega_p) {
    auto g = broadened_tcenter(256);
    g.base.omega_p = Rate(omega_p);
    const auto ib = ensemble_susceptibilities(g, OperatingPoint{});
    auto h = tcenter(1e6, omega_p);
    const auto hom = susceptibilities(std::vector<CenterClass>{h}, OperatingPoint{});
    return std::abs(ib.xi_ac) / std::abs(hom.xi_ac);
  };
  EXPECT_LT(ratio(1e6), 0.6);
  EXPECT_NEAR(ratio(1e9), 1.0, 0.01);
  EXPECT_NEAR(ratio(1e10), 1.0, 1e-3);
  EXPECT_LT(std::abs(ratio(1e10) - 1.0), std::abs(ratio(1e9) - 1.0));
}

TEST(EnsembleSpecHelpers, TotalWeightAndPumpOverride) {
  EnsembleSpec e = broadened_tcenter();
  EXPECT_EQ(total_weight(e), 1e6);
  e = with_total_weight(e, 2e6);
  EXPECT_EQ(total_weight(e), 2e6);
  e = with_pump_rabi(e, Rate(7e6));
  EXPECT_EQ(std::get<GaussianEnsembleSpec>(e).base.omega_p, Rate(7e6));
  const EnsembleSpec list = std::vector<CenterClass>{tcenter(2.0), tcenter(3.0)};
  EXPECT_EQ(total_weight(list), 5.0);
  EXPECT_EQ(total_weight(with_total_weight(list, 10.0)), 10.0);
}

TEST(EnsembleSpecHelpers, ExplicitClassesCapsNodes) {
  const auto cs = explicit_classes(broadened_tcenter(32), 5);
  EXPECT_EQ(cs.size(), 25u);
}
