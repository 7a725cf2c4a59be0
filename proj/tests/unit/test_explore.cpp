#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "transduce/errors.hpp"
#include "transduce/explore.hpp"

using namespace transduce;
using transduce::testing::ercenter;
using transduce::testing::lossless_system;
using transduce::testing::tcenter;

namespace {

const Axis kOmega{-2e5, 2e5, 41};
const Axis kDelta{-5e9, 5e9, 41};

const ContourWindow kFullWindow{-4e6, 4e6, -2e11, 2e11, 2e3, 2e7, 801, 801};

Device broadened_device(double sigma13) {
  Device d;
  GaussianEnsembleSpec g;
  g.sigma13 = Rate(sigma13);
  g.sigma12 = Rate(1e5);
  g.n_total = 1e6;
  g.base = tcenter(1.0);
  d.ensemble = g;
  d.optical = CavityMode{Rate(2.26e14), Rate(2e9), Rate(2e7)};
  d.optical_loss = OpticalLossPolynomial{Rate(2e7), 0.0, 0.0};
  d.microwave = CavityMode{Rate(5e9), Rate(0.8e6), Rate(5e3)};
  d.pump = PumpRabiModel::from_calibration(Rate(4e6), 50.0);
  d.f_pump = 2.26e14 - 5e9;
  return d;
}

}  // namespace

TEST(Axis, ValuesAndValidation) {
  const Axis a{-1.0, 1.0, 5};
  const auto v = a.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), -1.0);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_EQ(v[2], 0.0);
  EXPECT_THROW(validate(Axis{0.0, 1.0, 1}, "x"), DomainError);
  EXPECT_THROW(validate(Axis{1.0, 0.0, 3}, "x"), DomainError);
}

TEST(Sweep, PumpOffIsDark) {
  const auto g = sweep(lossless_system(tcenter(1e6, 0.0)), Axis{-1e5, 1e5, 3}, Axis{-1e9, 1e9, 3});
  ASSERT_EQ(g.cells.size(), 9u);
  for (const auto& c : g.cells) EXPECT_EQ(c.eta, 0.0);
}

TEST(Sweep, MatchedTcenterPeaksAtOrigin) {
  const auto g = sweep(lossless_system(tcenter()), kOmega, kDelta);
  const auto am = g.argmax();
  ASSERT_TRUE(am);
  EXPECT_EQ(g.omega_axis[am->first], 0.0);
  EXPECT_EQ(g.delta_axis[am->second], 0.0);
  EXPECT_GE(g.at(am->first, am->second).eta_internal, 0.99);
  EXPECT_EQ(g.failed_cells(), 0u);
}

TEST(Sweep, UnderCoupledOpticsMovesTheMaximumOffOrigin) {
  const auto s = lossless_system(tcenter(), 0.25e9);
  const auto g = sweep(s, Axis{-2e5, 2e5, 81}, Axis{-5e9, 5e9, 201});
  const auto am = g.argmax();
  ASSERT_TRUE(am);
  const double origin = evaluate(s, OperatingPoint{}).eta_total;
  EXPECT_LT(origin, g.at(am->first, am->second).eta);
  EXPECT_NE(g.delta_axis[am->second], 0.0);
}

TEST(Sweep, BitIdenticalAcrossThreadCounts) {
  const auto s = lossless_system(tcenter());
  const auto a = sweep(s, kOmega, kDelta, 1);
  const auto b = sweep(s, kOmega, kDelta, 3);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].eta, b.cells[i].eta);
    EXPECT_EQ(a.cells[i].n_om, b.cells[i].n_om);
  }
}

TEST(Sweep, FailedCellsAreRecordedNotThrown) {
  // a class with zero linewidth is rejected per cell
  auto c = tcenter();
  c.gamma12 = Rate(0.0);
  const auto g = sweep(lossless_system(c), Axis{-1e5, 1e5, 3}, Axis{-1e9, 1e9, 3});
  EXPECT_EQ(g.failed_cells(), 9u);
  EXPECT_FALSE(g.cells[0].error.empty());
  EXPECT_TRUE(std::isnan(g.cells[0].eta));
  EXPECT_FALSE(g.argmax().has_value());
}

class TcenterContours : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { set_ = new ContourSet(trace_contours(lossless_system(tcenter()), kFullWindow)); }
  static void TearDownTestSuite() { delete set_; }
  static ContourSet* set_;
};
ContourSet* TcenterContours::set_ = nullptr;

TEST_F(TcenterContours, FiveIntersectionsIncludingOrigin) {
  ASSERT_EQ(set_->intersections.size(), 5u);
  int origins = 0;
  for (const auto& x : set_->intersections) {
    EXPECT_TRUE(x.polished);
    if (x.kind == Intersection::Kind::origin) {
      ++origins;
      EXPECT_LT(std::abs(x.omega), 1.0);
      EXPECT_LT(std::abs(x.delta), 1e3);
    }
  }
  EXPECT_EQ(origins, 1);
}

TEST_F(TcenterContours, IntersectionsSatisfyBothConditions) {
  const auto s = lossless_system(tcenter());
  for (const auto& x : set_->intersections) {
    for (auto f : {ContourFamily::optical, ContourFamily::microwave}) {
      EXPECT_LT(std::abs(contour_condition(f, s, x.delta, x.omega)), 1e-6 * contour_scale(f, s, x.delta, x.omega))
          << to_string(f);
    }
  }
}

TEST_F(TcenterContours, VerticesSatisfyTheirCondition) {
  const auto s = lossless_system(tcenter());
  const std::pair<ContourFamily, const std::vector<Polyline>*> fams[] = {
      {ContourFamily::optical, &set_->optical}, {ContourFamily::microwave, &set_->microwave}};
  std::size_t checked = 0;
  for (const auto& [f, lines] : fams) {
    for (const auto& p : *lines) {
      for (const auto& v : p.vertices) {
        ASSERT_LT(std::abs(contour_condition(f, s, v.delta, v.omega)), 1e-6 * contour_scale(f, s, v.delta, v.omega));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST_F(TcenterContours, MicrowaveBranchesApproachVacuumRabiLines) {
  const double edge = 100 * 2e9;  // 100 sqrt(N) g13
  int seen = 0;
  for (const auto& p : set_->microwave) {
    for (const auto& v : p.vertices) {
      if (std::abs(v.delta) < 0.98 * edge) continue;
      EXPECT_NEAR(std::abs(v.omega), 4e4, 0.05 * 4e4);
      ++seen;
    }
  }
  EXPECT_GE(seen, 4);
}

TEST_F(TcenterContours, OpticalBranchesApproachVacuumRabiLines) {
  int seen = 0;
  for (const auto& p : set_->optical) {
    for (const auto& v : p.vertices) {
      if (std::abs(v.omega) < 0.98 * 4e6 || std::abs(v.omega + v.delta) > 1e10) continue;
      EXPECT_NEAR(std::abs(v.omega + v.delta), 2e9, 0.05 * 2e9);
      ++seen;
    }
  }
  EXPECT_GE(seen, 4);
}

TEST(Contours, EmptyWindowGivesEmptySet) {
  // far from every feature the conditions never change sign
  const ContourWindow w{1e6, 2e6, 5e10, 6e10, 0.0, 0.0, 21, 21};
  const auto set = trace_contours(lossless_system(tcenter()), w);
  EXPECT_TRUE(set.microwave.empty());
  EXPECT_TRUE(set.intersections.empty());
}

TEST(Contours, MatchingFamilyPassesThroughOriginWhenMatched) {
  const ContourWindow w{-2e5, 2e5, -5e9, 5e9, 0.0, 0.0, 101, 101};
  const auto s = lossless_system(tcenter(), 0.25e9);
  const auto set = trace_contours(s, w);
  EXPECT_FALSE(set.matching.empty());
  // under-coupled optics: C > 1 at the origin so the matching line avoids it
  EXPECT_GT(contour_condition(ContourFamily::matching, s, 0.0, 0.0), 0.0);
}

TEST(Design, SolvesTableOneVariables) {
  const auto t = design_inputs(lossless_system(tcenter()));
  EXPECT_NEAR(solve_matched_design(DesignVariable::omega_p, t), 4e6, 1e-6);
  EXPECT_NEAR(solve_matched_design(DesignVariable::n_a, t), 1e6, 1e-6);
  EXPECT_NEAR(solve_matched_design(DesignVariable::kappa_a_ex, t), 2e9, 1e-3);
  EXPECT_NEAR(solve_matched_design(DesignVariable::kappa_c_ex, t), 0.8e6, 1e-6);
  const auto e = design_inputs(lossless_system(ercenter()));
  EXPECT_NEAR(solve_matched_design(DesignVariable::omega_p, e), 4.5e6, 1e-6);
}

TEST(Design, ExactCooperativityNearOneForTableOne) {
  for (const auto& c : {tcenter(), ercenter()}) {
    for (auto v : {DesignVariable::omega_p, DesignVariable::n_a, DesignVariable::kappa_a_ex, DesignVariable::kappa_c_ex}) {
      const auto m = solve_and_check(v, lossless_system(c));
      EXPECT_TRUE(m.within_tolerance) << to_string(v);
      EXPECT_NEAR(m.exact_cooperativity, 1.0, 0.05);
    }
  }
}

TEST(Design, NoPositiveSolutionIsSignaled) {
  auto s = lossless_system(tcenter());
  s.optical.kappa_in = Rate(5e9);  // intrinsic loss already beyond the required total
  EXPECT_THROW(solve_matched_design(DesignVariable::kappa_a_ex, design_inputs(s)), DomainError);
  EXPECT_THROW(design_variable_from_string("gamma13"), ConfigError);
}

TEST(Design, ExactMatchingDensityGivesUnitCooperativity) {
  auto s = lossless_system(tcenter());
  s.optical.kappa_in = Rate(2e7);
  const auto n = exact_matching_density(s);
  ASSERT_TRUE(n);
  const auto r = evaluate(apply_design(s, DesignVariable::n_a, *n), OperatingPoint{});
  EXPECT_NEAR(r.cooperativity, 1.0, 1e-9);
}

TEST(DensityPump, ZeroWidthRowIsHomogeneous) {
  Device d = broadened_device(0.0);
  std::get<GaussianEnsembleSpec>(d.ensemble).sigma12 = Rate(0.0);
  const auto rows = density_pump_sweep(d, {50.0}, {0.0});
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_TRUE(rows[0].error.empty()) << rows[0].error;
  Device h = d;
  h.ensemble = std::vector<CenterClass>{tcenter(rows[0].n_a)};
  const auto r = evaluate(resolve_system(h, 50.0), OperatingPoint{});
  EXPECT_NEAR(rows[0].eta_total / r.eta_total, 1.0, 1e-12);
  EXPECT_NEAR(rows[0].cooperativity, 1.0, 1e-9);
}

TEST(DensityPump, EfficiencyRisesThenFallsWithPump) {
  Device d = broadened_device(3e7);
  d.superconductor.kappa_b_sc = Rate(3e4);  // strong leakage makes the turnover visible early
  const std::vector<double> np{10, 30, 100, 300, 1000, 3000, 1e4, 3e4, 1e5};
  const auto rows = density_pump_sweep(d, np, {3e7});
  std::vector<double> eta;
  for (const auto& r : rows) eta.push_back(r.error.empty() ? r.eta_total : 0.0);
  const auto peak = std::max_element(eta.begin(), eta.end()) - eta.begin();
  EXPECT_GT(peak, 0);
  EXPECT_LT(peak, static_cast<long>(eta.size()) - 1);
  for (long i = 1; i <= peak; ++i) EXPECT_GE(eta[i], eta[i - 1]);
  for (std::size_t i = peak + 1; i < eta.size(); ++i) EXPECT_LE(eta[i], eta[i - 1]);
}

TEST(DensityPump, WiderBroadeningNeedsMorePump) {
  const std::vector<double> np{5, 10, 20, 50, 100, 200, 500, 1000, 2000};
  const std::vector<double> sig{1e7, 3e7, 1e8};
  const auto rows = density_pump_sweep(broadened_device(3e7), np, sig);
  auto first_reaching = [&](double s, double level) {
    for (const auto& r : rows)
      if (r.sigma13 == s && r.error.empty() && r.eta_total >= level) return r.n_p;
    return std::numeric_limits<double>::infinity();
  };
  EXPECT_LT(first_reaching(1e7, 0.9), first_reaching(3e7, 0.9));
  EXPECT_LT(first_reaching(3e7, 0.9), first_reaching(1e8, 0.9));
  EXPECT_TRUE(std::isfinite(first_reaching(1e8, 0.9)));
}

TEST(Optimize, MatchedHomogeneousLandsOnOrigin) {
  const OptimizeWindow w{-2e5, 2e5, -5e9, 5e9, 41, 41};
  const auto r = optimize_operating_point(lossless_system(tcenter()), w);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.omega, 0.0, 1e-6 * 4e5);
  EXPECT_NEAR(r.delta, 0.0, 1e-6 * 1e10);
  EXPECT_GE(r.eta, r.coarse_eta);
}

TEST(Optimize, RefinementNeverLosesToTheCoarseGrid) {
  const OptimizeWindow w{-2e5, 2e5, -5e9, 5e9, 21, 21};
  const auto r = optimize_operating_point(lossless_system(tcenter(), 0.25e9), w);
  EXPECT_GE(r.eta, r.coarse_eta);
  EXPECT_GT(r.eta, evaluate(lossless_system(tcenter(), 0.25e9), OperatingPoint{}).eta_total);
}

TEST(Optimize, DarkLandscapeIsDegenerate) {
  const OptimizeWindow w{-2e5, 2e5, -5e9, 4e9, 11, 11};
  const auto r = optimize_operating_point(lossless_system(tcenter(1e6, 0.0)), w);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.eta, 0.0);
  EXPECT_EQ(r.omega, 0.0);
  EXPECT_EQ(r.delta, -0.5e9);
}

TEST(Enhancement, DiagnosticValues) {
  const auto t = enhancement_report(tcenter());
  EXPECT_NEAR(t.coupling_ratio, 5.0, 1e-12);
  EXPECT_NEAR(t.perturbative_factor, 16.0, 1e-12);
  const auto e = enhancement_report(ercenter());
  EXPECT_NEAR(e.coupling_ratio, 1e7 * 300 * 3e4 / 2.025e13, 1e-12);
  EXPECT_NEAR(e.perturbative_factor, std::pow(e.coupling_ratio - 1, 2), 1e-12);
  EXPECT_NEAR(t.detuned_ratio, 6241.0, 0.01 * 6241.0);
  EXPECT_GT(e.detuned_ratio, 1.0);
}
