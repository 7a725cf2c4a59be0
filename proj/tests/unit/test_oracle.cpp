#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "transduce/errors.hpp"
#include "transduce/oracle.hpp"

using namespace transduce;
using transduce::testing::ercenter;
using transduce::testing::tcenter;

namespace {

const ModeLoss kOptical{Rate(2e9), Rate(2e9)};
const ModeLoss kMicrowave{Rate(0.8e6), Rate(0.8e6)};

double closed_form(const std::vector<CenterClass>& cs, ModeLoss a, ModeLoss c, const OperatingPoint& p) {
  return efficiency(susceptibilities(cs, p), a, c, p);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(Oracle, MatrixShape) {
  const std::vector<CenterClass> cs{tcenter(), ercenter(), tcenter(5.0)};
  const auto sys = assemble_linear_system(cs, kOptical, kMicrowave, OperatingPoint{}, DrivePort::microwave);
  EXPECT_EQ(sys.matrix.rows(), 8);
  EXPECT_EQ(sys.matrix.cols(), 8);
  EXPECT_EQ(sys.drive.size(), 8);
  EXPECT_EQ(sys.classes, 3u);
}

TEST(Oracle, NoCentersNoConversion) {
  const std::vector<CenterClass> none;
  EXPECT_EQ(steady_state_efficiency(none, kOptical, kMicrowave, OperatingPoint{}, DrivePort::microwave), 0.0);
  EXPECT_EQ(steady_state_efficiency(none, kOptical, kMicrowave, OperatingPoint{}, DrivePort::optical), 0.0);
}

TEST(Oracle, MatchedTcenterAgreesWithClosedForm) {
  const std::vector<CenterClass> cs{tcenter()};
  const double o = steady_state_efficiency(cs, kOptical, kMicrowave, OperatingPoint{}, DrivePort::microwave);
  EXPECT_LT(rel(o, closed_form(cs, kOptical, kMicrowave, OperatingPoint{})), 1e-9);
  EXPECT_GT(o, 0.999);
}

TEST(Oracle, BothPortsAgree) {
  std::vector<CenterClass> cs;
  for (int k = 0; k < 12; ++k) {
    auto c = tcenter(1e5);
    c.delta13 = Rate(5e6 * (k - 6));
    c.delta12 = Rate(1e4 * (k % 5 - 2));
    cs.push_back(c);
  }
  const ModeLoss a{Rate(1.5e9), Rate(2e9)}, m{Rate(6e5), Rate(8e5)};
  for (const OperatingPoint p : {OperatingPoint{}, OperatingPoint{Rate(3e4), Rate(-2e9)}, OperatingPoint{Rate(-1e5), Rate(7e8)}}) {
    const double mw = steady_state_efficiency(cs, a, m, p, DrivePort::microwave);
    const double op = steady_state_efficiency(cs, a, m, p, DrivePort::optical);
    EXPECT_LE(rel(mw, op), 1e-12);
  }
}

TEST(Oracle, RandomDrawsAgreeWithClosedForm) {
  std::mt19937_64 rng(2024);
  auto logu = [&](double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
  };
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 300; ++draw) {
    const int k = 1 + draw % 32;
    std::vector<CenterClass> cs;
    for (int i = 0; i < k; ++i)
      cs.push_back({Rate(logu(1, 1e4)), Rate(logu(1e-2, 10)), Rate(logu(1e4, 1e9)), Rate(logu(1e2, 1e6)),
                    Rate(1e9 * u(rng)), Rate(1e6 * u(rng)), Rate(logu(1e4, 1e8)), logu(1e2, 1e9)});
    const ModeLoss a{Rate(logu(1e7, 1e10)), Rate(0)}, m{Rate(logu(1e3, 1e7)), Rate(0)};
    const ModeLoss at{a.external, a.external + Rate(logu(1e5, 1e9))};
    const ModeLoss mt{m.external, m.external + Rate(logu(1e2, 1e6))};
    const OperatingPoint p{Rate(2 * mt.total.hz() * u(rng)), Rate(2 * at.total.hz() * u(rng))};
    const double o = steady_state_efficiency(cs, at, mt, p, DrivePort::microwave);
    worst = std::max(worst, rel(o, closed_form(cs, at, mt, p)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Oracle, StableForPhysicalInputs) {
  const std::vector<CenterClass> cs{tcenter(), ercenter()};
  const auto sys = assemble_linear_system(cs, kOptical, kMicrowave, {Rate(1e3), Rate(1e8)}, DrivePort::microwave);
  EXPECT_TRUE(is_stable(sys));
  const auto ev = dynamical_eigenvalues(sys);
  for (Eigen::Index i = 0; i < ev.size(); ++i) EXPECT_LT(ev[i].real(), 0.0);
}

TEST(Oracle, SingularSystemIsADomainError) {
  // zeroing the driven row leaves an inconsistent system
  const std::vector<CenterClass> cs{tcenter()};
  auto sys = assemble_linear_system(cs, kOptical, kMicrowave, OperatingPoint{}, DrivePort::microwave);
  sys.matrix.row(1).setZero();
  EXPECT_THROW(solve_steady_state(sys, kOptical, kMicrowave), DomainError);
  const ModeLoss none{Rate(0), Rate(0)};
  EXPECT_THROW(assemble_linear_system(cs, none, none, OperatingPoint{}, DrivePort::microwave), DomainError);
}

TEST(RingUp, ZeroDriveStaysAtVacuum) {
  auto sys = assemble_linear_system(std::vector<CenterClass>{tcenter()}, kOptical, kMicrowave, OperatingPoint{},
                                    DrivePort::microwave);
  sys.drive.setZero();
  RingUpOptions opt;
  opt.duration = 1e-4;
  const auto r = transient_ring_up(sys, opt);
  ASSERT_TRUE(r.ok) << r.message;
  for (const auto& a : r.a) EXPECT_EQ(a, 0.0);
  for (const auto& c : r.c) EXPECT_EQ(c, 0.0);
}

TEST(RingUp, MatchedTcenterConvergesToSteadyState) {
  const std::vector<CenterClass> cs{tcenter()};
  const auto sys = assemble_linear_system(cs, kOptical, kMicrowave, OperatingPoint{}, DrivePort::microwave);
  const auto ss = solve_steady_state(sys, kOptical, kMicrowave);
  RingUpOptions opt;
  opt.rtol = 1e-9;
  const auto r = transient_ring_up(sys, opt);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_LT(rel(std::abs(r.final_state[0]), std::abs(ss.amplitudes[0])), 1e-6);
  EXPECT_LT(rel(std::abs(r.final_state[1]), std::abs(ss.amplitudes[1])), 1e-6);
  ASSERT_FALSE(r.time.empty());
  EXPECT_EQ(r.time.front(), 0.0);
  EXPECT_EQ(r.a.front(), 0.0);
}

TEST(RingUp, WeakCouplingTimeConstantIsTwoOverKappa) {
  // negligible coupling: each amplitude relaxes as exp(-kappa t / 2)
  auto c = tcenter(1e-6, 1.0);
  c.gamma12 = Rate(5e7);
  c.gamma13 = Rate(5e9);
  const ModeLoss a{Rate(1e9), Rate(1e9)}, m{Rate(1e6), Rate(1e6)};
  const auto sys = assemble_linear_system(std::vector<CenterClass>{c}, a, m, OperatingPoint{}, DrivePort::microwave);
  const auto ev = dynamical_eigenvalues(sys);
  double slowest = -INFINITY;
  for (Eigen::Index i = 0; i < ev.size(); ++i) slowest = std::max(slowest, ev[i].real());
  EXPECT_NEAR(-1.0 / slowest, 2.0 / 1e6, 1e-9);

  RingUpOptions opt;
  opt.duration = 10.0 / 1e6;
  const auto r = transient_ring_up(sys, opt);
  ASSERT_TRUE(r.ok);
  // microwave amplitude follows c_ss (1 - exp(-t kappa_c / 2))
  const double c_ss = std::abs(solve_steady_state(sys, a, m).amplitudes[1]);
  for (std::size_t i = 1; i < r.time.size(); i += r.time.size() / 7) {
    const double expected = c_ss * (1.0 - std::exp(-0.5e6 * r.time[i]));
    EXPECT_NEAR(std::abs(r.c[i]), expected, 1e-6 * c_ss) << r.time[i];
  }
}
