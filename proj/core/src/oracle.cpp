#include "transduce/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "transduce/errors.hpp"

namespace transduce {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void require_losses(ModeLoss m, const char* name) {
  const std::string n(name);
  if (!(m.external.hz() >= 0.0) || !std::isfinite(m.external.hz())) throw DomainError(n + ".kappa_ex", "must be >= 0");
  if (!(m.total.hz() > 0.0) || m.total < m.external)
    throw DomainError(n + ".kappa", "total loss must be > 0 and >= external coupling");
}

}  // namespace

const char* to_string(DrivePort port) { return port == DrivePort::microwave ? "microwave" : "optical"; }

LinearSystem assemble_linear_system(std::span<const CenterClass> classes, ModeLoss optical, ModeLoss microwave,
                                    const OperatingPoint& point, DrivePort port) {
  require_losses(optical, "optical");
  require_losses(microwave, "microwave");
  const double w = point.omega.hz();
  const double d = point.delta.hz();
  const auto k = classes.size();
  const auto n = static_cast<Eigen::Index>(2 + 2 * k);

  LinearSystem s;
  s.port = port;
  s.classes = k;
  s.matrix = Eigen::MatrixXcd::Zero(n, n);
  s.drive = Eigen::VectorXcd::Zero(n);
  auto& m = s.matrix;
  m(0, 0) = 0.5 * optical.total.hz() - kI * (w + d);
  m(1, 1) = 0.5 * microwave.total.hz() - kI * w;

  for (std::size_t j = 0; j < k; ++j) {
    const auto& cl = classes[j];
    validate(cl);
    const auto p3 = static_cast<Eigen::Index>(2 + 2 * j);
    const auto p2 = p3 + 1;
    const double root_w = std::sqrt(cl.weight);
    const double g13 = cl.g13.hz() * root_w;
    const double g12 = cl.g12.hz() * root_w;
    m(0, p3) = kI * g13;
    m(1, p2) = kI * g12;
    m(p3, p3) = 0.5 * cl.gamma13.hz() + kI * (cl.delta13.hz() - w - d);
    m(p3, 0) = kI * g13;
    m(p3, p2) = kI * cl.omega_p.hz();
    m(p2, p2) = 0.5 * cl.gamma12.hz() + kI * (cl.delta12.hz() - w);
    m(p2, 1) = kI * g12;
    m(p2, p3) = kI * cl.omega_p.hz();
  }

  if (port == DrivePort::microwave)
    s.drive(1) = std::sqrt(microwave.external.hz());
  else
    s.drive(0) = std::sqrt(optical.external.hz());
  return s;
}

SteadyState solve_steady_state(const LinearSystem& system, ModeLoss optical, ModeLoss microwave) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.matrix);
  SteadyState out;
  out.rcond = lu.rcond();
  out.amplitudes = lu.solve(system.drive);

  const double scale = system.matrix.cwiseAbs().rowwise().sum().maxCoeff() * out.amplitudes.cwiseAbs().maxCoeff() +
                       system.drive.cwiseAbs().maxCoeff();
  const double r = (system.matrix * out.amplitudes - system.drive).cwiseAbs().maxCoeff();
  out.residual = scale > 0.0 ? r / scale : 0.0;
  if (!out.amplitudes.allFinite() || !(out.residual < 1e-8)) {
    throw DomainError("oracle", "singular coupled-mode matrix (rcond estimate " + std::to_string(out.rcond) +
                                    ", residual " + std::to_string(out.residual) + ")");
  }

  if (system.port == DrivePort::microwave)
    out.transmission = -std::sqrt(optical.external.hz()) * out.amplitudes(0);
  else
    out.transmission = -std::sqrt(microwave.external.hz()) * out.amplitudes(1);
  out.efficiency = std::norm(out.transmission);
  return out;
}

double steady_state_efficiency(std::span<const CenterClass> classes, ModeLoss optical, ModeLoss microwave,
                               const OperatingPoint& point, DrivePort port) {
  const auto sys = assemble_linear_system(classes, optical, microwave, point, port);
  return solve_steady_state(sys, optical, microwave).efficiency;
}

Eigen::VectorXcd dynamical_eigenvalues(const LinearSystem& system) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(-system.matrix, false);
  if (es.info() != Eigen::Success) throw DomainError("oracle", "eigenvalue iteration did not converge");
  return es.eigenvalues();
}

bool is_stable(const LinearSystem& system) {
  const auto ev = dynamical_eigenvalues(system);
  return (ev.real().array() < 0.0).all();
}

RingUpResult transient_ring_up(const LinearSystem& system, const RingUpOptions& opt) {
  // Dormand-Prince 5(4) tableau.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (!(opt.rtol > 0.0)) throw DomainError("ring_up.rtol", "must be > 0");
  const auto& m = system.matrix;
  const auto& b = system.drive;
  const auto n = m.rows();

  RingUpResult res;
  res.final_state = Eigen::VectorXcd::Zero(n);
  if (n == 0) return res;

  const auto ev = dynamical_eigenvalues(system);
  const double slowest = (-ev.real().array()).minCoeff();
  const double fastest = ev.cwiseAbs().maxCoeff();
  if (!(slowest > 0.0)) throw DomainError("ring_up", "system is not stable; no steady state to approach");

  const double duration = opt.duration > 0.0 ? opt.duration : 20.0 / slowest;
  const double m_norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  const double b_norm = b.cwiseAbs().maxCoeff();
  const double atol = opt.atol > 0.0 ? opt.atol : std::max(opt.rtol * 1e-6 * b_norm / m_norm, 1e-300);
  double h = opt.initial_step > 0.0 ? opt.initial_step : std::min(duration, 0.5 / fastest);

  const double sample_dt = duration / static_cast<double>(std::max<std::size_t>(opt.max_samples, 2) - 1);
  double next_sample = 0.0;
  auto record = [&](double t, const Eigen::VectorXcd& x) {
    res.time.push_back(t);
    res.a.push_back(x(0));
    res.c.push_back(x(1));
  };

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  auto f = [&](const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return b - m * y; };
  record(0.0, x);
  next_sample = sample_dt;

  Eigen::VectorXcd k1 = f(x), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y(n), err(n);
  double t = 0.0;
  std::size_t steps = 0;
  constexpr double safety = 0.9, min_factor = 0.2, max_factor = 5.0;

  while (t < duration) {
    if (duration - t <= 1e-12 * duration) break;  // rounding remainder of the last step
    if (++steps > opt.max_steps) {
      res.ok = false;
      res.message = "step budget exhausted at t = " + std::to_string(t);
      break;
    }
    h = std::min(h, duration - t);
    if (h <= std::numeric_limits<double>::epsilon() * std::max(t, 1e-30)) {
      res.ok = false;
      res.message = "step size underflow at t = " + std::to_string(t);
      break;
    }
    k2 = f(x + h * (a21 * k1));
    k3 = f(x + h * (a31 * k1 + a32 * k2));
    k4 = f(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    k5 = f(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    k6 = f(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = f(y);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = atol + opt.rtol * std::max(std::abs(x(i)), std::abs(y(i)));
      norm = std::max(norm, std::abs(err(i)) / sc);
    }
    if (!std::isfinite(norm)) {
      res.ok = false;
      res.message = "non-finite error estimate at t = " + std::to_string(t);
      break;
    }
    if (norm <= 1.0) {
      t += h;
      x = y;
      k1 = k7;
      ++res.accepted;
      if (t >= next_sample || t >= duration) {
        record(t, x);
        while (next_sample <= t) next_sample += sample_dt;
      }
      const double factor = norm == 0.0 ? max_factor : std::clamp(safety * std::pow(norm, -0.2), min_factor, max_factor);
      h *= factor;
    } else {
      ++res.rejected;
      h *= std::max(min_factor, safety * std::pow(norm, -0.2));
    }
  }
  res.final_state = x;
  res.final_time = t;
  return res;
}

}  // namespace transduce
