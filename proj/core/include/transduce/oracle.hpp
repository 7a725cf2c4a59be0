#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "transduce/model.hpp"
#include "transduce/response.hpp"

namespace transduce {

// Mean-field coupled-mode equations in the frame rotating at the signal
// frequencies (microwave at omega, optical at omega + Delta, pump phase
// removed). Unknowns are ordered
//   [a, c, P13_0, P12_0, P13_1, P12_1, ...]
// with P the collective polarization of a class (coupling g*sqrt(weight)).
// The dynamics read dX/dt = drive - M X. Input-output convention:
//   out = in - sqrt(kappa_ex) * mode.

enum class DrivePort { microwave, optical };
const char* to_string(DrivePort port);

struct LinearSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd drive;  // unit-amplitude input on the driven port
  DrivePort port = DrivePort::microwave;
  std::size_t classes = 0;
};

/// `optical` and `microwave` carry the non-center losses only; center loss
/// arises from the polarization damping.
LinearSystem assemble_linear_system(std::span<const CenterClass> classes, ModeLoss optical, ModeLoss microwave,
                                    const OperatingPoint& point, DrivePort port);

struct SteadyState {
  Eigen::VectorXcd amplitudes;
  std::complex<double> transmission;  // output amplitude on the opposite port
  double efficiency = 0.0;            // |transmission|^2
  double rcond = 0.0;                 // LU reciprocal condition estimate (diagnostic)
  double residual = 0.0;              // |M x - b| / (|M| |x| + |b|)
};

SteadyState solve_steady_state(const LinearSystem& system, ModeLoss optical, ModeLoss microwave);

double steady_state_efficiency(std::span<const CenterClass> classes, ModeLoss optical, ModeLoss microwave,
                               const OperatingPoint& point, DrivePort port);

/// Eigenvalues of -M, the generator of the free dynamics.
Eigen::VectorXcd dynamical_eigenvalues(const LinearSystem& system);
/// True when every eigenvalue of -M has a negative real part.
bool is_stable(const LinearSystem& system);

struct RingUpOptions {
  double rtol = 1e-9;
  double atol = 0.0;      // 0 selects rtol * 1e-6 * |b| / |M|
  double duration = 0.0;  // seconds; 0 selects 20 / (slowest decay rate)
  double initial_step = 0.0;
  std::size_t max_steps = 50'000'000;
  std::size_t max_samples = 4096;  // trajectory is decimated to about this many points
};

struct RingUpResult {
  std::vector<double> time;
  std::vector<std::complex<double>> a;
  std::vector<std::complex<double>> c;
  Eigen::VectorXcd final_state;
  double final_time = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  bool ok = true;
  std::string message;  // set when step control failed; final_state is the last good state
};

/// Integrates dX/dt = drive - M X from X(0) = 0 with an embedded
/// Dormand-Prince 5(4) pair. Time is in seconds with rates used as given.
RingUpResult transient_ring_up(const LinearSystem& system, const RingUpOptions& options = {});

}  // namespace transduce
