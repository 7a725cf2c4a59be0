#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transduce/budget.hpp"
#include "transduce/response.hpp"

namespace transduce {

// ---------------------------------------------------------------- sweep

/// Uniform axis in Hz. `count` >= 2 and max > min.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 2;

  double at(std::size_t i) const;
  std::vector<double> values() const;
};
void validate(const Axis& axis, const char* name);

struct SweepCell {
  double eta = 0.0;
  double cooperativity = 0.0;
  double eta_internal = 0.0;
  double n_mo = 0.0;
  double n_om = 0.0;
  std::string error;  // non-empty when the cell failed; numbers are NaN then
};

/// Cells are stored row-major with omega as the row index.
struct SweepGrid {
  std::vector<double> omega_axis;
  std::vector<double> delta_axis;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t i_omega, std::size_t j_delta) const {
    return cells[i_omega * delta_axis.size() + j_delta];
  }
  /// Index of the largest finite eta; ties go to the lowest (omega, delta).
  std::optional<std::pair<std::size_t, std::size_t>> argmax() const;
  std::size_t failed_cells() const;
};

SweepGrid sweep(const System& system, const Axis& omega, const Axis& delta, int threads = 0);

// ---------------------------------------------------------------- contours

enum class ContourFamily { optical, microwave, matching };
const char* to_string(ContourFamily f);

/// Rectangle in (delta, omega). Each axis is sampled uniformly in
/// asinh(x / scale), which resolves structure near zero and far out in one
/// grid; scale <= 0 gives a uniform physical grid. Odd cell counts on a
/// symmetric window put the origin at a cell centre.
struct ContourWindow {
  double omega_min = 0.0;
  double omega_max = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  double omega_scale = 0.0;
  double delta_scale = 0.0;
  std::size_t omega_cells = 401;
  std::size_t delta_cells = 401;
};
void validate(const ContourWindow& w);

struct ContourOptions {
  double tolerance = 1e-6;       // relative residual accepted at a vertex
  double dedupe_fraction = 1e-3; // merge radius as a fraction of the mapped window diagonal
  double loss_ratio = 1.0;       // roots with 2|Im xi| above this times the local scale are pole lines
  bool matching = true;
  int threads = 0;
};

struct ContourVertex {
  double delta = 0.0;
  double omega = 0.0;
};

struct Polyline {
  std::vector<ContourVertex> vertices;
  bool closed = false;
};

struct Intersection {
  enum class Kind { origin, near_resonance };
  double delta = 0.0;
  double omega = 0.0;
  Kind kind = Kind::near_resonance;
  bool polished = false;
};
const char* to_string(Intersection::Kind k);

struct ContourSet {
  std::vector<Polyline> optical;
  std::vector<Polyline> microwave;
  std::vector<Polyline> matching;
  std::vector<Intersection> intersections;
  std::size_t rejected_roots = 0;  // sign changes discarded as pole crossings
};

/// Dispersion conditions evaluated with the system's susceptibilities:
///   optical   omega + Delta - Re xi_a
///   microwave omega - Re xi_c
///   matching  log(4 |xi_ac|^2 / (kappa_a kappa_c)) with non-center kappas
double contour_condition(ContourFamily family, const System& system, double delta, double omega);
/// Scale against which the residual of a vertex is judged.
double contour_scale(ContourFamily family, const System& system, double delta, double omega);

ContourSet trace_contours(const System& system, const ContourWindow& window, const ContourOptions& options = {});

// ---------------------------------------------------------------- design

enum class DesignVariable { omega_p, n_a, kappa_a_ex, kappa_c_ex };
const char* to_string(DesignVariable v);
DesignVariable design_variable_from_string(const std::string& name);

struct DesignInputs {
  double n_a = 0.0;
  Rate g12;
  Rate g13;
  Rate omega_p;
  Rate kappa_a_ex;
  Rate kappa_a_in;
  Rate kappa_c_ex;
  Rate kappa_c_in;  // every non-center microwave loss line
};

/// Unique positive solution of the strong-pump matching condition
/// Omega_p = 2 N g12 g13 / sqrt(kappa_a kappa_c) for the chosen variable.
/// The value already present in `inputs` for that variable is ignored.
double solve_matched_design(DesignVariable variable, const DesignInputs& inputs);
DesignInputs with_design_value(DesignInputs inputs, DesignVariable variable, double value);

struct MatchedDesign {
  DesignVariable variable = DesignVariable::omega_p;
  double value = 0.0;
  double exact_cooperativity = 0.0;  // at omega = Delta = 0 with center loss folded in
  bool within_tolerance = false;     // exact C within [0.95, 1.05]
};

/// Solves for `variable` and evaluates the exact cooperativity of the
/// resulting system (the system's ensemble supplies g, gamma and detunings).
MatchedDesign solve_and_check(DesignVariable variable, const System& system);
DesignInputs design_inputs(const System& system);
System apply_design(System system, DesignVariable variable, double value);

/// Density N_A giving exact C = 1 at the origin, with center loss included.
/// Returns nullopt when no positive solution exists.
std::optional<double> exact_matching_density(const System& system);

struct DensityPumpRow {
  double n_p = 0.0;
  double sigma13 = 0.0;
  double n_a = 0.0;
  double n_a_strong_pump = 0.0;
  double rho = 0.0;  // per cm^3 over the optical volume
  double omega_p = 0.0;
  double cooperativity = 0.0;
  double eta_total = 0.0;
  double eta_internal = 0.0;
  double eta_a = 0.0;
  double eta_c = 0.0;
  double n_mo = 0.0;
  double n_om = 0.0;
  double kappa_c_qp = 0.0;
  std::string error;
};

/// For each (N_p, sigma13) pair, matches the density and evaluates the full
/// inhomogeneous response and budget at omega = Delta = 0. The device's
/// ensemble must be Gaussian or an explicit list (then sigma13 must be 0).
std::vector<DensityPumpRow> density_pump_sweep(const Device& device, const std::vector<double>& n_p,
                                               const std::vector<double>& sigma13, int threads = 0);

// ---------------------------------------------------------------- optimize

struct OptimizeWindow {
  double omega_min = 0.0;
  double omega_max = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  std::size_t coarse_omega = 41;
  std::size_t coarse_delta = 41;
};

struct OptimizeOptions {
  double x_tolerance = 1e-10;  // normalized simplex size
  double f_tolerance = 1e-14;
  std::size_t max_iterations = 4000;
  int threads = 0;
};

struct OptimizeResult {
  double omega = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double coarse_omega = 0.0;
  double coarse_delta = 0.0;
  double coarse_eta = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool degenerate = false;  // the coarse landscape was identically zero
};

OptimizeResult optimize_operating_point(const System& system, const OptimizeWindow& window,
                                        const OptimizeOptions& options = {});

// ---------------------------------------------------------------- diagnostics

/// Two readings of the cooperativity gain of resonant over dispersive
/// operation, for a homogeneous class with N_A centers.
struct EnhancementReport {
  double coupling_ratio = 0.0;        // g12 g13 N / Omega^2
  double perturbative_factor = 0.0;   // (g12 g13 N / Omega^2 - 1)^2
  double detuning_multiple = 4.0;     // delta_1i = multiple * g_1i sqrt(N)
  double detuned_ratio = 0.0;         // C(delta = 0) / C(delta_1i) from the exact xi_ac
};

EnhancementReport enhancement_report(const CenterClass& homogeneous, double detuning_multiple = 4.0);

}  // namespace transduce
