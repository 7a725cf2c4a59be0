#include <cmath>
#include <limits>

#include "transduce/errors.hpp"
#include "transduce/explore.hpp"
#include "transduce/parallel.hpp"

namespace transduce {

double Axis::at(std::size_t i) const {
  if (i + 1 == count) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = at(i);
  return v;
}

void validate(const Axis& axis, const char* name) {
  const std::string n(name);
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) throw DomainError(n, "axis bounds must be finite");
  if (axis.count < 2) throw DomainError(n + ".points", "need at least 2 points");
  if (!(axis.max > axis.min)) throw DomainError(n, "axis must be strictly increasing");
}

std::optional<std::pair<std::size_t, std::size_t>> SweepGrid::argmax() const {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_eta = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < omega_axis.size(); ++i) {
    for (std::size_t j = 0; j < delta_axis.size(); ++j) {
      const double e = at(i, j).eta;
      if (std::isfinite(e) && e > best_eta) {
        best_eta = e;
        best = {i, j};
      }
    }
  }
  return best;
}

std::size_t SweepGrid::failed_cells() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.error.empty() ? 0 : 1;
  return n;
}

SweepGrid sweep(const System& system, const Axis& omega, const Axis& delta, int threads) {
  validate(omega, "sweep.omega");
  validate(delta, "sweep.delta");
  SweepGrid grid;
  grid.omega_axis = omega.values();
  grid.delta_axis = delta.values();
  grid.cells.resize(omega.count * delta.count);

  parallel_for(grid.cells.size(), threads, [&](std::size_t k) {
    const std::size_t i = k / delta.count;
    const std::size_t j = k % delta.count;
    SweepCell& cell = grid.cells[k];
    try {
      const OperatingPoint p{Rate(grid.omega_axis[i]), Rate(grid.delta_axis[j]), 0.0};
      const auto r = evaluate(system, p);
      cell.eta = r.eta_total;
      cell.cooperativity = r.cooperativity;
      cell.eta_internal = r.eta_internal;
      cell.n_mo = r.n_mo;
      cell.n_om = r.n_om;
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      cell = SweepCell{nan, nan, nan, nan, nan, e.what()};
    }
  });
  return grid;
}

}  // namespace transduce
