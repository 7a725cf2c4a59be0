#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "transduce/errors.hpp"
#include "transduce/explore.hpp"
#include "transduce/parallel.hpp"

namespace transduce {

namespace {

struct Vertex {
  std::array<double, 2> x;  // normalized (omega, delta) in [0, 1]
  double f = 0.0;           // -eta
};

// Lower f first; equal f resolved by lowest (omega, delta).
bool better(const Vertex& a, const Vertex& b) {
  if (a.f != b.f) return a.f < b.f;
  return a.x < b.x;
}

}  // namespace

OptimizeResult optimize_operating_point(const System& system, const OptimizeWindow& w, const OptimizeOptions& opt) {
  if (!(w.omega_max > w.omega_min) || !(w.delta_max > w.delta_min))
    throw DomainError("optimize.window", "window must be strictly increasing on both axes");
  if (w.coarse_omega < 2 || w.coarse_delta < 2) throw DomainError("optimize.coarse", "need at least 2 points per axis");

  OptimizeResult res;
  auto to_physical = [&](const std::array<double, 2>& x) {
    return std::pair{w.omega_min + x[0] * (w.omega_max - w.omega_min), w.delta_min + x[1] * (w.delta_max - w.delta_min)};
  };
  auto eta_at = [&](std::array<double, 2> x) {
    x[0] = std::clamp(x[0], 0.0, 1.0);
    x[1] = std::clamp(x[1], 0.0, 1.0);
    const auto [om, de] = to_physical(x);
    try {
      const double e = evaluate(system, OperatingPoint{Rate(om), Rate(de), 0.0}).eta_total;
      return std::isfinite(e) ? e : 0.0;
    } catch (const DomainError&) {
      return 0.0;
    }
  };

  const std::size_t no = w.coarse_omega, nd = w.coarse_delta;
  std::vector<double> coarse(no * nd);
  parallel_for(coarse.size(), opt.threads, [&](std::size_t k) {
    const std::array<double, 2> x{static_cast<double>(k / nd) / static_cast<double>(no - 1),
                                  static_cast<double>(k % nd) / static_cast<double>(nd - 1)};
    coarse[k] = eta_at(x);
  });
  res.evaluations = coarse.size();

  std::size_t best = 0;
  for (std::size_t k = 1; k < coarse.size(); ++k)
    if (coarse[k] > coarse[best]) best = k;
  const std::array<double, 2> x0{static_cast<double>(best / nd) / static_cast<double>(no - 1),
                                 static_cast<double>(best % nd) / static_cast<double>(nd - 1)};
  std::tie(res.coarse_omega, res.coarse_delta) = to_physical(x0);
  res.coarse_eta = coarse[best];

  if (!(res.coarse_eta > 0.0)) {
    res.degenerate = true;
    std::tie(res.omega, res.delta) = to_physical({0.5, 0.5});
    res.eta = 0.0;
    return res;
  }

  // Nelder-Mead on -eta in normalized coordinates, clamped to the window.
  const std::array<double, 2> h{1.0 / static_cast<double>(no - 1), 1.0 / static_cast<double>(nd - 1)};
  auto make = [&](std::array<double, 2> x) {
    x[0] = std::clamp(x[0], 0.0, 1.0);
    x[1] = std::clamp(x[1], 0.0, 1.0);
    ++res.evaluations;
    return Vertex{x, -eta_at(x)};
  };
  std::array<Vertex, 3> s{Vertex{x0, -res.coarse_eta},
                          make({x0[0] + (x0[0] + h[0] <= 1.0 ? h[0] : -h[0]), x0[1]}),
                          make({x0[0], x0[1] + (x0[1] + h[1] <= 1.0 ? h[1] : -h[1])})};

  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    std::sort(s.begin(), s.end(), better);
    double size = 0.0;
    for (int k = 1; k < 3; ++k)
      for (int d = 0; d < 2; ++d) size = std::max(size, std::abs(s[k].x[d] - s[0].x[d]));
    if (size < opt.x_tolerance || std::abs(s[2].f - s[0].f) <= opt.f_tolerance) break;

    const std::array<double, 2> c{0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};
    auto along = [&](double t) {
      return std::array<double, 2>{c[0] + t * (s[2].x[0] - c[0]), c[1] + t * (s[2].x[1] - c[1])};
    };
    const Vertex r = make(along(-1.0));
    if (better(r, s[0])) {
      const Vertex e = make(along(-2.0));
      s[2] = better(e, r) ? e : r;
    } else if (better(r, s[1])) {
      s[2] = r;
    } else {
      const Vertex k = better(r, s[2]) ? make(along(-0.5)) : make(along(0.5));
      if (better(k, s[2]) && (better(k, r) || !better(r, s[2]))) {
        s[2] = k;
      } else {
        for (int i = 1; i < 3; ++i)
          s[i] = make({s[0].x[0] + 0.5 * (s[i].x[0] - s[0].x[0]), s[0].x[1] + 0.5 * (s[i].x[1] - s[0].x[1])});
      }
    }
  }
  std::sort(s.begin(), s.end(), better);
  std::tie(res.omega, res.delta) = to_physical(s[0].x);
  res.eta = -s[0].f;
  return res;
}

}  // namespace transduce
