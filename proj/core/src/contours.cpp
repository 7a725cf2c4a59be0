#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "transduce/errors.hpp"
#include "transduce/explore.hpp"
#include "transduce/parallel.hpp"

namespace transduce {

namespace {

struct AxisMap {
  double lo = 0.0;
  double hi = 0.0;
  double scale = 0.0;
  std::size_t cells = 1;

  AxisMap(double min, double max, double s, std::size_t n) : scale(s), cells(n) {
    lo = to_mapped(min);
    hi = to_mapped(max);
  }
  double to_mapped(double x) const { return scale > 0.0 ? std::asinh(x / scale) : x; }
  double to_physical(double u) const { return scale > 0.0 ? scale * std::sinh(u) : u; }
  double vertex(std::size_t k) const {
    if (k == cells) return hi;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(cells);
  }
  double step() const { return (hi - lo) / static_cast<double>(cells); }
};

constexpr std::array<ContourFamily, 3> kFamilies{ContourFamily::optical, ContourFamily::microwave,
                                                 ContourFamily::matching};

struct Losses {
  double kappa_a = 0.0;
  double kappa_c = 0.0;
};

Losses non_center_losses(const System& s) {
  return {s.optical.kappa_ex.hz() + s.optical.kappa_in.hz(),
          s.microwave.kappa_ex.hz() + s.microwave.kappa_in.hz() + s.kappa_c_qp.hz()};
}

double condition_from(ContourFamily f, const SusceptibilityTriplet& xi, const Losses& k, double delta, double omega) {
  switch (f) {
    case ContourFamily::optical: return omega + delta - xi.xi_a.real();
    case ContourFamily::microwave: return omega - xi.xi_c.real();
    case ContourFamily::matching: return std::log(4.0 * std::norm(xi.xi_ac) / (k.kappa_a * k.kappa_c));
  }
  return 0.0;
}

double scale_from(ContourFamily f, const SusceptibilityTriplet& xi, const Losses& k, double delta, double omega) {
  switch (f) {
    case ContourFamily::optical: return std::abs(omega + delta) + std::abs(xi.xi_a.real()) + 0.5 * k.kappa_a;
    case ContourFamily::microwave: return std::abs(omega) + std::abs(xi.xi_c.real()) + 0.5 * k.kappa_c;
    case ContourFamily::matching: return 1.0;
  }
  return 1.0;
}

double loss_of(ContourFamily f, const SusceptibilityTriplet& xi) {
  switch (f) {
    case ContourFamily::optical: return 2.0 * std::abs(xi.xi_a.imag());
    case ContourFamily::microwave: return 2.0 * std::abs(xi.xi_c.imag());
    case ContourFamily::matching: return 0.0;
  }
  return 0.0;
}

struct Point {
  double u = 0.0;  // mapped omega
  double v = 0.0;  // mapped delta
};

struct Tracer {
  const System& system;
  const ContourWindow& window;
  const ContourOptions& options;
  AxisMap om;
  AxisMap de;
  Losses losses;
  std::size_t nu;  // omega vertices
  std::size_t nv;  // delta vertices
  std::vector<SusceptibilityTriplet> xi;

  Tracer(const System& s, const ContourWindow& w, const ContourOptions& o)
      : system(s),
        window(w),
        options(o),
        om(w.omega_min, w.omega_max, w.omega_scale, w.omega_cells),
        de(w.delta_min, w.delta_max, w.delta_scale, w.delta_cells),
        losses(non_center_losses(s)),
        nu(w.omega_cells + 1),
        nv(w.delta_cells + 1) {}

  SusceptibilityTriplet eval(const Point& p) const {
    return susceptibilities(system.ensemble, OperatingPoint{Rate(om.to_physical(p.u)), Rate(de.to_physical(p.v)), 0.0});
  }

  double value(ContourFamily f, const Point& p, const SusceptibilityTriplet& x) const {
    return condition_from(f, x, losses, de.to_physical(p.v), om.to_physical(p.u));
  }

  Point vertex(std::size_t i, std::size_t j) const { return {om.vertex(i), de.vertex(j)}; }

  // Edges: horizontal (i, j)-(i, j+1) then vertical (i, j)-(i+1, j).
  std::size_t horizontal_count() const { return nu * (nv - 1); }
  std::size_t edge_count() const { return horizontal_count() + (nu - 1) * nv; }
  std::size_t h_edge(std::size_t i, std::size_t j) const { return i * (nv - 1) + j; }
  std::size_t v_edge(std::size_t i, std::size_t j) const { return horizontal_count() + i * nv + j; }

  std::pair<Point, Point> edge_ends(std::size_t e) const {
    if (e < horizontal_count()) {
      const std::size_t i = e / (nv - 1), j = e % (nv - 1);
      return {vertex(i, j), vertex(i, j + 1)};
    }
    const std::size_t k = e - horizontal_count();
    const std::size_t i = k / nv, j = k % nv;
    return {vertex(i, j), vertex(i + 1, j)};
  }
  std::pair<std::size_t, std::size_t> edge_vertex_ids(std::size_t e) const {
    if (e < horizontal_count()) {
      const std::size_t i = e / (nv - 1), j = e % (nv - 1);
      return {i * nv + j, i * nv + j + 1};
    }
    const std::size_t k = e - horizontal_count();
    const std::size_t i = k / nv, j = k % nv;
    return {i * nv + j, (i + 1) * nv + j};
  }
};

enum class EdgeState : unsigned char { none, accepted, rejected };

struct EdgeRoot {
  EdgeState state = EdgeState::none;
  Point p;
};

bool negative(double f) { return f < 0.0; }

EdgeRoot bisect_edge(const Tracer& t, ContourFamily f, Point a, Point b, double fa) {
  const bool neg_a = negative(fa);
  for (int it = 0; it < 200; ++it) {
    const Point m{0.5 * (a.u + b.u), 0.5 * (a.v + b.v)};
    if ((m.u == a.u && m.v == a.v) || (m.u == b.u && m.v == b.v)) break;
    const double fm = t.value(f, m, t.eval(m));
    if (std::isnan(fm)) break;
    if (negative(fm) == neg_a)
      a = m;
    else
      b = m;
  }
  const Point r{0.5 * (a.u + b.u), 0.5 * (a.v + b.v)};
  const auto x = t.eval(r);
  const double d = t.de.to_physical(r.v), w = t.om.to_physical(r.u);
  const double fr = condition_from(f, x, t.losses, d, w);
  const double sc = scale_from(f, x, t.losses, d, w);
  EdgeRoot root{EdgeState::accepted, r};
  if (!(std::abs(fr) <= t.options.tolerance * sc)) root.state = EdgeState::rejected;
  if (loss_of(f, x) > t.options.loss_ratio * sc) root.state = EdgeState::rejected;
  return root;
}

struct Segment {
  std::size_t e0;
  std::size_t e1;
  std::size_t cell;
};

std::vector<Polyline> link(const Tracer& t, const std::vector<EdgeRoot>& roots, const std::vector<Segment>& segs) {
  std::unordered_map<std::size_t, std::array<std::size_t, 2>> adj;
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  auto attach = [&](std::size_t a, std::size_t b) {
    auto [it, inserted] = adj.try_emplace(a, std::array<std::size_t, 2>{none, none});
    auto& slot = it->second;
    (slot[0] == none ? slot[0] : slot[1]) = b;
  };
  for (const auto& s : segs) {
    attach(s.e0, s.e1);
    attach(s.e1, s.e0);
  }

  auto to_vertex = [&](std::size_t e) {
    const auto& p = roots[e].p;
    return ContourVertex{t.de.to_physical(p.v), t.om.to_physical(p.u)};
  };

  // Deterministic traversal order: ascending edge id.
  std::vector<std::size_t> ids;
  ids.reserve(adj.size());
  for (const auto& [id, _] : adj) ids.push_back(id);
  std::sort(ids.begin(), ids.end());

  std::unordered_map<std::size_t, bool> used;
  std::vector<Polyline> lines;
  auto walk = [&](std::size_t start) {
    Polyline line;
    std::size_t prev = none, cur = start;
    while (cur != none && !used[cur]) {
      used[cur] = true;
      line.vertices.push_back(to_vertex(cur));
      const auto& n = adj[cur];
      std::size_t next = n[0] != prev ? n[0] : n[1];
      if (next == prev) next = none;
      prev = cur;
      cur = next;
    }
    if (cur == start && line.vertices.size() > 2) {
      line.closed = true;
      line.vertices.push_back(line.vertices.front());
    }
    lines.push_back(std::move(line));
  };
  for (auto id : ids) {
    const auto& n = adj[id];
    if (!used[id] && (n[0] == none || n[1] == none)) walk(id);
  }
  for (auto id : ids)
    if (!used[id]) walk(id);
  return lines;
}

std::optional<Point> segment_intersection(Point p1, Point p2, Point q1, Point q2) {
  const double rx = p2.v - p1.v, ry = p2.u - p1.u;
  const double sx = q2.v - q1.v, sy = q2.u - q1.u;
  const double den = rx * sy - ry * sx;
  if (den == 0.0) return std::nullopt;
  const double qpx = q1.v - p1.v, qpy = q1.u - p1.u;
  const double tp = (qpx * sy - qpy * sx) / den;
  const double tq = (qpx * ry - qpy * rx) / den;
  if (tp < 0.0 || tp > 1.0 || tq < 0.0 || tq > 1.0) return std::nullopt;
  return Point{p1.u + tp * ry, p1.v + tp * rx};
}

// Joint Newton iteration on (optical, microwave) in physical coordinates.
std::optional<Point> polish(const Tracer& t, Point start) {
  double d = t.de.to_physical(start.v), w = t.om.to_physical(start.u);
  auto residual = [&](double dd, double ww, std::array<double, 2>& f) {
    const auto x = susceptibilities(t.system.ensemble, OperatingPoint{Rate(ww), Rate(dd), 0.0});
    f[0] = condition_from(ContourFamily::optical, x, t.losses, dd, ww);
    f[1] = condition_from(ContourFamily::microwave, x, t.losses, dd, ww);
    return std::max(std::abs(f[0]) / scale_from(ContourFamily::optical, x, t.losses, dd, ww),
                    std::abs(f[1]) / scale_from(ContourFamily::microwave, x, t.losses, dd, ww));
  };
  // Finite-difference steps follow the local mapped resolution.
  const double hd0 = 1e-6 * t.de.step() * (t.de.scale > 0.0 ? std::hypot(d, t.de.scale) : 1.0);
  const double hw0 = 1e-6 * t.om.step() * (t.om.scale > 0.0 ? std::hypot(w, t.om.scale) : 1.0);

  std::array<double, 2> f{};
  double r = residual(d, w, f);
  for (int it = 0; it < 40 && r > t.options.tolerance; ++it) {
    std::array<double, 2> fp{}, fm{};
    residual(d + hd0, w, fp);
    residual(d - hd0, w, fm);
    const double j00 = (fp[0] - fm[0]) / (2 * hd0), j10 = (fp[1] - fm[1]) / (2 * hd0);
    residual(d, w + hw0, fp);
    residual(d, w - hw0, fm);
    const double j01 = (fp[0] - fm[0]) / (2 * hw0), j11 = (fp[1] - fm[1]) / (2 * hw0);
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) return std::nullopt;
    const double sd = -(j11 * f[0] - j01 * f[1]) / det;
    const double sw = -(-j10 * f[0] + j00 * f[1]) / det;
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k) {
      std::array<double, 2> fn{};
      const double rn = residual(d + lambda * sd, w + lambda * sw, fn);
      if (rn < r) {
        d += lambda * sd;
        w += lambda * sw;
        f = fn;
        r = rn;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }
  if (!(r <= t.options.tolerance)) return std::nullopt;
  const Point p{t.om.to_mapped(w), t.de.to_mapped(d)};
  if (std::abs(p.u - start.u) > 2.0 * std::abs(t.om.step()) || std::abs(p.v - start.v) > 2.0 * std::abs(t.de.step()))
    return std::nullopt;
  return p;
}

}  // namespace

const char* to_string(ContourFamily f) {
  switch (f) {
    case ContourFamily::optical: return "optical";
    case ContourFamily::microwave: return "microwave";
    case ContourFamily::matching: return "matching";
  }
  return "?";
}

const char* to_string(Intersection::Kind k) { return k == Intersection::Kind::origin ? "origin" : "near_resonance"; }

void validate(const ContourWindow& w) {
  const double v[] = {w.omega_min, w.omega_max, w.delta_min, w.delta_max, w.omega_scale, w.delta_scale};
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError("contours.window", "bounds must be finite");
  if (!(w.omega_max > w.omega_min)) throw DomainError("contours.omega", "window must be strictly increasing");
  if (!(w.delta_max > w.delta_min)) throw DomainError("contours.delta", "window must be strictly increasing");
  if (w.omega_cells < 1 || w.delta_cells < 1) throw DomainError("contours.cells", "need at least one cell per axis");
}

double contour_condition(ContourFamily family, const System& system, double delta, double omega) {
  const auto x = susceptibilities(system.ensemble, OperatingPoint{Rate(omega), Rate(delta), 0.0});
  return condition_from(family, x, non_center_losses(system), delta, omega);
}

double contour_scale(ContourFamily family, const System& system, double delta, double omega) {
  const auto x = susceptibilities(system.ensemble, OperatingPoint{Rate(omega), Rate(delta), 0.0});
  return scale_from(family, x, non_center_losses(system), delta, omega);
}

ContourSet trace_contours(const System& system, const ContourWindow& window, const ContourOptions& options) {
  validate(window);
  if (!(options.tolerance > 0.0)) throw DomainError("contours.tolerance", "must be > 0");
  const Losses k = non_center_losses(system);
  if (!(k.kappa_a > 0.0) || !(k.kappa_c > 0.0)) throw DomainError("contours", "cavity losses must be > 0");

  Tracer t(system, window, options);
  t.xi.resize(t.nu * t.nv);
  parallel_for(t.nu, options.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < t.nv; ++j) t.xi[i * t.nv + j] = t.eval(t.vertex(i, j));
  });

  ContourSet out;
  std::array<std::vector<EdgeRoot>, 3> roots;
  std::array<std::vector<Segment>, 3> segments;

  for (std::size_t fi = 0; fi < kFamilies.size(); ++fi) {
    const ContourFamily fam = kFamilies[fi];
    if (fam == ContourFamily::matching && !options.matching) continue;

    std::vector<double> fv(t.nu * t.nv);
    for (std::size_t i = 0; i < t.nu; ++i)
      for (std::size_t j = 0; j < t.nv; ++j) fv[i * t.nv + j] = t.value(fam, t.vertex(i, j), t.xi[i * t.nv + j]);

    auto& r = roots[fi];
    r.assign(t.edge_count(), EdgeRoot{});
    parallel_for(t.edge_count(), options.threads, [&](std::size_t e) {
      const auto [ia, ib] = t.edge_vertex_ids(e);
      const double fa = fv[ia], fb = fv[ib];
      if (std::isnan(fa) || std::isnan(fb) || negative(fa) == negative(fb)) return;
      const auto [pa, pb] = t.edge_ends(e);
      r[e] = bisect_edge(t, fam, pa, pb, fa);
    });
    for (const auto& er : r) out.rejected_roots += er.state == EdgeState::rejected ? 1 : 0;

    auto& segs = segments[fi];
    for (std::size_t i = 0; i + 1 < t.nu; ++i) {
      for (std::size_t j = 0; j + 1 < t.nv; ++j) {
        const std::size_t bottom = t.h_edge(i, j), top = t.h_edge(i + 1, j);
        const std::size_t left = t.v_edge(i, j), right = t.v_edge(i, j + 1);
        const std::size_t cell = i * (t.nv - 1) + j;
        const bool s00 = negative(fv[i * t.nv + j]);
        auto add = [&](std::size_t a, std::size_t b) {
          if (r[a].state == EdgeState::accepted && r[b].state == EdgeState::accepted) segs.push_back({a, b, cell});
        };
        std::array<std::size_t, 4> crossing{};
        std::size_t n = 0;
        for (auto e : {bottom, right, top, left})
          if (r[e].state != EdgeState::none) crossing[n++] = e;
        if (n == 2) {
          add(crossing[0], crossing[1]);
        } else if (n == 4) {
          // Saddle: the centre sign decides which corners are joined.
          const Point c{0.5 * (t.om.vertex(i) + t.om.vertex(i + 1)), 0.5 * (t.de.vertex(j) + t.de.vertex(j + 1))};
          const bool sc = negative(t.value(fam, c, t.eval(c)));
          if (sc == s00) {
            add(bottom, right);
            add(top, left);
          } else {
            add(bottom, left);
            add(top, right);
          }
        }
      }
    }

    auto lines = link(t, r, segs);
    switch (fam) {
      case ContourFamily::optical: out.optical = std::move(lines); break;
      case ContourFamily::microwave: out.microwave = std::move(lines); break;
      case ContourFamily::matching: out.matching = std::move(lines); break;
    }
  }

  // Optical/microwave intersections: segments live inside their cells, so
  // only segments sharing a cell can cross.
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_cell;
  for (std::size_t s = 0; s < segments[1].size(); ++s) by_cell[segments[1][s].cell].push_back(s);

  const double diag = std::hypot(t.om.hi - t.om.lo, t.de.hi - t.de.lo);
  const double radius = options.dedupe_fraction * diag;
  const Point origin{t.om.to_mapped(0.0), t.de.to_mapped(0.0)};
  const bool origin_inside = window.omega_min <= 0.0 && window.omega_max >= 0.0 && window.delta_min <= 0.0 &&
                             window.delta_max >= 0.0;

  struct Candidate {
    Point p;
    bool polished;
  };
  std::vector<Candidate> found;
  for (const auto& so : segments[0]) {
    const auto it = by_cell.find(so.cell);
    if (it == by_cell.end()) continue;
    for (auto mi : it->second) {
      const auto& sm = segments[1][mi];
      const auto hit = segment_intersection(roots[0][so.e0].p, roots[0][so.e1].p, roots[1][sm.e0].p, roots[1][sm.e1].p);
      if (!hit) continue;
      const auto refined = polish(t, *hit);
      found.push_back(refined ? Candidate{*refined, true} : Candidate{*hit, false});
    }
  }

  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.polished != b.polished) return a.polished;
    return a.p.u != b.p.u ? a.p.u < b.p.u : a.p.v < b.p.v;
  });
  std::vector<Candidate> kept;
  for (const auto& c : found) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Candidate& k2) {
      return std::hypot(k2.p.u - c.p.u, k2.p.v - c.p.v) <= radius;
    });
    if (!dup) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
    return a.p.u != b.p.u ? a.p.u < b.p.u : a.p.v < b.p.v;
  });
  for (const auto& c : kept) {
    Intersection x;
    x.delta = t.de.to_physical(c.p.v);
    x.omega = t.om.to_physical(c.p.u);
    x.polished = c.polished;
    x.kind = origin_inside && std::hypot(c.p.u - origin.u, c.p.v - origin.v) <= radius ? Intersection::Kind::origin
                                                                                        : Intersection::Kind::near_resonance;
    out.intersections.push_back(x);
  }
  return out;
}

}  // namespace transduce
