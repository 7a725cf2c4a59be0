#include "transduce_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "transduce/errors.hpp"
#include "transduce/parallel.hpp"
#include "transduce_cli/validation.hpp"

namespace transduce::cli {

namespace fs = std::filesystem;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"sweep", "contours", "optimize", "budget", "validate", "design"};
  return names;
}

namespace {

constexpr double kValidateTolerance = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

Column real(std::string name, std::string unit = "") { return {std::move(name), ColumnType::real, std::move(unit)}; }
Column integer(std::string name) { return {std::move(name), ColumnType::integer, ""}; }
Column text(std::string name) { return {std::move(name), ColumnType::text, ""}; }

Cell count_cell(std::size_t n) { return static_cast<std::int64_t>(n); }

std::string header_lines(const RunConfig& config, const std::string& command) {
  std::string s;
  if (!config.title.empty()) s += config.title + "\n";
  if (!config.reference.empty()) s += "reference: " + config.reference + "\n";
  s += "command: " + command + "\nconfig hash: " + config.config_hash + "\n";
  return s;
}

// ------------------------------------------------------------------ sweep

CommandResult run_sweep(const RunConfig& config, const System& system, int threads) {
  const auto& task = config.sweep;
  const SweepGrid grid = sweep(system, task.omega, task.delta, threads);

  Table t{"sweep",
          {real("omega", "Hz"), real("delta", "Hz"), real("eta"), real("eta_internal"), real("cooperativity"),
           real("n_mo"), real("n_om"), text("error")},
          {}};
  t.rows.reserve(grid.cells.size());
  std::vector<double> heat(grid.cells.size(), kNaN);
  for (std::size_t i = 0; i < grid.omega_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_axis.size(); ++j) {
      const SweepCell& c = grid.at(i, j);
      t.add_row({grid.omega_axis[i], grid.delta_axis[j], c.eta, c.eta_internal, c.cooperativity, c.n_mo, c.n_om,
                 c.error});
      heat[i * grid.delta_axis.size() + j] = c.eta;
    }
  }

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "sweep");
  s << "grid: " << grid.omega_axis.size() << " omega x " << grid.delta_axis.size() << " delta\n";
  s << "failed cells: " << grid.failed_cells() << "\n";
  if (const auto am = grid.argmax()) {
    const auto [i, j] = *am;
    const double dw = grid.omega_axis.size() > 1 ? (grid.omega_axis[1] - grid.omega_axis[0]) / 2 : 0.0;
    const double dd = grid.delta_axis.size() > 1 ? (grid.delta_axis[1] - grid.delta_axis[0]) / 2 : 0.0;
    const bool origin = std::abs(grid.omega_axis[i]) <= dw && std::abs(grid.delta_axis[j]) <= dd;
    const SweepCell& c = grid.at(i, j);
    s << "max eta: " << fmt(c.eta, 8) << " at omega = " << fmt(grid.omega_axis[i]) << " Hz, delta = "
      << fmt(grid.delta_axis[j]) << " Hz\n";
    s << "eta_internal at max: " << fmt(c.eta_internal, 8) << ", C = " << fmt(c.cooperativity, 8) << "\n";
    s << "max cell contains origin: " << (origin ? "yes" : "no") << "\n";
  } else {
    s << "max eta: none (every cell failed)\n";
  }
  r.summary = s.str();
  r.tables.push_back(std::move(t));
  if (config.output.images) {
    r.images.emplace_back("sweep_eta", render_heatmap(heat, grid.omega_axis.size(), grid.delta_axis.size(), 0.0, 1.0, 2));
  }
  return r;
}

// ------------------------------------------------------------------ contours

double mapped(double x, double scale) { return scale > 0.0 ? std::asinh(x / scale) : x; }

CommandResult run_contours(const RunConfig& config, const System& system, int threads) {
  const auto& w = config.contours.window;
  ContourOptions opts = config.contours.options;
  opts.threads = threads;
  const ContourSet set = trace_contours(system, w, opts);

  Table lines{"contours",
              {text("family"), integer("line"), integer("vertex"), integer("closed"), real("delta", "Hz"),
               real("omega", "Hz")},
              {}};
  const std::pair<const char*, const std::vector<Polyline>*> families[] = {
      {"optical", &set.optical}, {"microwave", &set.microwave}, {"matching", &set.matching}};
  for (const auto& [name, polys] : families) {
    for (std::size_t l = 0; l < polys->size(); ++l) {
      const Polyline& p = (*polys)[l];
      for (std::size_t v = 0; v < p.vertices.size(); ++v)
        lines.add_row({std::string(name), count_cell(l), count_cell(v), count_cell(p.closed ? 1 : 0),
                       p.vertices[v].delta, p.vertices[v].omega});
    }
  }
  Table points{"intersections", {text("kind"), integer("polished"), real("delta", "Hz"), real("omega", "Hz")}, {}};
  for (const auto& x : set.intersections)
    points.add_row({std::string(to_string(x.kind)), count_cell(x.polished ? 1 : 0), x.delta, x.omega});

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "contours");
  s << "polylines: optical " << set.optical.size() << ", microwave " << set.microwave.size() << ", matching "
    << set.matching.size() << "\n";
  s << "rejected pole crossings: " << set.rejected_roots << "\n";
  s << "intersections: " << set.intersections.size() << "\n";
  for (const auto& x : set.intersections)
    s << "  " << to_string(x.kind) << " delta = " << fmt(x.delta, 8) << " Hz, omega = " << fmt(x.omega, 8) << " Hz"
      << (x.polished ? "" : " (unpolished)") << "\n";
  for (const auto& a : asymptote_readings(set, w))
    s << "asymptote " << a.family << " at " << a.edge << ": "
      << (a.family == "optical" ? "omega + delta = " : "omega = ") << fmt(a.value, 6) << " Hz\n";
  r.summary = s.str();
  r.tables.push_back(std::move(lines));
  r.tables.push_back(std::move(points));

  if (config.output.images) {
    const std::size_t n = 301;
    const double u0 = mapped(w.delta_min, w.delta_scale), u1 = mapped(w.delta_max, w.delta_scale);
    const double v0 = mapped(w.omega_min, w.omega_scale), v1 = mapped(w.omega_max, w.omega_scale);
    auto unmap = [](double u, double scale) { return scale > 0.0 ? scale * std::sinh(u) : u; };
    std::vector<double> heat(n * n, kNaN);
    parallel_for(n, threads, [&](std::size_t i) {
      const double omega = unmap(v0 + (v1 - v0) * static_cast<double>(i) / (n - 1), w.omega_scale);
      for (std::size_t j = 0; j < n; ++j) {
        const double delta = unmap(u0 + (u1 - u0) * static_cast<double>(j) / (n - 1), w.delta_scale);
        try {
          const double eta = evaluate(system, {Rate(omega), Rate(delta)}).eta_total;
          heat[i * n + j] = std::log10(std::max(eta, 1e-6));
        } catch (const std::exception&) {
        }
      }
    });
    Raster img = render_heatmap(heat, n, n, -6.0, 0.0, 2);
    auto unit = [&](const ContourVertex& v) {
      return std::pair{(mapped(v.delta, w.delta_scale) - u0) / (u1 - u0),
                       (mapped(v.omega, w.omega_scale) - v0) / (v1 - v0)};
    };
    const Rgb colors[] = {{40, 90, 255}, {20, 200, 60}, {230, 30, 30}};
    for (std::size_t f = 0; f < 3; ++f) {
      for (const auto& p : *families[f].second) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& v : p.vertices) pts.push_back(unit(v));
        draw_polyline(img, pts, colors[f]);
      }
    }
    for (const auto& x : set.intersections) {
      const auto [px, py] = unit({x.delta, x.omega});
      draw_marker(img, px, py, {255, 255, 255}, 4);
    }
    r.images.emplace_back("contours", std::move(img));
  }
  return r;
}

// ------------------------------------------------------------------ optimize

CommandResult run_optimize(const RunConfig& config, const System& system, int threads) {
  OptimizeOptions opts = config.optimize.options;
  opts.threads = threads;
  const OptimizeResult o = optimize_operating_point(system, config.optimize.window, opts);
  const ResponseReport at = evaluate(system, {Rate(o.omega), Rate(o.delta)});

  Table t{"optimize",
          {real("omega", "Hz"), real("delta", "Hz"), real("eta"), real("eta_internal"), real("cooperativity"),
           real("coarse_omega", "Hz"), real("coarse_delta", "Hz"), real("coarse_eta"), integer("iterations"),
           integer("evaluations"), integer("degenerate")},
          {}};
  t.add_row({o.omega, o.delta, o.eta, at.eta_internal, at.cooperativity, o.coarse_omega, o.coarse_delta, o.coarse_eta,
             count_cell(o.iterations), count_cell(o.evaluations), count_cell(o.degenerate ? 1 : 0)});

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "optimize");
  if (o.degenerate) s << "efficiency is zero across the coarse grid; reporting the window centre\n";
  s << "optimum: omega = " << fmt(o.omega, 8) << " Hz, delta = " << fmt(o.delta, 8) << " Hz\n";
  s << "eta = " << fmt(o.eta, 10) << " (coarse " << fmt(o.coarse_eta, 8) << ")\n";
  s << "C = " << fmt(at.cooperativity, 8) << ", eta_internal = " << fmt(at.eta_internal, 8) << "\n";
  s << "iterations: " << o.iterations << ", evaluations: " << o.evaluations << "\n";
  r.summary = s.str();
  r.tables.push_back(std::move(t));
  return r;
}

// ------------------------------------------------------------------ budget

CenterClass representative_class(const EnsembleSpec& e) {
  if (const auto* g = std::get_if<GaussianEnsembleSpec>(&e)) {
    CenterClass c = g->base;
    c.weight = g->n_total;
    return c;
  }
  const auto& list = std::get<std::vector<CenterClass>>(e);
  if (list.empty()) throw DomainError("centers", "empty ensemble");
  CenterClass c = list.front();
  c.weight = total_weight(e);
  return c;
}

CommandResult run_budget(const RunConfig& config, const System& system) {
  const Device& d = config.device;
  const OperatingPoint origin{};
  const ResponseReport rep = evaluate(system, origin);
  const LossBudget& b = rep.budget;
  const CenterClass base = representative_class(system.ensemble);
  const Rate kb = pump_loss_rate(d);
  const double p_leak = d.pump_loss_enabled ? pump_leakage(config.n_p, d.f_pump, kb) : 0.0;
  const double n_qp = quasiparticle_density(d.superconductor, d.geometry.v_microwave, p_leak);
  const Rate omega_match = matching_pump_rabi(base.weight, base.g12, base.g13, b.kappa_a_ex + b.kappa_a_in,
                                              b.kappa_c_ex + b.kappa_c_in + b.kappa_c_qp);

  Table t{"budget", {text("item"), real("value"), text("unit")}, {}};
  auto row = [&](const char* item, double v, const char* unit) { t.add_row({std::string(item), v, std::string(unit)}); };
  row("n_p", config.n_p, "");
  row("n_a", base.weight, "");
  row("g13", base.g13.hz(), "Hz");
  row("g12", base.g12.hz(), "Hz");
  row("omega_p", base.omega_p.hz(), "Hz");
  row("omega_p_matching", omega_match.hz(), "Hz");
  row("pump_frequency", d.f_pump, "Hz");
  row("kappa_b_sc", kb.hz(), "Hz");
  row("pump_leakage_power", p_leak, "W");
  row("quasiparticle_density", n_qp, "1/um^3");
  row("n_th", system.n_th, "");
  row("kappa_a_ex", b.kappa_a_ex.hz(), "Hz");
  row("kappa_a_in", b.kappa_a_in.hz(), "Hz");
  row("kappa_a_center", b.kappa_a_center.hz(), "Hz");
  row("kappa_a_total", b.kappa_a_total.hz(), "Hz");
  row("kappa_c_ex", b.kappa_c_ex.hz(), "Hz");
  row("kappa_c_in", b.kappa_c_in.hz(), "Hz");
  row("kappa_c_qp", b.kappa_c_qp.hz(), "Hz");
  row("kappa_c_center", b.kappa_c_center.hz(), "Hz");
  row("kappa_c_total", b.kappa_c_total.hz(), "Hz");
  row("cooperativity", rep.cooperativity, "");
  row("eta_total", rep.eta_total, "");
  row("eta_internal", rep.eta_internal, "");
  row("eta_a", rep.eta_a, "");
  row("eta_c", rep.eta_c, "");
  row("n_mo", rep.n_mo, "");
  row("n_om", rep.n_om, "");

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "budget");
  s << "at omega = delta = 0 with N_p = " << fmt(config.n_p) << "\n";
  for (const auto& rowv : t.rows) {
    s << "  " << std::left << std::setw(24) << std::get<std::string>(rowv[0]) << std::right << std::setw(16)
      << fmt(std::get<double>(rowv[1]), 8) << " " << std::get<std::string>(rowv[2]) << "\n";
  }
  if (d.evanescent) {
    if (const auto ev = d.evanescent->evaluate(d.geometry.d_om); ev.warning) s << "warning: " << *ev.warning << "\n";
  }
  r.summary = s.str();
  r.tables.push_back(std::move(t));
  return r;
}

// ------------------------------------------------------------------ validate

CommandResult run_validate(const RunConfig& config, const System& system, std::uint64_t seed) {
  const auto& task = config.validate;
  const std::vector<CenterClass> classes =
      validation_classes(system.ensemble, task.max_classes, task.max_nodes_per_axis);
  const ModeLoss optical{system.optical.kappa_ex, system.optical.kappa_ex + system.optical.kappa_in};
  const ModeLoss microwave{system.microwave.kappa_ex,
                           system.microwave.kappa_ex + system.microwave.kappa_in + system.kappa_c_qp};

  Table checks{"validate",
               {text("case"), text("port"), integer("classes"), real("omega", "Hz"), real("delta", "Hz"),
                real("eta_closed"), real("eta_oracle"), real("deviation"), real("port_deviation"), real("rcond")},
               {}};
  double max_dev = 0.0;
  double max_port = 0.0;
  const auto points = validation_points(system);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const OracleCheck mw = check_oracle(classes, optical, microwave, points[k], DrivePort::microwave, "configured");
    const OracleCheck op = check_oracle(classes, optical, microwave, points[k], DrivePort::optical, "configured");
    const double port_dev = relative_deviation(mw.eta_oracle, op.eta_oracle);
    for (const OracleCheck* c : {&mw, &op}) {
      checks.add_row({c->label, std::string(to_string(c->port)), count_cell(c->classes), c->omega, c->delta,
                      c->eta_closed, c->eta_oracle, c->deviation, port_dev, c->rcond});
      max_dev = std::max(max_dev, c->deviation);
    }
    max_port = std::max(max_port, port_dev);
  }

  std::mt19937_64 rng(seed);
  Table draws{"validate_random",
              {integer("draw"), integer("classes"), real("omega", "Hz"), real("delta", "Hz"), real("eta_closed"),
               real("eta_oracle"), real("deviation")},
              {}};
  double max_random = 0.0;
  for (std::size_t i = 0; i < task.draws; ++i) {
    const RandomDraw d = random_draw(rng, task.max_classes);
    const OracleCheck c = check_oracle(d.classes, d.optical, d.microwave, d.point, DrivePort::microwave, "random");
    draws.add_row({count_cell(i), count_cell(c.classes), c.omega, c.delta, c.eta_closed, c.eta_oracle, c.deviation});
    max_random = std::max(max_random, c.deviation);
  }

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "validate");
  s << "configured ensemble: " << classes.size() << " classes, " << points.size() << " points, both ports\n";
  s << "max relative deviation (configured): " << std::scientific << std::setprecision(3) << max_dev << "\n";
  s << "max port asymmetry (configured): " << max_port << "\n";
  s << "random draws: " << task.draws << " (seed " << seed << ")\n";
  s << "max relative deviation (random): " << max_random << "\n";
  const double overall = std::max(max_dev, max_random);
  s << "max relative deviation: " << overall << "\n";

  if (task.ring_up) {
    LinearSystem sys = assemble_linear_system(classes, optical, microwave, {}, DrivePort::microwave);
    RingUpOptions ro;
    ro.rtol = task.ring_up_rtol;
    const RingUpResult ru = transient_ring_up(sys, ro);
    const double eta_ring = optical.external.hz() * std::norm(ru.final_state[0]);
    const double eta_ss = solve_steady_state(sys, optical, microwave).efficiency;
    const double dev = relative_deviation(eta_ring, eta_ss);
    s << "ring-up: " << (ru.ok ? "ok" : ru.message) << ", " << ru.accepted << " steps to t = " << ru.final_time
      << " s, eta(t_end) = " << std::setprecision(10) << eta_ring << ", steady state " << eta_ss
      << ", deviation " << std::setprecision(3) << dev << "\n";
    checks.add_row({std::string("ring_up"), std::string("microwave"), count_cell(classes.size()), 0.0, 0.0, eta_ss,
                    eta_ring, dev, kNaN, kNaN});
  }
  const bool pass = overall < kValidateTolerance && max_port < 1e-12;
  s << (pass ? "PASS" : "FAIL") << " (tolerance " << kValidateTolerance << ")\n";
  r.summary = s.str();
  r.passed = pass;
  r.tables.push_back(std::move(checks));
  r.tables.push_back(std::move(draws));
  return r;
}

// ------------------------------------------------------------------ design

const char* design_unit(DesignVariable v) { return v == DesignVariable::n_a ? "" : "Hz"; }

CommandResult run_design_solve(const RunConfig& config, const System& system, DesignVariable var) {
  const MatchedDesign m = solve_and_check(var, system);
  const System designed = apply_design(system, var, m.value);
  const ResponseReport at = evaluate(designed, {});

  Table t{"design",
          {text("variable"), real("value"), text("unit"), real("exact_cooperativity"), integer("within_tolerance"),
           real("eta_total"), real("eta_internal")},
          {}};
  t.add_row({std::string(to_string(var)), m.value, std::string(design_unit(var)), m.exact_cooperativity,
             count_cell(m.within_tolerance ? 1 : 0), at.eta_total, at.eta_internal});

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "design");
  s << "solve " << to_string(var) << " = " << fmt(m.value, 10) << " " << design_unit(var) << "\n";
  s << "exact C at the origin: " << fmt(m.exact_cooperativity, 8)
    << (m.within_tolerance ? " (within 5% of 1)" : " (outside 5% of 1)") << "\n";
  s << "eta_total = " << fmt(at.eta_total, 8) << ", eta_internal = " << fmt(at.eta_internal, 8) << "\n";
  r.summary = s.str();
  r.tables.push_back(std::move(t));
  return r;
}

CommandResult run_design_scan(const RunConfig& config, int threads) {
  const auto& task = config.design;
  std::vector<double> n_p = task.n_p.empty() ? std::vector<double>{config.n_p} : task.n_p;
  std::vector<double> sigma = task.sigma13;
  if (sigma.empty()) {
    const auto* g = std::get_if<GaussianEnsembleSpec>(&config.device.ensemble);
    sigma.push_back(g ? g->sigma13.hz() : 0.0);
  }
  const auto rows = density_pump_sweep(config.device, n_p, sigma, threads);

  Table t{"design_scan",
          {real("n_p"), real("sigma13", "Hz"), real("n_a"), real("n_a_strong_pump"), real("rho", "1/cm^3"),
           real("omega_p", "Hz"), real("cooperativity"), real("eta_total"), real("eta_internal"), real("eta_a"),
           real("eta_c"), real("n_mo"), real("n_om"), real("kappa_c_qp", "Hz"), text("error")},
          {}};
  std::map<double, std::pair<double, double>> best;  // sigma13 -> (eta, n_p)
  std::size_t failed = 0;
  for (const auto& x : rows) {
    t.add_row({x.n_p, x.sigma13, x.n_a, x.n_a_strong_pump, x.rho, x.omega_p, x.cooperativity, x.eta_total,
               x.eta_internal, x.eta_a, x.eta_c, x.n_mo, x.n_om, x.kappa_c_qp, x.error});
    if (!x.error.empty()) {
      ++failed;
      continue;
    }
    auto& b = best[x.sigma13];
    if (x.eta_total > b.first) b = {x.eta_total, x.n_p};
  }

  CommandResult r;
  std::ostringstream s;
  s << header_lines(config, "design");
  s << "density/pump scan: " << n_p.size() << " pump values x " << sigma.size() << " optical broadenings, "
    << failed << " failed\n";
  for (const auto& [sg, b] : best)
    s << "  sigma13 = " << fmt(sg) << " Hz: best eta_total = " << fmt(b.first, 8) << " at N_p = " << fmt(b.second)
      << "\n";
  r.summary = s.str();
  r.tables.push_back(std::move(t));
  return r;
}

CommandResult run_design(const RunConfig& config, const System& system, const RunRequest& req, int threads) {
  std::optional<DesignVariable> var = config.design.solve;
  if (req.solve) var = design_variable_from_string(*req.solve);
  if (req.scan) return run_design_scan(config, threads);
  if (var) return run_design_solve(config, system, *var);
  if (!config.design.n_p.empty() || !config.design.sigma13.empty()) return run_design_scan(config, threads);
  throw ConfigError("design: nothing to do; pass --solve VARIABLE, --scan, or set [design] solve or lists");
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << s;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CommandResult execute(const RunConfig& config, const RunRequest& request) {
  const int threads = request.threads > 0 ? request.threads : default_thread_count();
  const System system = configured_system(config);
  const std::string& c = request.command;
  if (c == "sweep") return run_sweep(config, system, threads);
  if (c == "contours") return run_contours(config, system, threads);
  if (c == "optimize") return run_optimize(config, system, threads);
  if (c == "budget") return run_budget(config, system);
  if (c == "validate") return run_validate(config, system, request.seed);
  if (c == "design") return run_design(config, system, request, threads);
  throw ConfigError("unknown command '" + c + "'");
}

int run(const RunRequest& request, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = load_run_config_file(request.config_path, request.overrides);
    CommandResult result = execute(config, request);

    const fs::path dir = request.out_dir ? fs::path(*request.out_dir) : fs::path(config.output.dir);
    fs::create_directories(dir);
    const TableHeader header{tool_version(), kSchemaVersion, config.config_hash, request.command};
    for (const auto& t : result.tables) {
      if (config.output.csv) write_text(dir / (t.name + ".csv"), to_csv(t, header));
      if (config.output.json) write_text(dir / (t.name + ".json"), to_json(t, header));
    }
    if (!result.images.empty()) {
      const auto emitter = make_ppm_emitter();
      for (const auto& [name, raster] : result.images) emitter->write(raster, (dir / name).string());
    }
    write_text(dir / "summary.txt", "transduce-sim " + std::string(tool_version()) + "  " + timestamp() + "\n" +
                                        result.summary);
    out << result.summary;
    return result.passed ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::vector<AsymptoteReading> asymptote_readings(const ContourSet& set, const ContourWindow& window,
                                                 double edge_fraction) {
  std::vector<AsymptoteReading> out;
  // best[sign] = (coordinate along the edge direction, reading)
  auto scan = [&](const std::vector<Polyline>& lines, const char* family, const char* edge, auto along, auto reading,
                  double limit) {
    std::optional<std::pair<double, double>> best[2];
    for (const auto& p : lines) {
      for (const auto& v : p.vertices) {
        const double a = along(v);
        if (!(a >= edge_fraction * limit)) continue;
        const double val = reading(v);
        auto& slot = best[val >= 0.0 ? 1 : 0];
        if (!slot || a > slot->first) slot = {a, val};
      }
    }
    for (const auto& b : best)
      if (b) out.push_back({family, edge, b->second});
  };
  auto omega = [](const ContourVertex& v) { return v.omega; };
  auto sum = [](const ContourVertex& v) { return v.omega + v.delta; };
  if (window.delta_min < 0.0)
    scan(set.microwave, "microwave", "delta_min", [](const ContourVertex& v) { return -v.delta; }, omega,
         -window.delta_min);
  if (window.delta_max > 0.0)
    scan(set.microwave, "microwave", "delta_max", [](const ContourVertex& v) { return v.delta; }, omega,
         window.delta_max);
  if (window.omega_min < 0.0)
    scan(set.optical, "optical", "omega_min", [](const ContourVertex& v) { return -v.omega; }, sum, -window.omega_min);
  if (window.omega_max > 0.0)
    scan(set.optical, "optical", "omega_max", [](const ContourVertex& v) { return v.omega; }, sum, window.omega_max);
  return out;
}

}  // namespace transduce::cli
