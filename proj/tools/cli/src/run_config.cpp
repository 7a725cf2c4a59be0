#include "transduce_cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "transduce/errors.hpp"

namespace transduce::cli {

namespace {

enum class Kind { quantity, number, integer, string, boolean, quantity_list, number_list, string_list };

struct Field {
  Kind kind;
  Dimension dim = Dimension::rate;
};

using Schema = std::map<std::string, std::map<std::string, Field>>;

const Schema& schema() {
  static const Schema s = [] {
    const Field rate{Kind::quantity, Dimension::rate};
    const Field freq{Kind::quantity, Dimension::frequency};
    const Field num{Kind::number};
    const Field integer{Kind::integer};
    const Field str{Kind::string};
    const Field flag{Kind::boolean};
    Schema m;
    m["meta"] = {{"title", str}, {"reference", str}, {"description", str}};
    m["centers"] = {{"n_a", num},     {"g13", rate},     {"g12", rate},    {"gamma13", rate},
                    {"gamma12", rate}, {"delta13", rate}, {"delta12", rate}};
    m["broadening"] = {{"sigma13", rate}, {"sigma12", rate}, {"nodes13", integer}, {"nodes12", integer}, {"rule", str}};
    m["dipoles"] = {{"d13", {Kind::quantity, Dimension::electric_dipole}},
                    {"d23", {Kind::quantity, Dimension::electric_dipole}},
                    {"mu12", {Kind::quantity, Dimension::magnetic_dipole}}};
    m["pump"] = {{"n_p", num}, {"omega_p", rate}, {"n_ref", num}, {"frequency", freq}};
    m["optical"] = {{"frequency", freq},
                    {"kappa_ex", rate},
                    {"kappa_in", rate},
                    {"kappa_in_linear", rate},
                    {"kappa_in_quadratic", rate}};
    m["microwave"] = {{"frequency", freq},
                      {"kappa_ex", rate},
                      {"kappa_in", rate},
                      {"temperature", {Kind::quantity, Dimension::temperature}}};
    m["geometry"] = {{"v_optical", {Kind::quantity, Dimension::volume}},
                     {"v_microwave", {Kind::quantity, Dimension::volume}},
                     {"fill_a", num},
                     {"fill_b", num},
                     {"fill_c", num},
                     {"d_om", {Kind::quantity, Dimension::length}},
                     {"eps_r", num}};
    m["superconductor"] = {{"alpha_ki", num},
                           {"n0", {Kind::quantity, Dimension::density_of_states}},
                           {"gap", {Kind::quantity, Dimension::energy}},
                           {"kappa_b_sc", rate},
                           {"qp_model", str},
                           {"pair_breaking_efficiency", num},
                           {"recombination", {Kind::quantity, Dimension::recombination}},
                           {"fixed_density", {Kind::quantity, Dimension::density}},
                           {"pump_loss", flag}};
    m["evanescent"] = {{"d_near", {Kind::quantity, Dimension::length}},
                       {"kappa_near", rate},
                       {"d_far", {Kind::quantity, Dimension::length}},
                       {"kappa_far", rate}};
    m["sweep"] = {{"omega_min", rate}, {"omega_max", rate},      {"omega_points", integer},
                  {"delta_min", rate}, {"delta_max", rate},      {"delta_points", integer}};
    m["contours"] = {{"omega_min", rate},   {"omega_max", rate},      {"delta_min", rate},
                     {"delta_max", rate},   {"omega_scale", rate},    {"delta_scale", rate},
                     {"omega_cells", integer}, {"delta_cells", integer}, {"tolerance", num},
                     {"dedupe_fraction", num}, {"loss_ratio", num},    {"matching", flag}};
    m["optimize"] = {{"omega_min", rate},     {"omega_max", rate},    {"delta_min", rate},
                     {"delta_max", rate},     {"coarse_omega", integer}, {"coarse_delta", integer},
                     {"x_tolerance", num},    {"max_iterations", integer}};
    m["design"] = {{"solve", str}, {"n_p", {Kind::number_list}}, {"sigma13", {Kind::quantity_list, Dimension::rate}}};
    m["validate"] = {{"draws", integer},
                     {"max_classes", integer},
                     {"max_nodes_per_axis", integer},
                     {"ring_up", flag},
                     {"ring_up_rtol", num}};
    m["output"] = {{"dir", str}, {"images", flag}, {"formats", {Kind::string_list}}};
    return m;
  }();
  return s;
}

std::string where(const Entry& e) { return e.line > 0 ? "" : " (command-line override)"; }

void check_schema(const Document& doc) {
  const auto& s = schema();
  for (const auto& h : doc.sections())
    if (!s.count(h.name)) throw ConfigError("unknown section [" + h.name + "]", h.line, h.column);
  for (const auto& e : doc.entries()) {
    const auto sec = s.find(e.section);
    if (sec == s.end()) throw ConfigError("unknown section [" + e.section + "]" + where(e), e.line, e.column);
    const auto f = sec->second.find(e.key);
    if (f == sec->second.end())
      throw ConfigError("unknown key '" + e.key + "' in section [" + e.section + "]" + where(e), e.line, e.column);
    const auto& v = e.value;
    const std::string path = e.section + "." + e.key;
    auto expect = [&](bool ok, const char* what) {
      if (!ok) throw ConfigError(path + ": expected " + std::string(what), v.line ? v.line : e.line, v.column);
    };
    switch (f->second.kind) {
      case Kind::quantity: parse_quantity(v, f->second.dim, path); break;
      case Kind::number: expect(v.kind == Value::Kind::number, "a number"); break;
      case Kind::integer:
        expect(v.kind == Value::Kind::number && v.number == std::floor(v.number) && v.number >= 1.0 && v.number < 1e9,
               "a positive integer");
        break;
      case Kind::string: expect(v.kind == Value::Kind::string, "a quoted string"); break;
      case Kind::boolean: expect(v.kind == Value::Kind::boolean, "true or false"); break;
      case Kind::quantity_list:
        expect(v.kind == Value::Kind::array, "an array of quantities");
        for (const auto& it : v.items) parse_quantity(it, f->second.dim, path);
        break;
      case Kind::number_list:
        expect(v.kind == Value::Kind::array, "an array of numbers");
        for (const auto& it : v.items)
          if (it.kind != Value::Kind::number) throw ConfigError(path + ": expected a number", it.line, it.column);
        break;
      case Kind::string_list:
        expect(v.kind == Value::Kind::array, "an array of strings");
        for (const auto& it : v.items)
          if (it.kind != Value::Kind::string) throw ConfigError(path + ": expected a string", it.line, it.column);
        break;
    }
  }
}

class Reader {
 public:
  explicit Reader(const Document& d) : doc_(d) {}

  bool has(const char* sec, const char* key) const { return doc_.find(sec, key) != nullptr; }
  bool has_section(const char* sec) const { return doc_.has_section(sec); }

  double quantity(const char* sec, const char* key, std::optional<double> fallback = std::nullopt) const {
    const Value* v = doc_.find(sec, key);
    if (!v) return required(sec, key, fallback);
    return parse_quantity(*v, schema().at(sec).at(key).dim, path(sec, key));
  }
  double number(const char* sec, const char* key, std::optional<double> fallback = std::nullopt) const {
    const Value* v = doc_.find(sec, key);
    return v ? v->number : required(sec, key, fallback);
  }
  bool flag(const char* sec, const char* key, bool fallback) const {
    const Value* v = doc_.find(sec, key);
    return v ? v->boolean : fallback;
  }
  std::string text(const char* sec, const char* key, const std::string& fallback) const {
    const Value* v = doc_.find(sec, key);
    return v ? v->text : fallback;
  }
  std::vector<double> quantities(const char* sec, const char* key) const {
    std::vector<double> out;
    if (const Value* v = doc_.find(sec, key))
      for (const auto& it : v->items) out.push_back(parse_quantity(it, schema().at(sec).at(key).dim, path(sec, key)));
    return out;
  }
  std::vector<double> numbers(const char* sec, const char* key) const {
    std::vector<double> out;
    if (const Value* v = doc_.find(sec, key))
      for (const auto& it : v->items) out.push_back(it.number);
    return out;
  }
  std::vector<std::string> strings(const char* sec, const char* key, std::vector<std::string> fallback) const {
    const Value* v = doc_.find(sec, key);
    if (!v) return fallback;
    std::vector<std::string> out;
    for (const auto& it : v->items) out.push_back(it.text);
    return out;
  }

 private:
  static std::string path(const char* sec, const char* key) { return std::string(sec) + "." + key; }
  static double required(const char* sec, const char* key, std::optional<double> fallback) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key '" + std::string(key) + "' in section [" + sec + "]");
  }
  const Document& doc_;
};

Device build_device(const Reader& r) {
  Device d;

  GeometrySpec& g = d.geometry;
  g.v_optical = r.quantity("geometry", "v_optical", g.v_optical);
  g.v_microwave = r.quantity("geometry", "v_microwave", g.v_microwave);
  g.fill_a = r.number("geometry", "fill_a", g.fill_a);
  g.fill_b = r.number("geometry", "fill_b", g.fill_b);
  g.fill_c = r.number("geometry", "fill_c", g.fill_c);
  g.d_om = r.quantity("geometry", "d_om", g.d_om);
  g.eps_r = r.number("geometry", "eps_r", g.eps_r);
  validate(g);

  const double f_optical = r.quantity("optical", "frequency");
  const double f_microwave = r.quantity("microwave", "frequency");
  d.optical = CavityMode{Rate(f_optical), Rate(r.quantity("optical", "kappa_ex")),
                         Rate(r.quantity("optical", "kappa_in", 0.0))};
  d.optical_loss = OpticalLossPolynomial{d.optical.kappa_in, r.quantity("optical", "kappa_in_linear", 0.0),
                                         r.quantity("optical", "kappa_in_quadratic", 0.0)};
  d.microwave = CavityMode{Rate(f_microwave), Rate(r.quantity("microwave", "kappa_ex")),
                           Rate(r.quantity("microwave", "kappa_in", 0.0))};
  validate(d.optical, "optical");
  validate(d.microwave, "microwave");

  DipoleSpec dip;
  dip.d13 = r.quantity("dipoles", "d13", 0.0);
  dip.d23 = r.quantity("dipoles", "d23", 0.0);
  dip.mu12 = r.quantity("dipoles", "mu12", 0.0);
  const CouplingRates from_dipoles = coupling_from_dipole(dip, g, f_optical, f_microwave);

  CenterClass base;
  if (!r.has("centers", "g13") && !r.has("dipoles", "d13"))
    throw ConfigError("centers.g13 or dipoles.d13 is required");
  if (!r.has("centers", "g12") && !r.has("dipoles", "mu12"))
    throw ConfigError("centers.g12 or dipoles.mu12 is required");
  base.g13 = r.has("centers", "g13") ? Rate(r.quantity("centers", "g13")) : from_dipoles.g13;
  base.g12 = r.has("centers", "g12") ? Rate(r.quantity("centers", "g12")) : from_dipoles.g12;
  base.gamma13 = Rate(r.quantity("centers", "gamma13"));
  base.gamma12 = Rate(r.quantity("centers", "gamma12"));
  base.delta13 = Rate(r.quantity("centers", "delta13", 0.0));
  base.delta12 = Rate(r.quantity("centers", "delta12", 0.0));
  const double n_a = r.number("centers", "n_a");
  if (!(n_a >= 0.0)) throw DomainError("centers.n_a", "must be >= 0");
  base.weight = n_a;
  validate(base);

  if (r.has_section("broadening")) {
    GaussianEnsembleSpec spec;
    spec.mean13 = base.delta13;
    spec.mean12 = base.delta12;
    spec.sigma13 = Rate(r.quantity("broadening", "sigma13", 0.0));
    spec.sigma12 = Rate(r.quantity("broadening", "sigma12", 0.0));
    spec.nodes13 = static_cast<int>(r.number("broadening", "nodes13", 32));
    spec.nodes12 = static_cast<int>(r.number("broadening", "nodes12", 32));
    spec.rule = quadrature_rule_from_string(r.text("broadening", "rule", "hermite_voigt"));
    spec.n_total = n_a;
    spec.base = base;
    spec.base.weight = 1.0;
    d.ensemble = spec;
  } else {
    d.ensemble = std::vector<CenterClass>{base};
  }

  const double n_p = r.number("pump", "n_p");
  if (r.has("pump", "omega_p")) {
    d.pump = PumpRabiModel::from_calibration(Rate(r.quantity("pump", "omega_p")), r.number("pump", "n_ref", n_p));
  } else if (r.has("dipoles", "d23")) {
    d.f_pump = r.quantity("pump", "frequency", f_optical - f_microwave);
    d.pump = PumpRabiModel::from_dipole(dip, g, d.f_pump);
  } else {
    throw ConfigError("pump.omega_p or dipoles.d23 is required");
  }
  d.f_pump = r.quantity("pump", "frequency", f_optical - f_microwave);

  SuperconductorSpec& sc = d.superconductor;
  sc.temperature = r.quantity("microwave", "temperature");
  if (r.has_section("superconductor")) {
    sc.alpha_ki = r.number("superconductor", "alpha_ki", sc.alpha_ki);
    sc.n0 = r.quantity("superconductor", "n0", sc.n0);
    sc.gap_ev = r.quantity("superconductor", "gap", sc.gap_ev);
    sc.kappa_b_sc = Rate(r.quantity("superconductor", "kappa_b_sc", sc.kappa_b_sc.hz()));
    sc.qp_model = quasiparticle_model_from_string(r.text("superconductor", "qp_model", "steady_state"));
    sc.pair_breaking_efficiency = r.number("superconductor", "pair_breaking_efficiency", sc.pair_breaking_efficiency);
    sc.recombination = r.quantity("superconductor", "recombination", sc.recombination);
    sc.fixed_density = r.quantity("superconductor", "fixed_density", sc.fixed_density);
    d.pump_loss_enabled = r.flag("superconductor", "pump_loss", true);
  } else {
    sc.qp_model = QuasiparticleModel::fixed;
    sc.fixed_density = 0.0;
    d.pump_loss_enabled = false;
  }
  validate(sc);

  if (r.has_section("evanescent")) {
    const auto def = EvanescentLossModel::default_fit();
    d.evanescent = EvanescentLossModel::fit(
        r.quantity("evanescent", "d_near", def.d_min), Rate(r.quantity("evanescent", "kappa_near", 1.0e10)),
        r.quantity("evanescent", "d_far", def.d_max), Rate(r.quantity("evanescent", "kappa_far", 1.0)));
  }
  return d;
}

std::size_t count(const Reader& r, const char* sec, const char* key, std::size_t fallback) {
  return static_cast<std::size_t>(r.number(sec, key, static_cast<double>(fallback)));
}

}  // namespace

RunConfig load_run_config(const std::string& text, const std::vector<std::string>& overrides) {
  Document doc = parse_config(text);
  std::uint64_t h = fnv1a64(text);
  for (const auto& o : overrides) {
    apply_override(doc, o);
    h = fnv1a64("\n--set " + o, h);
  }
  check_schema(doc);
  const Reader r(doc);

  RunConfig c;
  c.config_hash = hex64(h);
  c.title = r.text("meta", "title", "");
  c.reference = r.text("meta", "reference", "");
  c.device = build_device(r);
  c.n_p = r.number("pump", "n_p");
  if (!(c.n_p >= 0.0)) throw DomainError("pump.n_p", "must be >= 0");

  auto& s = c.sweep;
  s.omega = Axis{r.quantity("sweep", "omega_min", s.omega.min), r.quantity("sweep", "omega_max", s.omega.max),
                 count(r, "sweep", "omega_points", s.omega.count)};
  s.delta = Axis{r.quantity("sweep", "delta_min", s.delta.min), r.quantity("sweep", "delta_max", s.delta.max),
                 count(r, "sweep", "delta_points", s.delta.count)};

  auto& w = c.contours.window;
  w.omega_min = r.quantity("contours", "omega_min", w.omega_min);
  w.omega_max = r.quantity("contours", "omega_max", w.omega_max);
  w.delta_min = r.quantity("contours", "delta_min", w.delta_min);
  w.delta_max = r.quantity("contours", "delta_max", w.delta_max);
  w.omega_scale = r.quantity("contours", "omega_scale", w.omega_scale);
  w.delta_scale = r.quantity("contours", "delta_scale", w.delta_scale);
  w.omega_cells = count(r, "contours", "omega_cells", w.omega_cells);
  w.delta_cells = count(r, "contours", "delta_cells", w.delta_cells);
  auto& co = c.contours.options;
  co.tolerance = r.number("contours", "tolerance", co.tolerance);
  co.dedupe_fraction = r.number("contours", "dedupe_fraction", co.dedupe_fraction);
  co.loss_ratio = r.number("contours", "loss_ratio", co.loss_ratio);
  co.matching = r.flag("contours", "matching", co.matching);

  auto& ow = c.optimize.window;
  ow.omega_min = r.quantity("optimize", "omega_min", ow.omega_min);
  ow.omega_max = r.quantity("optimize", "omega_max", ow.omega_max);
  ow.delta_min = r.quantity("optimize", "delta_min", ow.delta_min);
  ow.delta_max = r.quantity("optimize", "delta_max", ow.delta_max);
  ow.coarse_omega = count(r, "optimize", "coarse_omega", ow.coarse_omega);
  ow.coarse_delta = count(r, "optimize", "coarse_delta", ow.coarse_delta);
  c.optimize.options.x_tolerance = r.number("optimize", "x_tolerance", c.optimize.options.x_tolerance);
  c.optimize.options.max_iterations = count(r, "optimize", "max_iterations", c.optimize.options.max_iterations);

  if (r.has("design", "solve")) c.design.solve = design_variable_from_string(r.text("design", "solve", ""));
  c.design.n_p = r.numbers("design", "n_p");
  c.design.sigma13 = r.quantities("design", "sigma13");

  auto& v = c.validate;
  v.draws = count(r, "validate", "draws", v.draws);
  v.max_classes = count(r, "validate", "max_classes", v.max_classes);
  v.max_nodes_per_axis = static_cast<int>(count(r, "validate", "max_nodes_per_axis", v.max_nodes_per_axis));
  v.ring_up = r.flag("validate", "ring_up", v.ring_up);
  v.ring_up_rtol = r.number("validate", "ring_up_rtol", v.ring_up_rtol);

  c.output.dir = r.text("output", "dir", c.output.dir);
  c.output.images = r.flag("output", "images", c.output.images);
  const auto formats = r.strings("output", "formats", {"csv", "json"});
  c.output.csv = c.output.json = false;
  for (const auto& f : formats) {
    if (f == "csv")
      c.output.csv = true;
    else if (f == "json")
      c.output.json = true;
    else
      throw ConfigError("output.formats: unknown format '" + f + "' (expected csv or json)");
  }
  return c;
}

RunConfig load_run_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_run_config(ss.str(), overrides);
}

System configured_system(const RunConfig& config) { return resolve_system(config.device, config.n_p); }

}  // namespace transduce::cli
