#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "twolayer/errors.hpp"
#include "twolayer/expression.hpp"

namespace twolayer::runner {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError("config field '" + field + "': " + msg);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
}

// A number, or a constant expression such as "4*pi/3".
double number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::optional<Expression> e;
    try {
      e = Expression::parse(j.get<std::string>());
    } catch (const ConfigError& err) {
      fail(field, err.what());
    }
    const double a = (*e)(0.0);
    if (a != (*e)(1.0) || a != (*e)(-2.5)) fail(field, "expression must not depend on t");
    return a;
  }
  fail(field, "expected a number or a constant expression");
}

Point2 point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected [x1, x2]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json complex_json(Complex z) { return json::array({round15(z.real()), round15(z.imag())}); }

bool is_flat(const SurfaceProfile& s) { return s.f_plus() == s.f_minus(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  check_keys(j, "", {"problem", "k_plus", "k_minus", "surface", "incident", "beta", "eta", "N", "A", "points", "output",
                     "threads"});
  RunConfig c;
  if (j.contains("problem")) {
    const json& p = j["problem"];
    const std::string s = p.is_string() ? p.get<std::string>() : "";
    if (s == "dirichlet" || s == "dbvp") c.kind = ProblemKind::dirichlet;
    else if (s == "impedance" || s == "ibvp") c.kind = ProblemKind::impedance;
    else fail("problem", "expected \"dirichlet\" or \"impedance\"");
  }
  if (j.contains("k_plus")) c.k_plus = number(j["k_plus"], "k_plus");
  if (j.contains("k_minus")) c.k_minus = number(j["k_minus"], "k_minus");

  if (j.contains("surface")) {
    const json& s = j["surface"];
    c.surface = {};
    if (s.is_string()) {
      c.surface.builtin = s.get<std::string>();
    } else if (s.is_object()) {
      check_keys(s, "surface", {"builtin", "f", "df", "d2f"});
      if (s.contains("builtin") == s.contains("f")) fail("surface", "give exactly one of 'builtin' or 'f'");
      auto str = [&](const char* key) {
        if (!s.contains(key)) return std::string();
        if (!s[key].is_string()) fail(std::string("surface.") + key, "expected a string");
        return s[key].get<std::string>();
      };
      c.surface.builtin = str("builtin");
      c.surface.expression = str("f");
      c.surface.d_expression = str("df");
      c.surface.d2_expression = str("d2f");
      if (!c.surface.builtin.empty() && (!c.surface.d_expression.empty() || !c.surface.d2_expression.empty()))
        fail("surface", "derivatives only apply to expression surfaces");
      for (auto [key, text] : {std::pair<const char*, const std::string*>{"f", &c.surface.expression},
                               {"df", &c.surface.d_expression}, {"d2f", &c.surface.d2_expression}}) {
        if (text->empty()) continue;
        try {
          Expression::parse(*text);
        } catch (const ConfigError& err) {
          fail(std::string("surface.") + key, err.what());
        }
      }
    } else {
      fail("surface", "expected a builtin name or an object");
    }
  }

  if (j.contains("incident")) {
    const json& in = j["incident"];
    if (!in.is_object()) fail("incident", "expected an object");
    check_keys(in, "incident", {"type", "theta_d", "y0"});
    const std::string type = in.value("type", std::string("plane"));
    if (type == "plane") {
      c.incident.plane = true;
      if (in.contains("y0")) fail("incident.y0", "not used by plane incidence");
      if (in.contains("theta_d")) c.incident.theta_d = number(in["theta_d"], "incident.theta_d");
    } else if (type == "point") {
      c.incident.plane = false;
      if (in.contains("theta_d")) fail("incident.theta_d", "not used by point incidence");
      if (!in.contains("y0")) fail("incident.y0", "required for point incidence");
      c.incident.y0 = point(in["y0"], "incident.y0");
    } else {
      fail("incident.type", "expected \"plane\" or \"point\"");
    }
  }

  if (j.contains("beta")) {
    const json& b = j["beta"];
    c.beta = {};
    if (b.is_number()) {
      c.beta.constant = Complex(b.get<double>());
    } else if (b.is_array()) {
      if (b.size() != 2) fail("beta", "expected [re, im]");
      c.beta.constant = Complex(number(b[0], "beta[0]"), number(b[1], "beta[1]"));
    } else if (b.is_string()) {
      c.beta.expression = b.get<std::string>();
      try {
        Expression::parse(c.beta.expression);
      } catch (const ConfigError& err) {
        fail("beta", err.what());
      }
    } else {
      fail("beta", "expected a number, [re, im] or an expression in t");
    }
  }
  if (j.contains("eta") && !j["eta"].is_null()) c.eta = number(j["eta"], "eta");
  if (j.contains("N")) {
    if (!j["N"].is_number_integer()) fail("N", "expected an integer");
    const auto n = j["N"].get<long long>();
    if (n < 1 || n > 4096) fail("N", "must be in [1, 4096]");
    c.N = static_cast<int>(n);
  }
  if (j.contains("A")) c.A = number(j["A"], "A");
  if (j.contains("points")) {
    const json& pts = j["points"];
    if (!pts.is_array()) fail("points", "expected a list of [x1, x2]");
    for (std::size_t i = 0; i < pts.size(); ++i) c.points.push_back(point(pts[i], "points[" + std::to_string(i) + "]"));
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) fail("output", "expected an object");
    check_keys(o, "output", {"dir", "density", "field"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) fail("output.dir", "expected a string");
      c.output.dir = o["dir"].get<std::string>();
    }
    for (const char* key : {"density", "field"}) {
      if (!o.contains(key)) continue;
      if (!o[key].is_boolean()) fail(std::string("output.") + key, "expected true or false");
      (std::string(key) == "density" ? c.output.density : c.output.field) = o[key].get<bool>();
    }
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_unsigned()) fail("threads", "expected a non-negative integer");
    c.threads = j["threads"].get<unsigned>();
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + file.string() + ": " + e.what());
  }
  return parse_config(j);
}

void validate(const RunConfig& c) {
  auto finite = [](double v, const char* field) {
    if (!std::isfinite(v)) fail(field, "must be finite");
  };
  finite(c.k_plus, "k_plus");
  finite(c.k_minus, "k_minus");
  if (!(c.k_plus > 0.0)) fail("k_plus", "must be positive");
  if (!(c.k_minus > 0.0)) fail("k_minus", "must be positive");
  if (c.k_plus == c.k_minus) fail("k_minus", "must differ from k_plus");
  if (c.N < 1) fail("N", "must be at least 1");
  finite(c.A, "A");
  if (!(c.A > 0.0)) fail("A", "must be positive");
  const double m = c.A / kPi;
  if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, m) || std::round(m) < 1.0)
    fail("A", "must be a positive multiple of pi");
  if (c.surface.builtin.empty() == c.surface.expression.empty())
    fail("surface", "give exactly one of a builtin name or an expression");
  if (!c.surface.builtin.empty() && c.surface.builtin != "gamma1" && c.surface.builtin != "gamma2" &&
      c.surface.builtin != "gamma3")
    fail("surface", "unknown builtin '" + c.surface.builtin + "' (gamma1, gamma2, gamma3)");
  if (c.incident.plane) {
    finite(c.incident.theta_d, "incident.theta_d");
    if (c.incident.theta_d < kPi || c.incident.theta_d > 2.0 * kPi) fail("incident.theta_d", "must lie in [pi, 2 pi]");
  } else {
    finite(c.incident.y0.x1, "incident.y0");
    finite(c.incident.y0.x2, "incident.y0");
  }
  if (c.beta.constant) {
    finite(c.beta.constant->real(), "beta");
    finite(c.beta.constant->imag(), "beta");
  }
  if (c.kind == ProblemKind::impedance && !c.beta.constant && c.beta.expression.empty())
    fail("beta", "required for impedance problems");
  if (c.eta) {
    finite(*c.eta, "eta");
    if (!(*c.eta > 0.0)) fail("eta", "must be positive");
  }
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    finite(c.points[i].x1, "points");
    finite(c.points[i].x2, "points");
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["problem"] = to_string(c.kind);
  j["k_plus"] = c.k_plus;
  j["k_minus"] = c.k_minus;
  if (!c.surface.builtin.empty()) {
    j["surface"] = {{"builtin", c.surface.builtin}};
  } else {
    j["surface"] = {{"f", c.surface.expression}};
    if (!c.surface.d_expression.empty()) j["surface"]["df"] = c.surface.d_expression;
    if (!c.surface.d2_expression.empty()) j["surface"]["d2f"] = c.surface.d2_expression;
  }
  if (c.incident.plane)
    j["incident"] = {{"type", "plane"}, {"theta_d", c.incident.theta_d}};
  else
    j["incident"] = {{"type", "point"}, {"y0", {c.incident.y0.x1, c.incident.y0.x2}}};
  if (c.beta.constant)
    j["beta"] = {c.beta.constant->real(), c.beta.constant->imag()};
  else
    j["beta"] = c.beta.expression;
  j["eta"] = c.eta ? json(*c.eta) : json(std::sqrt(c.k_plus * c.k_minus));
  j["N"] = c.N;
  j["A"] = c.A;
  j["points"] = json::array();
  for (const Point2& p : c.points) j["points"].push_back({p.x1, p.x2});
  j["output"] = {{"dir", c.output.dir.string()}, {"density", c.output.density}, {"field", c.output.field}};
  j["threads"] = c.threads;
  return j;
}

namespace {

// Inputs that change results; where files go and how many threads run do not.
json numerical_json(const RunConfig& c) {
  json j = to_json(c);
  j.erase("output");
  j.erase("threads");
  return j;
}

}  // namespace

std::string config_hash(const RunConfig& c) {
  const std::string text = numerical_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_header_comment(const RunConfig& c) {
  return "# config_hash=" + config_hash(c) + " config=" + numerical_json(c).dump() + "\n";
}

BoundaryProblem make_problem(const RunConfig& c) {
  validate(c);
  const MediumPair m(c.k_plus, c.k_minus);
  SurfaceProfile surf = [&] {
    if (!c.surface.builtin.empty()) return SurfaceProfile::builtin(c.surface.builtin);
    if (c.surface.d_expression.empty() && c.surface.d2_expression.empty())
      return SurfaceProfile::from_expression(c.surface.expression);
    const auto f = std::make_shared<Expression>(Expression::parse(c.surface.expression));
    const auto df = std::make_shared<Expression>(c.surface.d_expression.empty() ? f->derivative()
                                                                                : Expression::parse(c.surface.d_expression));
    const auto d2f = std::make_shared<Expression>(
        c.surface.d2_expression.empty() ? df->derivative() : Expression::parse(c.surface.d2_expression));
    return SurfaceProfile::from_functions(
        c.surface.expression, [f](double t) { return (*f)(t); }, [df](double t) { return (*df)(t); },
        [d2f](double t) { return (*d2f)(t); });
  }();
  Incidence inc = c.incident.plane ? Incidence(PlaneWave{c.incident.theta_d}) : Incidence(PointSource{c.incident.y0});
  if (c.kind == ProblemKind::dirichlet) return BoundaryProblem::dirichlet(m, std::move(surf), inc, c.eta);
  ParamFn beta;
  if (c.beta.constant) {
    const Complex b = *c.beta.constant;
    beta = [b](double) { return b; };
  } else {
    const auto e = std::make_shared<Expression>(Expression::parse(c.beta.expression));
    beta = [e](double t) { return Complex((*e)(t)); };
  }
  return BoundaryProblem::impedance(m, std::move(surf), inc, beta);
}

namespace {

std::optional<FourWaveSolution> flat_exact(const RunConfig& c, const BoundaryProblem& p) {
  if (!c.incident.plane || !is_flat(p.surface())) return std::nullopt;
  if (c.kind == ProblemKind::impedance && !c.beta.constant) return std::nullopt;
  return four_wave_exact(p.medium(), c.incident.theta_d, c.kind, c.beta.constant.value_or(Complex(0.0)),
                         p.surface().f_plus());
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

}  // namespace

RunReport run(const RunConfig& c) {
  const BoundaryProblem p = make_problem(c);
  const Grid grid(c.N, c.A);
  RunReport rep;
  rep.hash = config_hash(c);
  rep.N = c.N;
  rep.A = c.A;
  rep.unknowns = grid.size();

  auto t0 = std::chrono::steady_clock::now();
  const LinearSystem sys = assemble(p, grid, AssemblyOptions{c.threads});
  rep.assembly_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const DensitySolution sol = solve(sys);
  rep.solve_seconds = seconds_since(t0);
  rep.condition_estimate = sol.condition_estimate;
  rep.residual_norm = sol.residual_norm;

  t0 = std::chrono::steady_clock::now();
  const auto four = flat_exact(c, p);
  for (const Point2& x : c.points) {
    PointResult pr;
    pr.sample = total_field(p, sol, x, FieldOptions{c.threads});
    if (!c.incident.plane) {
      const Complex ex = point_source_exact(p.medium(), p.surface(), c.incident.y0, x, p.green_options());
      pr.exact = ex;
      pr.error = std::abs(pr.sample.scattered - ex) / std::abs(ex);
    } else if (four) {
      pr.exact = four->value(x);
      pr.error = std::abs(pr.sample.total - *pr.exact);
    }
    rep.points.push_back(pr);
  }
  rep.eval_seconds = seconds_since(t0);

  if (!c.output.dir.empty()) {
    std::filesystem::create_directories(c.output.dir);
    const std::string header = csv_header_comment(c);
    if (c.output.density) {
      const auto path = c.output.dir / "density.csv";
      auto out = open_output(path);
      out << header;
      write_density_csv(out, sol);
      rep.files.push_back(path);
    }
    if (c.output.field && !rep.points.empty()) {
      const auto path = c.output.dir / "field.csv";
      auto out = open_output(path);
      out << header;
      std::vector<FieldSample> samples;
      for (const auto& pr : rep.points) samples.push_back(pr.sample);
      write_field_csv(out, samples);
      rep.files.push_back(path);
    }
    const auto path = c.output.dir / "report.json";
    auto out = open_output(path);
    out << to_json(rep).dump(2) << '\n';
    rep.files.push_back(path);
  }
  return rep;
}

json to_json(const RunReport& r) {
  json j;
  j["config_hash"] = r.hash;
  j["N"] = r.N;
  j["A"] = round15(r.A);
  j["unknowns"] = r.unknowns;
  j["condition_estimate"] = round15(r.condition_estimate);
  j["residual_norm"] = round15(r.residual_norm);
  j["timings"] = {{"assembly_s", round15(r.assembly_seconds)},
                  {"solve_s", round15(r.solve_seconds)},
                  {"eval_s", round15(r.eval_seconds)}};
  j["points"] = json::array();
  for (const PointResult& p : r.points) {
    json q = {{"x", {round15(p.sample.x.x1), round15(p.sample.x.x2)}},
              {"region", to_string(p.sample.region)},
              {"near_surface", p.sample.near_surface},
              {"incident", complex_json(p.sample.incident)},
              {"scattered", complex_json(p.sample.scattered)},
              {"total", complex_json(p.sample.total)}};
    if (p.exact) q["exact"] = complex_json(*p.exact);
    if (p.error) q["error"] = round15(*p.error);
    j["points"].push_back(q);
  }
  j["files"] = json::array();
  for (const auto& f : r.files) j["files"].push_back(f.string());
  return j;
}

std::vector<SweepRow> convergence_sweep(const RunConfig& c, const std::vector<int>& n_list) {
  if (n_list.empty()) fail("N", "sweep needs at least one value");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) fail("N", "sweep values must be strictly ascending");
  if (c.points.empty()) fail("points", "sweep needs at least one evaluation point");

  std::vector<SweepRow> rows;
  std::vector<Complex> prev;
  for (int n : n_list) {
    RunConfig cn = c;
    cn.N = n;
    cn.output.dir.clear();
    const RunReport rep = run(cn);
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
      const PointResult& pr = rep.points[k];
      SweepRow row;
      row.N = n;
      row.x = pr.sample.x;
      row.value = c.incident.plane ? pr.sample.total : pr.sample.scattered;
      row.exact = pr.exact;
      row.error = pr.error;
      if (!prev.empty()) row.diff = std::abs(row.value - prev[k]);
      rows.push_back(row);
    }
    prev.clear();
    for (std::size_t k = rows.size() - rep.points.size(); k < rows.size(); ++k) prev.push_back(rows[k].value);
  }

  if (!c.output.dir.empty()) {
    std::filesystem::create_directories(c.output.dir);
    auto out = open_output(c.output.dir / "sweep.csv");
    out << csv_header_comment(c) << "N,x1,x2,re,im,exact_re,exact_im,error,diff\n" << std::setprecision(15);
    for (const SweepRow& r : rows) {
      out << r.N << ',' << r.x.x1 << ',' << r.x.x2 << ',' << r.value.real() << ',' << r.value.imag() << ',';
      if (r.exact) out << r.exact->real() << ',' << r.exact->imag();
      else out << ',';
      out << ',';
      if (r.error) out << *r.error;
      out << ',';
      if (r.diff) out << *r.diff;
      out << '\n';
    }
  }
  return rows;
}

std::vector<std::string> preset_names() {
  return {"example1-dbvp", "example1-ibvp", "example2-dbvp", "example2-ibvp", "example3-dbvp", "example3-ibvp"};
}

RunConfig preset(const std::string& name, bool swap_media) {
  RunConfig c;
  const auto dash = name.find('-');
  const std::string example = name.substr(0, dash);
  const std::string bc = dash == std::string::npos ? "" : name.substr(dash + 1);
  if (bc == "dbvp") c.kind = ProblemKind::dirichlet;
  else if (bc == "ibvp") c.kind = ProblemKind::impedance;
  else throw ConfigError("unknown preset '" + name + "'");
  c.beta.constant = Complex(1.0);
  c.N = 16;
  if (example == "example1") {
    c.k_plus = 2.7;
    c.k_minus = 3.5;
    c.surface = {"gamma1", "", "", ""};
    c.incident.plane = false;
    c.incident.y0 = {1.0, -1.3};
    c.points = {{0.6, 0.56}};
  } else if (example == "example2") {
    c.k_plus = 2.7;
    c.k_minus = 3.5;
    c.surface = {"gamma2", "", "", ""};
    c.incident.theta_d = 4.0 * kPi / 3.0;
    c.points = {{1.0, -0.2}};
  } else if (example == "example3") {
    c.k_plus = 3.0;
    c.k_minus = 4.0;
    c.surface = {"gamma3", "", "", ""};
    c.incident.theta_d = 17.0 * kPi / 12.0;
    c.points = {{1.0, 0.3}};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  if (swap_media) std::swap(c.k_plus, c.k_minus);
  validate(c);
  return c;
}

}  // namespace twolayer::runner
