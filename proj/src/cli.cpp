#include "pdm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pdm/altspectral.hpp"
#include "pdm/coherent.hpp"
#include "pdm/errors.hpp"
#include "pdm/spectrum.hpp"

namespace pdm::cli {

namespace {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range3 {
  double lo, hi;
  int n;
};

struct RunConfig {
  std::string mass = "gaussian";
  std::optional<std::string> mass_expr;
  double m0 = 1.0;
  Complex lambda{-2.0, 0.0};
  Complex gamma{1.0, 0.0};
  double hbar = 1.0;
  std::optional<Range3> grid;
  int n_max = 6;
  Complex z{1.0, 0.5};
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::string suite = "all";
  std::string what = "phi";
  std::string which = "psi_sq";
  std::string axes = "x_zi";
  std::optional<double> fixed_zr;
  std::optional<double> fixed_x;
  Range3 zr_range{-3.0, 3.0, 61};
  Range3 zi_range{-3.0, 3.0, 61};
};

// Raw flag values; anything set here overrides the config file.
struct Flags {
  std::string config;
  std::string mass, mass_expr, m0, lambda, gamma, hbar, grid, n_max, z, out, format, suite, what, which, axes,
      fixed_zr, fixed_x, zr_range, zi_range;
};

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& text, const std::string& what) {
  const char* s = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  while (end && *end == ' ') ++end;
  if (end == s || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError(what + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (!text.empty() && text.back() == ',') parts.push_back("");
  return parts;
}

Complex parse_complex(const std::string& text, const std::string& what) {
  const auto p = split_commas(text);
  if (p.size() == 1) return {parse_real(p[0], what), 0.0};
  if (p.size() == 2) return {parse_real(p[0], what), parse_real(p[1], what)};
  throw ConfigError(what + ": expected RE,IM, got '" + text + "'");
}

Range3 parse_range(const std::string& text, const std::string& what) {
  const auto p = split_commas(text);
  if (p.size() != 3) throw ConfigError(what + ": expected MIN,MAX,N, got '" + text + "'");
  const double n = parse_real(p[2], what);
  if (n != std::floor(n) || n < 2 || n > 1e6) throw ConfigError(what + ": point count must be an integer >= 2");
  Range3 r{parse_real(p[0], what), parse_real(p[1], what), static_cast<int>(n)};
  if (!(r.lo < r.hi)) throw ConfigError(what + ": MIN must be below MAX");
  return r;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_real(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(what + ": expected an integer");
  return static_cast<int>(v);
}

// JSON values may be numbers, "re,im" strings or [re, im] arrays.
Complex json_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>(), what);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(what + ": expected a number, \"re,im\" or [re, im]");
}

double json_real(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_real(j.get<std::string>(), what);
  throw ConfigError(what + ": expected a number");
}

Range3 json_range(const json& j, const std::string& what) {
  if (j.is_string()) return parse_range(j.get<std::string>(), what);
  if (j.is_object()) {
    std::ostringstream s;
    s << fmt(json_real(j.at("x_min"), what)) << ',' << fmt(json_real(j.at("x_max"), what)) << ','
      << fmt(json_real(j.at("n_points"), what));
    return parse_range(s.str(), what);
  }
  if (j.is_array() && j.size() == 3) {
    return parse_range(fmt(json_real(j[0], what)) + "," + fmt(json_real(j[1], what)) + "," +
                           fmt(json_real(j[2], what)),
                       what);
  }
  throw ConfigError(what + ": expected \"min,max,n\", [min, max, n] or {x_min, x_max, n_points}");
}

std::string json_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + ": expected a string");
  return j.get<std::string>();
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "mass") c.mass = json_string(v, key);
      else if (key == "mass_expr") c.mass_expr = json_string(v, key);
      else if (key == "m0") c.m0 = json_real(v, key);
      else if (key == "lambda") c.lambda = json_complex(v, key);
      else if (key == "gamma") c.gamma = json_complex(v, key);
      else if (key == "hbar") c.hbar = json_real(v, key);
      else if (key == "grid") c.grid = json_range(v, key);
      else if (key == "n_max") c.n_max = parse_int(fmt(json_real(v, key)), key);
      else if (key == "z") c.z = json_complex(v, key);
      else if (key == "output") c.output = json_string(v, key);
      else if (key == "format") c.format = json_string(v, key);
      else if (key == "suite") c.suite = json_string(v, key);
      else if (key == "what") c.what = json_string(v, key);
      else if (key == "which") c.which = json_string(v, key);
      else if (key == "axes") c.axes = json_string(v, key);
      else if (key == "fixed_zr") c.fixed_zr = json_real(v, key);
      else if (key == "fixed_x") c.fixed_x = json_real(v, key);
      else if (key == "zr_range") c.zr_range = json_range(v, key);
      else if (key == "zi_range") c.zi_range = json_range(v, key);
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) apply_config_file(c, f.config);
  if (!f.mass.empty()) {
    c.mass = f.mass;
    c.mass_expr.reset();
  }
  if (!f.mass_expr.empty()) c.mass_expr = f.mass_expr;
  if (!f.m0.empty()) c.m0 = parse_real(f.m0, "--m0");
  if (!f.lambda.empty()) c.lambda = parse_complex(f.lambda, "--lambda");
  if (!f.gamma.empty()) c.gamma = parse_complex(f.gamma, "--gamma");
  if (!f.hbar.empty()) c.hbar = parse_real(f.hbar, "--hbar");
  if (!f.grid.empty()) c.grid = parse_range(f.grid, "--grid");
  if (!f.n_max.empty()) c.n_max = parse_int(f.n_max, "--nmax");
  if (!f.z.empty()) c.z = parse_complex(f.z, "--z");
  if (!f.out.empty()) c.output = f.out;
  if (!f.format.empty()) c.format = f.format;
  if (!f.suite.empty()) c.suite = f.suite;
  if (!f.what.empty()) c.what = f.what;
  if (!f.which.empty()) c.which = f.which;
  if (!f.axes.empty()) c.axes = f.axes;
  if (!f.fixed_zr.empty()) c.fixed_zr = parse_real(f.fixed_zr, "--fixed-zr");
  if (!f.fixed_x.empty()) c.fixed_x = parse_real(f.fixed_x, "--fixed-x");
  if (!f.zr_range.empty()) c.zr_range = parse_range(f.zr_range, "--zr-range");
  if (!f.zi_range.empty()) c.zi_range = parse_range(f.zi_range, "--zi-range");

  if (!(c.m0 > 0.0)) throw ConfigError("m0 must be positive");
  if (!(c.hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (c.lambda == Complex(0.0)) throw ConfigError("lambda must be nonzero");
  if (c.n_max < 0 || c.n_max > kHermiteMaxDegree) throw ConfigError("n_max must lie in [0, 200]");
  if (c.grid && c.grid->n < Grid::kMinPoints) throw ConfigError("grid needs at least 9 points");
  if (c.format && *c.format != "csv" && *c.format != "json") throw ConfigError("format must be csv or json");
  return c;
}

SystemParams build_system(const RunConfig& c) {
  try {
    MassModel mass = c.mass_expr ? MassModel::custom(MassExpr::parse(*c.mass_expr), c.m0)
                                 : MassModel::from_name(c.mass, c.m0);
    return SystemParams(c.lambda, c.gamma, c.hbar, std::move(mass));
  } catch (const ParseError& e) {
    std::string expected;
    for (const auto& t : e.expected) expected += (expected.empty() ? "" : " ") + t;
    throw ConfigError("mass expression: " + std::string(e.what()) + " (expected: " + expected + ")");
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

json complex_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json extended_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.output) {
    out << text;
    return;
  }
  std::ofstream f(*c.output, std::ios::binary);
  if (!f) throw IoError("cannot open '" + *c.output + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + *c.output + "'");
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const SystemParams sys = build_system(c);
  const Classification phi = classify(sys, Side::Phi);
  const Classification psi = classify(sys, Side::Psi);
  const FRange r = sys.mass.F_limits();
  json rep;
  rep["mass"] = c.mass_expr ? "custom" : c.mass;
  if (c.mass_expr) rep["mass_expr"] = *c.mass_expr;
  rep["lambda"] = complex_json(sys.lambda);
  rep["gamma"] = complex_json(sys.gamma);
  rep["hbar"] = sys.hbar;
  rep["theta_lambda"] = sys.theta.value;
  rep["verdict"] = to_string(phi.verdict);
  rep["case"] = to_string(phi.reason);
  rep["psi_verdict"] = to_string(psi.verdict);
  rep["F_limits"] = json{{"f_minus", extended_real(r.f_minus)},
                         {"f_plus", extended_real(r.f_plus)},
                         {"heuristic", r.heuristic},
                         {"confident", r.confident}};
  if (phi.verdict == Verdict::Integrable) rep["N_phi0"] = complex_json(norm_constant(sys));
  rep["E0"] = complex_json(eigen_E0(sys));
  json table = json::array();
  for (int n = 0; n <= c.n_max; ++n) table.push_back(json{{"n", n}, {"E", complex_json(eigen_En(sys, n))}});
  rep["E_n"] = table;
  emit(c, rep.dump(2) + "\n", out);
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct CheckList {
  json entries = json::array();
  bool failed = false;

  void add(const std::string& name, double residual, double tol) {
    const bool pass = std::isfinite(residual) && residual < tol;
    failed = failed || !pass;
    entries.push_back(json{{"name", name},
                           {"residual", std::isfinite(residual) ? json(residual) : json(nullptr)},
                           {"tolerance", tol},
                           {"pass", pass}});
  }
  void skip(const std::string& name, double tol, const std::string& reason) {
    entries.push_back(json{{"name", name}, {"residual", nullptr}, {"tolerance", tol}, {"skipped_reason", reason}});
  }
};

double operator_tolerance(const SystemParams& sys) {
  switch (sys.mass.kind()) {
    case MassKind::Constant:
    case MassKind::Gaussian:
    case MassKind::Lorentzian: return 1e-5;
    default: return 1e-4;
  }
}

double sup_relative(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

std::vector<SampledFunction> probe_set(const SystemParams& sys, const Grid& g) {
  auto probes = bump_probes(g, 3);
  const auto ph = EigenFamily(sys, Side::Phi, true).sample_upto(3, g);
  probes.insert(probes.end(), ph.begin(), ph.end());
  return probes;
}

void run_suite(const std::string& suite, const SystemParams& sys, const RunConfig& c, CheckList& checks) {
  const double tol = operator_tolerance(sys);
  const Grid op_grid = c.grid ? Grid(c.grid->lo, c.grid->hi, c.grid->n) : grid_for(operator_window(sys), 0.005);
  const Window qw = quadrature_window(sys);
  const Grid value_grid = c.grid ? op_grid : Grid(qw.lo, qw.hi, 2001);
  const bool integrable =
      classify(sys, Side::Phi).verdict == Verdict::Integrable && classify(sys, Side::Psi).verdict == Verdict::Integrable;

  if (suite == "commutators") {
    const auto probes = probe_set(sys, op_grid);
    checks.add("commutator [H,A] = lambda A", commutator_residual(sys, CommutatorPair::H_A, probes), tol);
    checks.add("commutator [A,B] = -lambda", commutator_residual(sys, CommutatorPair::A_B, probes), tol);
  } else if (suite == "factorization") {
    checks.add("factorization H - E0 = B A", factorization_residual(sys, probe_set(sys, op_grid)), tol);
  } else if (suite == "ladder") {
    const LadderReport rep = ladder_residuals(sys, c.n_max, op_grid);
    for (const auto& e : rep.entries) checks.add(e.relation + " [n=" + std::to_string(e.n) + "]", e.residual, tol);
  } else if (suite == "eigen") {
    for (Side s : {Side::Phi, Side::Psi}) {
      for (int n = 0; n <= c.n_max; ++n) {
        checks.add("eigen " + to_string(s) + "_" + std::to_string(n), eigen_residual(sys, s, n, op_grid), tol);
      }
    }
  } else if (suite == "biortho") {
    const double btol = 1e-6;
    if (!integrable) {
      const Classification cl = classify(sys);
      checks.skip("biorthonormality", btol,
                  "family is " + to_string(cl.verdict) + " (" + to_string(cl.reason) + "); normalization undefined");
      return;
    }
    const BiorthoReport rep = c.grid ? biorthonormality_matrix(sys, c.n_max, Grid(c.grid->lo, c.grid->hi, c.grid->n))
                                     : biorthonormality_matrix(sys, c.n_max);
    checks.add("biorthonormality max |G - I|", rep.max_deviation, btol);
  } else if (suite == "coherent") {
    const Complex z = c.z;
    for (Side s : {Side::Phi, Side::Psi}) {
      ComplexVector series(value_grid.size());
      for (Eigen::Index i = 0; i < value_grid.size(); ++i) {
        series[i] = coherent_series(sys, s, z, value_grid.x(i), 60).value;
      }
      checks.add("coherent series vs closed form (" + to_string(s) + ")",
                 sup_relative(series, sample_coherent(sys, s, z, value_grid).values), 1e-8);
    }
    const CoherentResiduals r = coherent_eigen_residual(sys, z, op_grid);
    checks.add("coherent a phi(z) = z phi(z)", r.phi, tol);
    checks.add("coherent b_dagger psi(z) = z psi(z)", r.psi, tol);
    if (sys.real_parameters()) {
      checks.add("shift relation psi(z) = alpha phi(z1)", shift_relation_residual(sys, z, value_grid), 1e-8);
    } else {
      checks.skip("shift relation psi(z) = alpha phi(z1)", 1e-8, "needs real lambda and gamma");
    }
  } else if (suite == "alt") {
    const RotatedOscillator rot = RotatedOscillator::from(sys);
    const int top = std::min(c.n_max, 5);
    for (int n = 0; n <= top; ++n) {
      const Complex lhs = htheta_eigenvalue(rot, n) - sys.hbar * sys.hbar * sys.gamma * sys.gamma / 2.0;
      const Complex E = eigen_En(sys, n);
      checks.add("E_theta - hbar^2 gamma^2/2 = E_" + std::to_string(n), std::abs(lhs - E) / std::max(1.0, std::abs(E)),
                 1e-12);
      for (Side s : {Side::Phi, Side::Psi}) {
        checks.add("alt/closed ratio constancy (" + to_string(s) + "_" + std::to_string(n) + ")",
                   ratio_deviation(sys, s, n, value_grid), 1e-8);
      }
    }
  } else {
    throw ConfigError("unknown suite '" + suite +
                      "' (expected commutators, factorization, ladder, eigen, biortho, coherent, alt or all)");
  }
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  static const std::array<const char*, 7> all = {"commutators", "factorization", "ladder", "eigen",
                                                 "biortho",     "coherent",      "alt"};
  if (c.suite != "all" && std::find(all.begin(), all.end(), c.suite) == all.end()) {
    throw ConfigError("unknown suite '" + c.suite + "'");
  }
  const SystemParams sys = build_system(c);
  CheckList checks;
  for (const char* s : all) {
    if (c.suite != "all" && c.suite != s) continue;
    try {
      run_suite(s, sys, c, checks);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      checks.skip(s, 0.0, std::string("could not run: ") + e.what());
      checks.failed = true;
    }
  }
  json rep;
  rep["suite"] = c.suite;
  rep["checks"] = checks.entries;
  rep["pass"] = !checks.failed;
  emit(c, rep.dump(2) + "\n", out);
  return checks.failed ? kExitCheckFailed : kExitOk;
}

// ---- table / surface ----------------------------------------------------------

std::string render_table(const RunConfig& c, const std::vector<std::string>& cols,
                         const std::vector<std::vector<double>>& rows) {
  const std::string format = c.format.value_or("csv");
  if (format == "json") {
    json j;
    j["columns"] = cols;
    json rs = json::array();
    for (const auto& r : rows) rs.push_back(r);
    j["rows"] = rs;
    return j.dump(2) + "\n";
  }
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  s += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + fmt(r[i]);
    s += "\n";
  }
  return s;
}

Grid table_grid(const RunConfig& c, const SystemParams& sys) {
  if (c.grid) return Grid(c.grid->lo, c.grid->hi, c.grid->n);
  const Window w = quadrature_window(sys);
  return Grid(w.lo, w.hi, 201);
}

int cmd_table(const RunConfig& c, std::ostream& out) {
  const SystemParams sys = build_system(c);
  const Grid g = table_grid(c, sys);
  std::vector<std::string> cols{"x"};
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.size()));
  for (Eigen::Index i = 0; i < g.size(); ++i) rows[static_cast<std::size_t>(i)].push_back(g.x(i));
  auto add_column = [&](const std::string& name, const std::function<Complex(Eigen::Index)>& f) {
    cols.push_back("re_" + name);
    cols.push_back("im_" + name);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const Complex v = f(i);
      rows[static_cast<std::size_t>(i)].push_back(v.real());
      rows[static_cast<std::size_t>(i)].push_back(v.imag());
    }
  };
  if (c.what == "potential") {
    add_column("V", [&](Eigen::Index i) { return potential(sys, g.x(i)); });
  } else if (c.what == "phi" || c.what == "psi") {
    const Side s = c.what == "phi" ? Side::Phi : Side::Psi;
    const auto fam = EigenFamily(sys, s, true).sample_upto(c.n_max, g);
    for (int n = 0; n <= c.n_max; ++n) {
      add_column(c.what + "_" + std::to_string(n), [&](Eigen::Index i) { return fam[static_cast<std::size_t>(n)].values[i]; });
    }
  } else if (c.what == "vacua") {
    const EigenFamily phi(sys, Side::Phi, true), psi(sys, Side::Psi, true);
    add_column("phi_0", [&](Eigen::Index i) { return phi.vacuum(g.x(i)); });
    add_column("psi_0", [&](Eigen::Index i) { return psi.vacuum(g.x(i)); });
  } else {
    throw ConfigError("unknown table '" + c.what + "' (expected phi, psi, potential or vacua)");
  }
  emit(c, render_table(c, cols, rows), out);
  return kExitOk;
}

std::vector<double> axis(const Range3& r) {
  std::vector<double> v(static_cast<std::size_t>(r.n));
  for (int i = 0; i < r.n; ++i) v[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (r.n - 1);
  return v;
}

int cmd_surface(const RunConfig& c, std::ostream& out) {
  SurfaceKind kind;
  if (c.which == "psi_sq") kind = SurfaceKind::PsiSq;
  else if (c.which == "alpha_phi_sq") kind = SurfaceKind::AlphaPhiSq;
  else throw ConfigError("unknown surface '" + c.which + "' (expected psi_sq or alpha_phi_sq)");

  std::vector<double> rows_axis, cols_axis;
  std::string corner;
  std::function<Complex(double, double)> z_of;
  std::function<double(double, double)> x_of;
  const SystemParams sys = build_system(c);
  if (c.axes == "x_zi") {
    if (!c.fixed_zr) throw ConfigError("surface with axes x_zi needs --fixed-zr");
    const Grid g = table_grid(c, sys);
    for (Eigen::Index i = 0; i < g.size(); ++i) rows_axis.push_back(g.x(i));
    cols_axis = axis(c.zi_range);
    corner = "x\\zi";
    const double zr = *c.fixed_zr;
    z_of = [zr](double, double zi) { return Complex(zr, zi); };
    x_of = [](double r, double) { return r; };
  } else if (c.axes == "zr_zi") {
    if (!c.fixed_x) throw ConfigError("surface with axes zr_zi needs --fixed-x");
    rows_axis = axis(c.zr_range);
    cols_axis = axis(c.zi_range);
    corner = "zr\\zi";
    z_of = [](double zr, double zi) { return Complex(zr, zi); };
    const double x = *c.fixed_x;
    x_of = [x](double, double) { return x; };
  } else {
    throw ConfigError("unknown axes '" + c.axes + "' (expected x_zi or zr_zi)");
  }
  std::vector<std::string> cols{corner};
  for (double v : cols_axis) cols.push_back(fmt(v));
  std::vector<std::vector<double>> rows;
  for (double r : rows_axis) {
    std::vector<double> row{r};
    for (double col : cols_axis) row.push_back(surface_value(sys, kind, z_of(r, col), x_of(r, col)));
    rows.push_back(std::move(row));
  }
  emit(c, render_table(c, cols, rows), out);
  return kExitOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its fields");
  sub->add_option("--mass", f.mass, "constant | gaussian | lorentzian | exp-up");
  sub->add_option("--mass-expr", f.mass_expr, "custom mass expression in x (and m0)");
  sub->add_option("--m0", f.m0, "mass scale");
  sub->add_option("--lambda", f.lambda, "RE,IM");
  sub->add_option("--gamma", f.gamma, "RE,IM");
  sub->add_option("--hbar", f.hbar, "reduced Planck constant");
  sub->add_option("--nmax", f.n_max, "highest eigenstate index");
  sub->add_option("--z", f.z, "coherent-state label RE,IM");
  sub->add_option("--grid", f.grid, "MIN,MAX,N");
  sub->add_option("--out", f.out, "output path (stdout when absent)");
  sub->add_option("--format", f.format, "csv | json");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factorizable position-dependent-mass Hamiltonians: classify, verify, tabulate."};
  app.name("pdml");
  app.require_subcommand(1);
  Flags f;
  CLI::App* classify_cmd = app.add_subcommand("classify", "square-integrability verdict and spectrum");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run numerical verification suites");
  CLI::App* table_cmd = app.add_subcommand("table", "tabulate eigenstates, vacua or the potential");
  CLI::App* surface_cmd = app.add_subcommand("surface", "coherent-state surfaces on a rectangular grid");
  for (CLI::App* sub : {classify_cmd, verify_cmd, table_cmd, surface_cmd}) add_common(sub, f);
  verify_cmd->add_option("--suite", f.suite, "commutators|factorization|ladder|eigen|biortho|coherent|alt|all");
  table_cmd->add_option("--what", f.what, "phi | psi | potential | vacua");
  surface_cmd->add_option("--which", f.which, "psi_sq | alpha_phi_sq");
  surface_cmd->add_option("--axes", f.axes, "x_zi | zr_zi");
  surface_cmd->add_option("--fixed-zr", f.fixed_zr, "Re z held fixed (axes x_zi)");
  surface_cmd->add_option("--fixed-x", f.fixed_x, "x held fixed (axes zr_zi)");
  surface_cmd->add_option("--zr-range", f.zr_range, "MIN,MAX,N");
  surface_cmd->add_option("--zi-range", f.zi_range, "MIN,MAX,N");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    const RunConfig c = resolve(f);
    if (*classify_cmd) return cmd_classify(c, out);
    if (*verify_cmd) return cmd_verify(c, out);
    if (*table_cmd) return cmd_table(c, out);
    return cmd_surface(c, out);
  } catch (const ConfigError& e) {
    err << "pdml: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "pdml: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "pdml: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace pdm::cli
