// gskit command-line front end.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage or
// domain error. Every JSON document carries "schema": 1.

#include "gskit/acceptance.hpp"
#include "gskit/bautin.hpp"
#include "gskit/bt.hpp"
#include "gskit/config.hpp"
#include "gskit/continuation.hpp"
#include "gskit/dynamics.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/errors.hpp"
#include "gskit/exact.hpp"
#include "gskit/portrait.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace gskit;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

// -- output ---------------------------------------------------------------------

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json doc(const std::string& command) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

json state_json(const State& p) { return {{"u", p.u}, {"v", p.v}}; }

json report_json(const StabilityReport& r) {
  return {{"class", to_string(r.cls)},
          {"nonhyperbolic", to_string(r.kind)},
          {"trace", r.trace},
          {"det", r.det},
          {"eigenvalues", json::array({json::array({r.lambda1.real(), r.lambda1.imag()}),
                                       json::array({r.lambda2.real(), r.lambda2.imag()})})}};
}

json cycle_json(const CycleRepr& c) {
  return {{"s", c.s},
          {"point", state_json(c.section_point)},
          {"period", c.period},
          {"multiplier", c.nontrivial_multiplier},
          {"stable", c.stable()}};
}

std::string eq_name(std::size_t i) { return i == 0 ? "p0" : i == 1 ? "p_mp" : "p_pm"; }

std::string kind_name(NontrivialKind k) {
  return k == NontrivialKind::None ? "none" : k == NontrivialKind::Degenerate ? "degenerate" : "pair";
}

// -- shared options ---------------------------------------------------------------

// Flags that shadow config keys. They are applied after the config file, so
// a flag always wins.
struct Shared {
  std::string config_path;
  std::vector<std::pair<std::string, std::string*>> keyed;
  std::string rel_tol, abs_tol, out_dir, format, seed, threads;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    const auto add = [&](const std::string& flag, const std::string& key, std::string& target, const std::string& help) {
      app.add_option(flag, target, help);
      keyed.push_back({key, &target});
    };
    add("--rel-tol", "rel_tol", rel_tol, "integrator relative tolerance");
    add("--abs-tol", "abs_tol", abs_tol, "integrator absolute tolerance");
    add("--out-dir", "out_dir", out_dir, "directory for generated files");
    add("--format", "format", format, "json | csv | svg");
    add("--seed", "seed", seed, "seed of sampled checks");
    add("--threads", "threads", threads, "worker threads (0: all; GSKIT_THREADS caps)");
  }

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& [key, value] : keyed) {
      if (!value->empty()) c.set(key, *value);
    }
    return c;
  }
};

IntegratorSettings integrator_of(const RunConfig& c) { return {c.rel_tol, c.abs_tol}; }

std::string format_or(const RunConfig& c, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw ConfigError("format '" + f + "' is not available for this command");
}

Number param(const std::string& text, const char* name) {
  if (text.empty()) throw ConfigError(std::string("--") + name + " is required");
  try {
    return parse_number(text);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--") + name + ": " + e.what());
  }
}

// -- eq -------------------------------------------------------------------------

int cmd_eq(const RunConfig&, const std::string& ks, const std::string& Fs, const std::string& out) {
  const Number k = param(ks, "k"), F = param(Fs, "F");
  const Params a{k.value, F.value};
  require_positive(a);
  json j = doc("eq");
  j["params"] = {{"k", a.k}, {"F", a.F}};
  if (k.exact && F.exact) {
    j["params"]["k_exact"] = to_string(*k.exact);
    j["params"]["F_exact"] = to_string(*F.exact);
  }
  const auto d = discriminants(a);
  j["Delta"] = d.Delta;

  std::optional<BasicEquilibriumSet<Rational>> ex;
  const BasicParams<Rational> qa{k.exact.value_or(0), F.exact.value_or(0)};
  if (k.exact && F.exact) ex = equilibria_exact(qa);

  json list = json::array();
  if (ex) {
    // Exact mode: coordinates and the signs of tr, det are exact, so the class
    // is decided with zero tolerance.
    j["mode"] = "exact";
    j["Delta_exact"] = to_string(discriminants(qa).Delta);
    j["nontrivial"] = kind_name(ex->kind);
    const auto pts = ex->all();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto inv = linear_invariants(pts[i], qa);
      json e = {{"name", eq_name(i)},
                {"u", to_double(pts[i].u)},
                {"v", to_double(pts[i].v)},
                {"u_exact", to_string(pts[i].u)},
                {"v_exact", to_string(pts[i].v)}};
      e["stability"] = report_json(classify_linear(to_double(inv.trace), to_double(inv.det), 0.0));
      e["stability"]["trace_exact"] = to_string(inv.trace);
      e["stability"]["det_exact"] = to_string(inv.det);
      list.push_back(e);
    }
  } else {
    j["mode"] = "float";
    if (k.exact && F.exact) j["note"] = "sqrt(Delta) is irrational; coordinates are floating point";
    const auto eq = equilibria(a);
    j["nontrivial"] = kind_name(eq.kind);
    const auto pts = eq.all();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      json e = {{"name", eq_name(i)}, {"u", pts[i].u}, {"v", pts[i].v}};
      e["stability"] = report_json(classify(pts[i], a));
      list.push_back(e);
    }
  }
  j["equilibria"] = list;
  write_text(out, dump(j));
  return kOk;
}

// -- verify-bt / verify-bautin --------------------------------------------------

json check(const std::string& name, bool pass) { return {{"name", name}, {"pass", pass}}; }

int cmd_verify_bt(bool mutate, const std::string& out) {
  const auto r = bt::bt_nondegeneracy(mutate);
  const bool det_ok = r.transversality_det == Rational(-1, 512);
  json j = doc("verify-bt");
  j["mutate"] = mutate;
  j["point"] = {{"k", to_string(r.k)}, {"F", to_string(r.F)}, {"u", to_string(r.u)}, {"v", to_string(r.v)}};
  j["coefficients"] = {{"a20", to_string(r.coefficients.a20)},
                       {"b20", to_string(r.coefficients.b20)},
                       {"b11", to_string(r.coefficients.b11)},
                       {"a20_plus_b11", to_string(r.a20_plus_b11)}};
  j["s"] = r.s;
  json rows = json::array();
  for (const auto& row : r.transversality) {
    json jr = json::array();
    for (const auto& x : row) jr.push_back(to_string(x));
    rows.push_back(jr);
  }
  j["transversality"] = {{"matrix", rows}, {"det", to_string(r.transversality_det)}};
  j["checks"] = json::array({check("equilibrium with tr = det = 0", r.equilibrium_ok),
                             check("Jordan frame", r.frame_ok), check("a20 + b11 != 0", r.bt1),
                             check("b20 != 0", r.bt2), check("transversality det != 0", r.bt3),
                             check("transversality det = -1/512", det_ok)});
  // The sign s depends on b20; the reference value differs from ours (see README).
  j["reference"] = {{"b20", to_string(r.reference_b20)},
                    {"s", r.reference_s},
                    {"s_agrees", r.reference_s == r.s}};
  const bool pass = r.nondegenerate() && det_ok;
  j["passed"] = pass;
  write_text(out, dump(j));
  return pass ? kOk : kFail;
}

json poly_json(const IntPoly& p) {
  json c = json::array();
  for (const auto& x : p.coefficients()) c.push_back(to_string(x));
  return c;
}

int cmd_verify_bautin(bool mutate, const std::string& out) {
  const auto r = bautin::verify_bautin(mutate);
  const auto& g = r.location;
  const bool res_ok = g.resultant == g.expected_resultant || g.resultant == -g.expected_resultant;
  json j = doc("verify-bautin");
  j["mutate"] = mutate;
  j["gh"] = {{"k", to_string(g.k)}, {"F", to_string(g.F)}, {"u", to_string(g.u)}, {"v", to_string(g.v)}};
  j["resultant"] = {{"coefficients", poly_json(g.resultant)},
                    {"sign", g.resultant == g.expected_resultant ? 1 : g.resultant == -g.expected_resultant ? -1 : 0}};
  json roots = json::array();
  for (const auto& m : g.roots) {
    json e = {{"y", to_string(m.y)}, {"multiplicity", m.multiplicity}, {"admissible", m.admissible}};
    if (m.k) e["k"] = to_string(*m.k);
    if (m.F) e["F"] = to_string(*m.F);
    if (!m.reason.empty()) e["reason"] = m.reason;
    roots.push_back(e);
  }
  j["roots"] = roots;
  j["l1_left_sign"] = r.l1_left_sign;
  j["l1_right_sign"] = r.l1_right_sign;
  j["l1_at_gh"] = r.l1_at_gh;
  j["l2"] = r.l2;
  j["param_map_det"] = {{"h_1e-6", r.param_map_det}, {"h_1e-7", r.param_map_det_fine}, {"sign", r.param_map_det_sign}};
  j["checks"] = json::array({check("Res(Q1, Q2, x) = +-2 (y-1)^16 (2y-1)", res_ok),
                             check("GH = (9/256, 3/256), p_mp = (1/4, 3/16)",
                                   g.k == Rational(9, 256) && g.F == Rational(3, 256) && g.u == Rational(1, 4) &&
                                       g.v == Rational(3, 16)),
                             check("Q1 = Q2 = 0 at GH", g.q_system_vanishes),
                             check("Chow-Li-Wang form has the same admissible root", g.clw_agrees),
                             check("l1 < 0 left of GH", r.l1_left_sign < 0),
                             check("l1 > 0 right of GH", r.l1_right_sign > 0), check("l2 > 0", r.l2_sign > 0),
                             check("(mu, l1) determinant != 0", r.param_map_det_sign != 0)});
  j["reference"] = {{"param_map_det_sign", -1}, {"agrees", r.param_map_det_sign < 0}};
  const bool pass = r.nondegenerate();
  j["passed"] = pass;
  write_text(out, dump(j));
  return pass ? kOk : kFail;
}

// -- curves ---------------------------------------------------------------------

int cmd_curves(const RunConfig& cfg, const std::string& which, const std::string& range, int n,
               const std::string& out) {
  const auto [lo, hi] = parse_range(range);
  if (n < 2) throw ConfigError("--n must be >= 2");
  if (!(lo >= 0.0) || !(hi <= 1.0 / 16.0)) throw DomainError("curves are defined for 0 < k <= 1/16");
  const std::string fmt = format_or(cfg, "csv", {"csv", "json"});
  std::vector<std::string> cols{"k"};
  std::vector<std::vector<double>> rows;
  if (which == "sn") cols.insert(cols.end(), {"F_upper", "F_lower"});
  else if (which == "hopf" || which == "neutral" || which == "disc") cols.push_back("F");
  else throw ConfigError("--which must be sn, hopf, neutral or disc");
  // n abscissae on (lo, hi]
  for (int i = 0; i < n; ++i) {
    const double k = lo + (hi - lo) * (i + 1) / n;
    if (which == "sn") {
      const auto b = saddle_node_F(k);
      rows.push_back({k, b.upper, b.lower});
    } else if (which == "hopf") {
      rows.push_back({k, hopf_F(k)});
    } else if (which == "neutral") {
      rows.push_back({k, neutral_saddle_F(k)});
    } else {
      for (const double F : disc_curve_F(k)) rows.push_back({k, F});
    }
  }
  std::ostringstream os;
  if (fmt == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
      os << '\n';
    }
    write_text(out, os.str());
  } else {
    json j = doc("curves");
    j["which"] = which;
    j["columns"] = cols;
    j["rows"] = rows;
    write_text(out, dump(j));
  }
  return kOk;
}

// -- continue -------------------------------------------------------------------

struct ContinueArgs {
  std::string curve = "hopf", k0, direction, branch = "upper", k_range = "0.058..0.0624";
  int n = 12;
  double h_max = 0.0;
  int max_points = 0;
};

std::vector<std::string> point_columns(CurveKind kind) {
  if (kind == CurveKind::Lpc) return {"run", "k", "F", "s", "period", "multiplier", "t_s", "t_k", "t_F", "flag"};
  if (kind == CurveKind::Homoclinic) return {"run", "k", "F", "bracket_lo", "bracket_hi", "richardson", "flag"};
  return {"run", "k", "F", "u", "v", "t_u", "t_v", "t_k", "t_F", "flag"};
}

std::vector<std::string> point_values(CurveKind kind, int run, const CurvePoint& p) {
  std::vector<std::string> v{std::to_string(run), num(p.params.k), num(p.params.F)};
  if (kind == CurveKind::Lpc) {
    v.push_back(num(p.y(0)));
    v.push_back(num(p.cycle ? p.cycle->period : 0.0));
    v.push_back(num(p.cycle ? p.cycle->nontrivial_multiplier : 0.0));
  } else {
    v.push_back(num(p.y(0)));
    v.push_back(num(p.y(1)));
  }
  for (int i = 0; i < p.tangent.size(); ++i) v.push_back(num(p.tangent(i)));
  v.push_back(p.flag);
  return v;
}

int cmd_continue(const RunConfig& cfg, const ContinueArgs& a, const std::string& out) {
  const CurveKind kind = curve_kind_from_string(a.curve);
  const std::string fmt = format_or(cfg, "csv", {"csv", "json"});
  const auto cols = point_columns(kind);
  std::vector<std::vector<std::string>> rows;
  json runs = json::array();

  if (kind == CurveKind::Homoclinic) {
    const auto [lo, hi] = parse_range(a.k_range);
    if (a.n < 2) throw ConfigError("--n must be >= 2");
    std::vector<double> ks;
    for (int i = 0; i < a.n; ++i) ks.push_back(lo + (hi - lo) * i / (a.n - 1));
    HomoclinicSettings hs;
    hs.splitting.integrator = integrator_of(cfg);
    hs.splitting.integrator.rel_tol = std::min(hs.splitting.integrator.rel_tol, 1e-11);
    hs.splitting.integrator.abs_tol = std::min(hs.splitting.integrator.abs_tol, 1e-14);
    std::string why;
    const auto pts = homoclinic_curve(ks, hs, &why);
    json pj = json::array();
    for (const auto& p : pts) {
      rows.push_back({"0", num(p.k), num(p.F), num(p.bracket_lo), num(p.bracket_hi), num(p.richardson_diff), ""});
      pj.push_back({{"k", p.k}, {"F", p.F}, {"bracket", {p.bracket_lo, p.bracket_hi}}, {"richardson", p.richardson_diff}});
    }
    const std::string term = why.empty() ? "all abscissae bracketed" : why;
    std::cerr << "homoclinic: " << pts.size() << " points, " << term << '\n';
    runs.push_back({{"direction", 0}, {"termination", term}, {"points", pj}});
  } else {
    ContinuationSettings s;
    if (a.h_max > 0.0) s.h_max = a.h_max;
    else if (kind == CurveKind::Fold) s.h_max = 2e-3;
    else if (kind == CurveKind::Lpc) s.h_max = 2e-3;
    if (kind == CurveKind::Lpc) s.h0 = 1e-4;
    if (a.max_points > 0) s.max_points = a.max_points;
    const double k0 = a.k0.empty() ? (kind == CurveKind::Lpc ? 0.034 : 0.03) : param(a.k0, "k0").value;
    CurvePoint seed;
    if (kind == CurveKind::Hopf) seed = hopf_seed(k0);
    else if (kind == CurveKind::Fold) seed = fold_seed(k0, a.branch != "lower");
    else seed = lpc_seed(k0, nullptr, s);
    std::string dir = a.direction.empty() ? (kind == CurveKind::Lpc ? "up" : "both") : a.direction;
    std::vector<int> dirs;
    if (dir == "both") dirs = {-1, 1};
    else if (dir == "up") dirs = {1};
    else if (dir == "down") dirs = {-1};
    else throw ConfigError("--direction must be up, down or both");
    int run = 0;
    for (const int d : dirs) {
      s.direction = d;
      const Polyline line = continue_curve(kind, seed, s);
      json pj = json::array(), sj = json::array();
      for (const auto& p : line.points) {
        rows.push_back(point_values(kind, run, p));
        json e = {{"k", p.params.k}, {"F", p.params.F}, {"y", std::vector<double>(p.y.data(), p.y.data() + p.y.size())},
                  {"tangent", std::vector<double>(p.tangent.data(), p.tangent.data() + p.tangent.size())},
                  {"flag", p.flag}};
        if (p.cycle) e["cycle"] = cycle_json(*p.cycle);
        pj.push_back(e);
      }
      for (const auto& sp : line.specials) {
        sj.push_back({{"kind", sp.kind}, {"k", sp.point.params.k}, {"F", sp.point.params.F}, {"test", sp.test_value}});
        std::cerr << to_string(kind) << ": " << sp.kind << " at k=" << num(sp.point.params.k)
                  << " F=" << num(sp.point.params.F) << '\n';
      }
      std::cerr << to_string(kind) << " run " << run << " (" << (d > 0 ? "+k" : "-k") << "): " << line.points.size()
                << " points, " << line.termination << '\n';
      runs.push_back({{"direction", d}, {"termination", line.termination}, {"specials", sj}, {"points", pj}});
      ++run;
    }
  }

  if (fmt == "csv") {
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
    write_text(out, os.str());
  } else {
    json j = doc("continue");
    j["curve"] = to_string(kind);
    j["runs"] = runs;
    write_text(out, dump(j));
  }
  return kOk;
}

// -- cycles, portrait -----------------------------------------------------------

CensusSettings census_of(const RunConfig& cfg) {
  CensusSettings cs;
  cs.ray_samples = cfg.ray_samples;
  cs.ret.integrator = integrator_of(cfg);
  return cs;
}

int cmd_cycles(const RunConfig& cfg, const std::string& ks, const std::string& Fs, const std::string& out) {
  const Params a{param(ks, "k").value, param(Fs, "F").value};
  require_positive(a);
  json j = doc("cycles");
  j["params"] = {{"k", a.k}, {"F", a.F}};
  const auto eq = equilibria(a);
  json list = json::array();
  if (eq.kind != NontrivialKind::Pair) {
    j["note"] = "no saddle/p_mp pair: cycles cannot exist in the quadrant";
  } else {
    const auto sec = section_for(a);
    j["section"] = {{"origin", state_json(sec.origin)},
                    {"direction", {sec.direction(0), sec.direction(1)}},
                    {"s_max", sec.s_max}};
    for (const auto& c : limit_cycle_census(a, census_of(cfg))) list.push_back(cycle_json(c));
  }
  j["ray_samples"] = cfg.ray_samples;
  j["cycles"] = list;
  write_text(out, dump(j));
  return kOk;
}

int cmd_portrait(const RunConfig& cfg, const std::string& ks, const std::string& Fs, std::string out,
                 const std::string& csv, int seeds, int size, bool compact) {
  const Params a{param(ks, "k").value, param(Fs, "F").value};
  require_positive(a);
  PortraitSpec spec;
  spec.census = census_of(cfg);
  spec.integrator = integrator_of(cfg);
  if (seeds > 0) spec.seeds = seeds;
  if (size > 0) spec.size = size;
  if (out.empty()) out = (std::filesystem::path(cfg.out_dir) / "portrait.svg").string();
  const auto d = build_portrait(a, spec);
  write_text(out, render_svg(d, spec));
  if (!csv.empty()) write_text(csv, orbits_csv(d));

  json j = doc("portrait");
  j["params"] = {{"k", a.k}, {"F", a.F}};
  j["svg"] = out;
  if (!csv.empty()) j["csv"] = csv;
  json eqs = json::array();
  const auto pts = d.equilibria.all();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    json e = {{"name", eq_name(i)}, {"u", pts[i].u}, {"v", pts[i].v}};
    e["stability"] = report_json(d.reports[i]);
    eqs.push_back(e);
  }
  j["equilibria"] = eqs;
  json cyc = json::array();
  for (const auto& c : d.cycles) cyc.push_back(cycle_json(c));
  j["cycles"] = cyc;
  j["orbits"] = d.orbits.size();
  j["window"] = {{"u_max", d.u_max}, {"v_max", d.v_max}};
  if (compact) {
    const auto cp = compactified_portrait(a);
    json inf = json::array();
    for (const auto& p : cp.infinity) {
      inf.push_back({{"name", p.name}, {"chart", p.chart == Chart::U1 ? "U1" : "U2"}, {"w", p.wz(0)}, {"z", p.wz(1)},
                     {"degenerate", p.degenerate}, {"kind", p.kind}});
    }
    j["infinity"] = inf;
    j["infinity_manifold"] = {{"attractor", cp.manifold.attractor}, {"end", state_json(cp.manifold.end)}};
  }
  std::cout << dump(j);
  return kOk;
}

// -- map ------------------------------------------------------------------------

std::string edges_text(const std::set<Edge>& e) {
  std::string s;
  for (const auto& [x, y] : e) s += (s.empty() ? "" : " ") + to_string(x) + "-" + to_string(y);
  return s;
}

json edges_json(const std::set<Edge>& e) {
  json a = json::array();
  for (const auto& [x, y] : e) a.push_back({to_string(x), to_string(y)});
  return a;
}

int cmd_map(const RunConfig& cfg, const std::string& out) {
  const std::string fmt = format_or(cfg, "csv", {"csv", "json"});
  RegionSettings rs = map_region_settings();
  rs.census.ray_samples = cfg.map_ray_samples;
  const int threads = thread_budget(cfg.threads);
  const auto m = region_map(cfg.map_nk, cfg.map_nF, cfg.map_k.first, cfg.map_k.second, cfg.map_F.first,
                            cfg.map_F.second, rs, threads);
  const auto coarse = adjacency(m);
  const auto fine = refined_adjacency(m, rs);
  const bool matches = fine == expected_adjacency();
  std::cerr << "map " << m.nk << "x" << m.nF << " (" << threads << " threads): grid edges {" << edges_text(coarse)
            << "}, resolved edges {" << edges_text(fine) << "}, " << (matches ? "matches" : "differs from")
            << " the signature table\n";

  const auto row = [&](int ik, int iF, std::ostream& os) {
    const auto [k, F] = std::pair{m.at(ik, iF).k, m.at(ik, iF).F};
    const auto& c = m.cell(ik, iF);
    std::string tags;
    for (const auto& t : c.tags) tags += (tags.empty() ? "" : "|") + t;
    os << num(k) << ',' << num(F) << ',' << to_string(c.id) << ',' << tags << ',' << c.equilibria << ','
       << (c.p_mp_stable ? (*c.p_mp_stable ? "1" : "0") : "") << ',' << c.cycles << ',' << c.stable_cycles << ','
       << c.note << '\n';
  };
  if (fmt == "csv") {
    std::ostringstream os;
    os << "k,F,region,tags,equilibria,p_mp_stable,cycles,stable_cycles,note\n";
    for (int iF = 0; iF < m.nF; ++iF)
      for (int ik = 0; ik < m.nk; ++ik) row(ik, iF, os);
    write_text(out, os.str());
  } else {
    json j = doc("map");
    j["grid"] = {{"nk", m.nk}, {"nF", m.nF}, {"k", {m.k_lo, m.k_hi}}, {"F", {m.F_lo, m.F_hi}}};
    json present = json::array();
    for (const auto r : regions_present(m)) present.push_back(to_string(r));
    j["regions_present"] = present;
    j["adjacency_grid"] = edges_json(coarse);
    j["adjacency_resolved"] = edges_json(fine);
    j["adjacency_expected"] = edges_json(expected_adjacency());
    j["matches_signature_table"] = matches;
    json cells = json::array();
    for (int iF = 0; iF < m.nF; ++iF) {
      for (int ik = 0; ik < m.nk; ++ik) {
        const auto [k, F] = std::pair{m.at(ik, iF).k, m.at(ik, iF).F};
        const auto& c = m.cell(ik, iF);
        json e = {{"k", k}, {"F", F}, {"region", to_string(c.id)}, {"tags", c.tags}, {"equilibria", c.equilibria},
                  {"cycles", c.cycles}, {"stable_cycles", c.stable_cycles}};
        if (c.p_mp_stable) e["p_mp_stable"] = *c.p_mp_stable;
        if (!c.note.empty()) e["note"] = c.note;
        cells.push_back(e);
      }
    }
    j["cells"] = cells;
    write_text(out, dump(j));
  }
  return kOk;
}

// -- repro ----------------------------------------------------------------------

int cmd_repro(const RunConfig& cfg, const std::vector<int>& only) {
  AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.threads = thread_budget(cfg.threads);
  opt.map_nk = cfg.map_nk;
  opt.map_nF = cfg.map_nF;
  opt.only = only;
  opt.on_result = [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; };
  const auto results = run_acceptance(opt);
  bool all = true;
  json list = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    list.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                    {"seconds", r.seconds}});
  }
  json j = doc("repro");
  j["seed"] = cfg.seed;
  j["criteria"] = list;
  j["passed"] = all;
  const auto path = (std::filesystem::path(cfg.out_dir) / "repro.json").string();
  write_text(path, dump(j));
  std::cout << (all ? "all criteria pass" : "some criteria FAIL") << "; report in " << path << std::endl;
  return all ? kOk : kFail;
}

int exit_code_of(const Error& e) {
  static const std::set<std::string> domain{"DomainError",   "ConfigError",  "SingularParameter", "NotOnHopfCurve",
                                            "NotAnEquilibrium", "SaddleMissing", "SeedInvalid",      "DomainExit"};
  return domain.count(e.kind()) ? kUsage : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gray-Scott kinetics: equilibria, bifurcations, continuation and portraits"};
  app.require_subcommand(1);
  app.fallthrough();
  Shared shared;
  shared.attach(app);

  std::string out, ks, Fs;
  bool mutate = false;

  auto* eq = app.add_subcommand("eq", "equilibria and their stability at (k, F)");
  eq->add_option("--k", ks, "removal rate (p/q is exact)")->required();
  eq->add_option("--F", Fs, "feed rate (p/q is exact)")->required();
  eq->add_option("--out", out, "output file (default stdout)");

  auto* vbt = app.add_subcommand("verify-bt", "exact Bogdanov-Takens checks");
  vbt->add_flag("--mutate", mutate, "perturb the model; every run must then fail");
  vbt->add_option("--out", out, "output file");

  auto* vgh = app.add_subcommand("verify-bautin", "exact and numerical Bautin checks");
  vgh->add_flag("--mutate", mutate, "perturb the model; every run must then fail");
  vgh->add_option("--out", out, "output file");

  std::string which = "hopf", k_range = "0..1/16";
  int n = 200;
  auto* curves = app.add_subcommand("curves", "closed-form bifurcation curves");
  curves->add_option("--which", which, "sn | hopf | neutral | disc");
  curves->add_option("--k-range", k_range, "a..b");
  curves->add_option("--n", n, "number of abscissae");
  curves->add_option("--out", out, "output file");

  ContinueArgs ca;
  auto* cont = app.add_subcommand("continue", "numerical continuation of a curve");
  cont->add_option("--curve", ca.curve, "hopf | fold | lpc | homoclinic");
  cont->add_option("--k0", ca.k0, "seed abscissa");
  cont->add_option("--direction", ca.direction, "up | down | both");
  cont->add_option("--branch", ca.branch, "fold seed branch: upper | lower");
  cont->add_option("--k-range", ca.k_range, "homoclinic abscissae a..b");
  cont->add_option("--n", ca.n, "number of homoclinic abscissae");
  cont->add_option("--h-max", ca.h_max, "largest arclength step");
  cont->add_option("--max-points", ca.max_points, "point budget per run");
  cont->add_option("--out", out, "output file");

  auto* cyc = app.add_subcommand("cycles", "limit-cycle census at (k, F)");
  cyc->add_option("--k", ks)->required();
  cyc->add_option("--F", Fs)->required();
  std::string ray_samples;
  cyc->add_option("--ray-samples", ray_samples, "census resolution");
  shared.keyed.push_back({"ray_samples", &ray_samples});
  cyc->add_option("--out", out, "output file");

  std::string csv;
  int seeds = 0, size = 0;
  bool compact = false;
  auto* por = app.add_subcommand("portrait", "phase portrait as SVG (+ CSV of orbits)");
  por->add_option("--k", ks)->required();
  por->add_option("--F", Fs)->required();
  por->add_option("--out", out, "SVG file (default <out_dir>/portrait.svg)");
  por->add_option("--csv", csv, "CSV file of the orbits");
  por->add_option("--seeds", seeds, "seeds per axis");
  por->add_option("--size", size, "viewport in pixels");
  por->add_flag("--compactified", compact, "add the points at infinity and their manifold");

  std::string grid, mk, mF;
  auto* map = app.add_subcommand("map", "region labels over a k-F grid");
  map->add_option("--grid", grid, "NxM");
  map->add_option("--k", mk, "a..b");
  map->add_option("--F", mF, "a..b");
  map->add_option("--out", out, "output file");
  shared.keyed.push_back({"map_grid", &grid});
  shared.keyed.push_back({"map_k", &mk});
  shared.keyed.push_back({"map_F", &mF});

  std::vector<int> only;
  auto* repro = app.add_subcommand("repro", "run the acceptance battery");
  repro->add_option("--only", only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = shared.resolve();
    if (*eq) return cmd_eq(cfg, ks, Fs, out);
    if (*vbt) return cmd_verify_bt(mutate, out);
    if (*vgh) return cmd_verify_bautin(mutate, out);
    if (*curves) return cmd_curves(cfg, which, k_range, n, out);
    if (*cont) return cmd_continue(cfg, ca, out);
    if (*cyc) return cmd_cycles(cfg, ks, Fs, out);
    if (*por) return cmd_portrait(cfg, ks, Fs, out, csv, seeds, size, compact);
    if (*map) return cmd_map(cfg, out);
    if (*repro) return cmd_repro(cfg, only);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_of(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
