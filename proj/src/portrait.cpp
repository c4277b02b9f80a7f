#include "gskit/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gskit {

namespace {

// Orbit in either time direction, stopped when it leaves a generous box.
Trajectory orbit(const Params& a, const State& x0, double t_end, const IntegratorSettings& is, double box) {
  IntegratorSettings s = is;
  s.quadrant = false;
  Dopri5<2> solver([a](const Vec2& x) { return vector_field(to_state(x), a); }, s);
  Trajectory tr;
  tr.t.push_back(0.0);
  tr.x.push_back(x0);
  try {
    solver.run(0.0, to_vec(x0), t_end, [&](const DenseStep<2>& step) {
      const Vec2 y = step.r[0] + step.r[1];
      tr.t.push_back(step.t1());
      tr.x.push_back(to_state(y));
      return y(0) > -1e-9 && y(1) > -1e-9 && y(0) < box && y(1) < box;
    });
  } catch (const StepUnderflow&) {
    // keep what was computed
  }
  return tr;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

PortraitData build_portrait(const Params& a, const PortraitSpec& spec) {
  require_positive(a);
  PortraitData d;
  d.params = a;
  d.equilibria = equilibria(a);
  for (const auto& p : d.equilibria.all()) d.reports.push_back(classify(p, a, ClassifyOptions{1e-9, 1e-11}));

  double v_top = 0.3;
  for (const auto& p : d.equilibria.all()) v_top = std::max(v_top, p.v);

  if (d.equilibria.kind == NontrivialKind::Pair) {
    d.cycles = limit_cycle_census(a, spec.census);
    for (const auto& c : d.cycles) {
      Orbit o{"cycle", orbit(a, c.section_point, c.period, spec.integrator, 10.0)};
      for (const auto& x : o.path.x) v_top = std::max(v_top, x.v);
      d.orbits.push_back(std::move(o));
    }
    // Separatrices of the saddle.
    const State s = d.equilibria.p_pm;
    const Mat2 J = jacobian(s, a);
    Eigen::EigenSolver<Mat2> es(J);
    for (int i = 0; i < 2; ++i) {
      const double lambda = es.eigenvalues()(i).real();
      const Vec2 e = es.eigenvectors().col(i).real().normalized();
      const bool unstable = lambda > 0.0;
      for (const double sign : {1.0, -1.0}) {
        const State x0 = to_state(to_vec(s) + sign * 1e-6 * e);
        const double t = unstable ? spec.t_end : -spec.t_end;
        d.orbits.push_back({unstable ? "unstable" : "stable", orbit(a, x0, t, spec.integrator, 10.0)});
      }
    }
  }
  d.u_max = spec.u_max;
  d.v_max = spec.v_max > 0.0 ? spec.v_max : 1.15 * v_top;

  const int n = std::max(1, spec.seeds);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const State x0{(i + 0.5) / n * d.u_max, (j + 0.5) / n * d.v_max};
      d.orbits.push_back({"seed", orbit(a, x0, spec.t_end, spec.integrator, 10.0)});
    }
  }
  return d;
}

std::string render_svg(const PortraitData& d, const PortraitSpec& spec) {
  const double W = spec.size, margin = 50.0, span = W - 2.0 * margin;
  const auto X = [&](double u) { return margin + span * u / d.u_max; };
  const auto Y = [&](double v) { return W - margin - span * v / d.v_max; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.size << "\" height=\"" << spec.size
     << "\" viewBox=\"0 0 " << spec.size << ' ' << spec.size << "\">\n";
  os << "<defs><clipPath id=\"window\"><rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\""
     << fmt(span) << "\" height=\"" << fmt(span) << "\"/></clipPath></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\"" << fmt(span) << "\" height=\""
     << fmt(span) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fmt(margin) << "\" y=\"30\" font-family=\"monospace\" font-size=\"16\">k=" << num(d.params.k)
     << " F=" << num(d.params.F) << "</text>\n";
  os << "<text x=\"" << fmt(W / 2) << "\" y=\"" << fmt(W - 15) << "\" font-family=\"monospace\" font-size=\"14\">u in [0, "
     << num(d.u_max) << "]</text>\n";
  os << "<text x=\"5\" y=\"" << fmt(W / 2) << "\" font-family=\"monospace\" font-size=\"14\">v&lt;" << num(d.v_max)
     << "</text>\n";
  os << "<g clip-path=\"url(#window)\" fill=\"none\">\n";
  for (const auto& o : d.orbits) {
    if (o.path.x.size() < 2) continue;
    std::string style = "stroke=\"#888\" stroke-width=\"1\"";
    if (o.kind == "unstable") style = "stroke=\"#c00\" stroke-width=\"1.5\"";
    if (o.kind == "stable") style = "stroke=\"#06c\" stroke-width=\"1.5\"";
    if (o.kind == "cycle") style = "stroke=\"#080\" stroke-width=\"3\"";
    os << "<polyline " << style << " points=\"";
    double lx = -1e9, ly = -1e9;
    for (std::size_t i = 0; i < o.path.x.size(); ++i) {
      const double x = X(o.path.x[i].u), y = Y(o.path.x[i].v);
      if (i + 1 < o.path.x.size() && std::hypot(x - lx, y - ly) < 0.5) continue;
      os << fmt(x) << ',' << fmt(y) << ' ';
      lx = x;
      ly = y;
    }
    os << "\"/>\n";
    // Arrowhead where the orbit has covered 40% of its drawn length.
    double total = 0.0;
    for (std::size_t i = 1; i < o.path.x.size(); ++i) {
      total += std::hypot(X(o.path.x[i].u) - X(o.path.x[i - 1].u), Y(o.path.x[i].v) - Y(o.path.x[i - 1].v));
    }
    if (total < 20.0 || o.kind == "cycle") continue;
    double acc = 0.0;
    for (std::size_t i = 1; i < o.path.x.size(); ++i) {
      const double x0 = X(o.path.x[i - 1].u), y0 = Y(o.path.x[i - 1].v);
      const double x1 = X(o.path.x[i].u), y1 = Y(o.path.x[i].v);
      const double seg = std::hypot(x1 - x0, y1 - y0);
      acc += seg;
      if (acc < 0.4 * total || seg == 0.0) continue;
      double dx = (x1 - x0) / seg, dy = (y1 - y0) / seg;
      if (o.kind == "stable") {  // drawn backwards in time
        dx = -dx;
        dy = -dy;
      }
      const double px = -dy, py = dx;
      os << "<polygon fill=\"black\" points=\"" << fmt(x1 + 8 * dx) << ',' << fmt(y1 + 8 * dy) << ' '
         << fmt(x1 + 4 * px) << ',' << fmt(y1 + 4 * py) << ' ' << fmt(x1 - 4 * px) << ',' << fmt(y1 - 4 * py)
         << "\"/>\n";
      break;
    }
  }
  os << "</g>\n";
  const auto pts = d.equilibria.all();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& r = d.reports[i];
    std::string fill = "white";
    if (r.cls == StabilityClass::Saddle) fill = "red";
    else if (r.is_stable()) fill = "#03c";
    else if (r.cls == StabilityClass::Nonhyperbolic) fill = "orange";
    os << "<circle cx=\"" << fmt(X(pts[i].u)) << "\" cy=\"" << fmt(Y(pts[i].v)) << "\" r=\"7\" fill=\"" << fill
       << "\" stroke=\"black\"><title>" << to_string(r.cls) << "</title></circle>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string orbits_csv(const PortraitData& d) {
  std::ostringstream os;
  os << "orbit,kind,t,u,v\n";
  for (std::size_t i = 0; i < d.orbits.size(); ++i) {
    const auto& o = d.orbits[i];
    for (std::size_t j = 0; j < o.path.x.size(); ++j) {
      os << i << ',' << o.kind << ',' << num(o.path.t[j]) << ',' << num(o.path.x[j].u) << ',' << num(o.path.x[j].v)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace gskit
