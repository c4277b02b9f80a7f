#include "gskit/continuation.hpp"

#include "gskit/bautin.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gskit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Fold: return "fold";
    case CurveKind::Hopf: return "hopf";
    case CurveKind::Lpc: return "lpc";
    case CurveKind::Homoclinic: return "homoclinic";
  }
  return "?";
}

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "fold" || s == "sn") return CurveKind::Fold;
  if (s == "hopf") return CurveKind::Hopf;
  if (s == "lpc") return CurveKind::Lpc;
  if (s == "homoclinic") return CurveKind::Homoclinic;
  throw ConfigError("unknown curve kind '" + s + "'");
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

int k_index(CurveKind kind) { return kind == CurveKind::Lpc ? 1 : 2; }

Params params_of(CurveKind kind, const VectorXd& y) {
  const int i = k_index(kind);
  return {y(i), y(i + 1)};
}

bool admissible(const Params& a) { return a.k > 0.0 && a.F > 0.0 && std::isfinite(a.k) && std::isfinite(a.F); }

// Residual of the lpc system together with the cycle it describes.
std::optional<ReturnResult> lpc_return(const VectorXd& y, const ContinuationSettings& s, Section* sec_out = nullptr) {
  const Params a{y(1), y(2)};
  if (!admissible(a)) return std::nullopt;
  const auto eq = equilibria(a);
  if (eq.kind != NontrivialKind::Pair) return std::nullopt;
  const Section sec = section_for(a);
  if (sec_out) *sec_out = sec;
  if (!(y(0) > 0.0) || y(0) >= sec.s_max) return std::nullopt;
  return return_map(a, sec, y(0), s.lpc_return, true);
}

MatrixXd system_jacobian(CurveKind kind, const VectorXd& y, const ContinuationSettings& s) {
  if (kind == CurveKind::Fold || kind == CurveKind::Hopf) {
    const double u = y(0), v = y(1), k = y(2), F = y(3);
    MatrixXd J(3, 4);
    J.row(0) << -v * v - F, -2.0 * u * v, 0.0, 1.0 - u;
    J.row(1) << v * v, 2.0 * u * v - (F + k), -v, -v;
    if (kind == CurveKind::Hopf) {
      J.row(2) << 2.0 * v, 2.0 * u - 2.0 * v, -1.0, -2.0;
    } else {
      J.row(2) << -2.0 * v * F, 2.0 * v * (F + k) - 2.0 * u * F, F + v * v, (F + k) + (F + v * v) - 2.0 * u * v;
    }
    return J;
  }
  const int n = static_cast<int>(y.size());
  const VectorXd f0 = defining_system(kind, y, s);
  MatrixXd J(f0.size(), n);
  for (int j = 0; j < n; ++j) {
    const double h = s.fd_step * std::max(1e-2, std::abs(y(j)));
    VectorXd yp = y, ym = y;
    yp(j) += h;
    ym(j) -= h;
    J.col(j) = (defining_system(kind, yp, s) - defining_system(kind, ym, s)) / (2.0 * h);
  }
  return J;
}

// Unit null vector of the n x (n+1) Jacobian, oriented along `ref`.
VectorXd null_vector(const MatrixXd& J, const VectorXd& ref) {
  const int n = static_cast<int>(J.cols());
  MatrixXd A(n, n);
  A.topRows(n - 1) = J;
  A.row(n - 1) = ref.transpose();
  VectorXd rhs = VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  VectorXd t = A.fullPivLu().solve(rhs);
  if (!t.allFinite() || t.norm() == 0.0) {
    Eigen::FullPivLU<MatrixXd> lu(J);
    t = lu.kernel().col(0);
  }
  t.normalize();
  if (t.dot(ref) < 0.0) t = -t;
  return t;
}

struct Correction {
  bool ok = false;
  VectorXd y;
  int iterations = 0;
  double residual = 0.0;
};

// Newton on [G(y) = 0, n . (y - anchor) = 0].
Correction correct(CurveKind kind, const VectorXd& start, const VectorXd& anchor, const VectorXd& n,
                   const ContinuationSettings& s) {
  Correction c;
  c.y = start;
  const int dim = static_cast<int>(start.size());
  for (int it = 1; it <= s.max_newton; ++it) {
    const VectorXd g = defining_system(kind, c.y, s);
    if (!g.allFinite()) return c;
    MatrixXd A(dim, dim);
    A.topRows(dim - 1) = system_jacobian(kind, c.y, s);
    A.row(dim - 1) = n.transpose();
    VectorXd rhs(dim);
    rhs.head(dim - 1) = g;
    rhs(dim - 1) = n.dot(c.y - anchor);
    const VectorXd dy = A.fullPivLu().solve(rhs);
    if (!dy.allFinite()) return c;
    c.y -= dy;
    c.iterations = it;
    const double step_norm = dy.norm();
    if (step_norm < s.tol * std::max(1.0, c.y.norm())) {
      const VectorXd g1 = defining_system(kind, c.y, s);
      c.residual = g1.allFinite() ? g1.lpNorm<Eigen::Infinity>() : nan;
      c.ok = g1.allFinite() && c.residual < (kind == CurveKind::Lpc ? 1e3 * s.tol : s.tol);
      return c;
    }
  }
  const VectorXd g1 = defining_system(kind, c.y, s);
  c.residual = g1.allFinite() ? g1.lpNorm<Eigen::Infinity>() : nan;
  c.ok = g1.allFinite() && c.residual < (kind == CurveKind::Lpc ? 1e3 * s.tol : s.tol);
  return c;
}

struct TestFunction {
  std::string name;
  std::function<double(const VectorXd&)> eval;
};

std::vector<TestFunction> test_functions(CurveKind kind) {
  std::vector<TestFunction> out;
  if (kind == CurveKind::Hopf) {
    out.push_back({"BT", [](const VectorXd& y) {
                     return jacobian_det(State{y(0), y(1)}, Params{y(2), y(3)});
                   }});
    out.push_back({"GH", [](const VectorXd& y) {
                     return bautin::l1_at(State{y(0), y(1)}, Params{y(2), y(3)});
                   }});
  } else if (kind == CurveKind::Fold) {
    out.push_back({"BT", [](const VectorXd& y) {
                     return jacobian_trace(State{y(0), y(1)}, Params{y(2), y(3)});
                   }});
  }
  return out;
}

CurvePoint make_point(CurveKind kind, const VectorXd& y, const VectorXd& tangent, double h, double residual,
                      const ContinuationSettings& s) {
  CurvePoint p;
  p.y = y;
  p.params = params_of(kind, y);
  p.tangent = tangent;
  p.arc_step = h;
  p.residual = residual;
  if (kind == CurveKind::Lpc) {
    Section sec;
    const auto r = lpc_return(y, s, &sec);
    if (r) {
      CycleRepr c;
      c.s = y(0);
      c.section_point = sec.point(y(0));
      c.period = r->time;
      c.nontrivial_multiplier = r->dP;
      c.section_normal = sec.normal;
      p.cycle = c;
    }
  }
  return p;
}

// Bisection of a test function between two accepted points; each trial
// point is projected onto the curve in the hyperplane normal to the chord.
CurvePoint locate_special(CurveKind kind, const VectorXd& ya, const VectorXd& yb, const TestFunction& tf,
                          const ContinuationSettings& s, double* value) {
  const VectorXd chord = yb - ya;
  const VectorXd n = chord.normalized();
  double lo = 0.0, hi = 1.0;
  double flo = tf.eval(ya);
  VectorXd best = ya;
  for (int it = 0; it < 80 && (hi - lo) * chord.norm() > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const VectorXd anchor = ya + mid * chord;
    const Correction c = correct(kind, anchor, anchor, n, s);
    const VectorXd y = c.ok ? c.y : anchor;
    const double fm = tf.eval(y);
    best = y;
    if (!std::isfinite(fm)) break;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (value) *value = tf.eval(best);
  const VectorXd t = null_vector(system_jacobian(kind, best, s), n);
  return make_point(kind, best, t, 0.0, defining_system(kind, best, s).lpNorm<Eigen::Infinity>(), s);
}

std::string boundary_reason(CurveKind kind, const VectorXd& y, const ContinuationSettings& s) {
  const Params a = params_of(kind, y);
  if (!admissible(a)) return "left k > 0, F > 0";
  if (a.k < s.k_min) return "k -> 0 boundary";
  if (kind == CurveKind::Lpc) {
    if (y(0) < s.lpc_s_stop) return "cycle pair collapsed onto the Hopf point";
    const auto eq = equilibria(a);
    if (eq.kind != NontrivialKind::Pair) return "left Delta > 0";
  }
  return "";
}

}  // namespace

VectorXd defining_system(CurveKind kind, const VectorXd& y, const ContinuationSettings& s) {
  switch (kind) {
    case CurveKind::Fold:
    case CurveKind::Hopf: {
      const State p{y(0), y(1)};
      const Params a{y(2), y(3)};
      const auto f = field(p, a);
      VectorXd out(3);
      out << f[0], f[1], kind == CurveKind::Hopf ? jacobian_trace(p, a) : jacobian_det(p, a);
      return out;
    }
    case CurveKind::Lpc: {
      const auto r = lpc_return(y, s);
      VectorXd out(2);
      if (!r) {
        out << nan, nan;
      } else {
        out << r->s - y(0), r->dP - 1.0;
      }
      return out;
    }
    case CurveKind::Homoclinic: break;
  }
  throw std::invalid_argument("homoclinic curves have no arclength defining system");
}

CurvePoint hopf_seed(double k) {
  const Params a{k, hopf_F(k)};
  const auto eq = equilibria(a);
  VectorXd y(4);
  y << eq.p_mp.u, eq.p_mp.v, a.k, a.F;
  CurvePoint p;
  p.y = y;
  p.params = a;
  p.flag = "seed";
  return p;
}

CurvePoint fold_seed(double k, bool upper) {
  const auto sn = saddle_node_F(k);
  const Params a{k, upper ? sn.upper : sn.lower};
  VectorXd y(4);
  y << 0.5, 0.5 / a.gamma(), a.k, a.F;
  CurvePoint p;
  p.y = y;
  p.params = a;
  p.flag = "seed";
  return p;
}

CurvePoint refine_at_k(CurveKind kind, const CurvePoint& near, double k, const ContinuationSettings& s) {
  const int ki = k_index(kind);
  VectorXd y = near.y;
  y(ki) = k;
  const int n = static_cast<int>(y.size());
  for (int it = 0; it < 2 * s.max_newton; ++it) {
    const VectorXd g = defining_system(kind, y, s);
    if (!g.allFinite()) throw NewtonDiverged("defining system undefined during refinement");
    const MatrixXd J = system_jacobian(kind, y, s);
    MatrixXd Jr(n - 1, n - 1);
    for (int j = 0, c = 0; j < n; ++j) {
      if (j == ki) continue;
      Jr.col(c++) = J.col(j);
    }
    const VectorXd d = Jr.fullPivLu().solve(g);
    for (int j = 0, c = 0; j < n; ++j) {
      if (j == ki) continue;
      y(j) -= d(c++);
    }
    if (d.norm() < 1e-15 * std::max(1.0, y.norm())) break;
  }
  const VectorXd g = defining_system(kind, y, s);
  CurvePoint p = make_point(kind, y, near.tangent, 0.0, g.lpNorm<Eigen::Infinity>(), s);
  return p;
}

CurvePoint lpc_seed(double k, double* collision_F, const ContinuationSettings& s) {
  const double Fh = hopf_F(k);
  CensusSettings cs;
  const auto count = [&](double F) { return limit_cycle_census(Params{k, F}, cs); };
  // Walk down from the Hopf curve until two cycles appear, then until they vanish.
  double d = 1e-9;
  std::vector<CycleRepr> pair;
  for (; d < 1e-3; d *= 2.0) {
    pair = count(Fh - d);
    if (pair.size() == 2) break;
  }
  if (pair.size() != 2) throw SeedInvalid("no two-cycle region below the Hopf curve at this k");
  double F_in = Fh - d, F_out = F_in;
  for (; d < 1e-2; d *= 2.0) {
    F_out = Fh - d;
    const auto c = count(F_out);
    if (c.size() < 2) break;
    F_in = F_out;
    pair = c;
  }
  for (int it = 0; it < 60 && F_in - F_out > 1e-14; ++it) {
    const double mid = 0.5 * (F_in + F_out);
    const auto c = count(mid);
    if (c.size() == 2) {
      F_in = mid;
      pair = c;
    } else {
      F_out = mid;
    }
  }
  if (collision_F) *collision_F = 0.5 * (F_in + F_out);

  // Newton on the lpc system in (s, F) at fixed k.
  CurvePoint seed;
  seed.y = VectorXd(3);
  seed.y << 0.5 * (pair[0].s + pair[1].s), k, 0.5 * (F_in + F_out);
  seed.tangent = VectorXd::Unit(3, 1);
  CurvePoint p = refine_at_k(CurveKind::Lpc, seed, k, s);
  if (!(p.residual < 1e-8)) throw SeedInvalid("lpc Newton did not converge from the cycle collision");
  p.flag = "seed";
  return p;
}

Polyline continue_curve(CurveKind kind, const CurvePoint& seed, const ContinuationSettings& s) {
  if (kind == CurveKind::Homoclinic) throw std::invalid_argument("use homoclinic_curve for homoclinic orbits");
  Polyline line;
  line.kind = kind;
  const int dim = static_cast<int>(seed.y.size());
  const int ki = k_index(kind);

  VectorXd y = seed.y;
  {
    const VectorXd g = defining_system(kind, y, s);
    if (!g.allFinite()) throw SeedInvalid("defining system undefined at the seed");
    if (!admissible(params_of(kind, y))) throw DomainExit("seed outside k > 0, F > 0");
    if (g.lpNorm<Eigen::Infinity>() > s.tol) {
      const VectorXd ref = VectorXd::Unit(dim, ki);
      const Correction c = correct(kind, y, y, ref, s);
      if (!c.ok) throw SeedInvalid("seed does not satisfy the defining system");
      y = c.y;
    }
  }
  VectorXd t = null_vector(system_jacobian(kind, y, s), static_cast<double>(s.direction) * VectorXd::Unit(dim, ki));
  CurvePoint first = make_point(kind, y, t, 0.0, defining_system(kind, y, s).lpNorm<Eigen::Infinity>(), s);
  first.flag = "seed";
  line.points.push_back(first);

  const auto tests = test_functions(kind);
  std::vector<double> prev_tests;
  for (const auto& tf : tests) prev_tests.push_back(tf.eval(y));

  double h = s.h0;
  VectorXd y_prev = y;
  bool have_prev = false;
  while (static_cast<int>(line.points.size()) < s.max_points) {
    VectorXd dir = t;
    if (have_prev) {
      dir = (y - y_prev).normalized();
      if (dir.dot(t) < 0.0) dir = t;
    }
    const VectorXd pred = y + h * dir;
    const Correction c = correct(kind, pred, pred, dir, s);
    if (!c.ok || (c.y - y).norm() > 3.0 * h) {
      h *= 0.5;
      if (h < s.h_min) {
        std::ostringstream os;
        os << "step below h_min at k=" << params_of(kind, y).k << ", F=" << params_of(kind, y).F;
        throw StepUnderflow(os.str());
      }
      continue;
    }
    const std::string reason = boundary_reason(kind, c.y, s);
    if (!reason.empty()) {
      line.termination = reason;
      break;
    }
    const VectorXd t_new = null_vector(system_jacobian(kind, c.y, s), dir);

    bool stop = false;
    for (std::size_t i = 0; i < tests.size(); ++i) {
      const double v = tests[i].eval(c.y);
      if (std::isfinite(v) && std::isfinite(prev_tests[i]) && (v < 0.0) != (prev_tests[i] < 0.0)) {
        double value = 0.0;
        CurvePoint sp = locate_special(kind, y, c.y, tests[i], s, &value);
        sp.flag = tests[i].name;
        line.specials.push_back({tests[i].name, sp, value});
        if (s.stop_at_special && kind == CurveKind::Hopf && tests[i].name == "BT") {
          line.points.push_back(sp);
          line.termination = "Bogdanov-Takens point";
          stop = true;
        }
      }
      prev_tests[i] = v;
    }
    if (stop) break;

    line.points.push_back(make_point(kind, c.y, t_new, h, c.residual, s));
    y_prev = y;
    y = c.y;
    t = t_new;
    have_prev = true;
    if (c.iterations <= 3) h = std::min(h * 1.5, s.h_max);
  }
  if (line.termination.empty()) line.termination = "point budget exhausted";
  return line;
}

// -- homoclinic --------------------------------------------------------------

namespace {

// Real eigenpair of a 2x2 matrix for eigenvalue lambda.
Vec2 eigvec(const Mat2& A, double lambda) {
  const Vec2 a(A(0, 1), lambda - A(0, 0));
  const Vec2 b(lambda - A(1, 1), A(1, 0));
  return (a.norm() > b.norm() ? a : b).normalized();
}

struct Crossing {
  double s = 0.0;
  double t = 0.0;
};

Crossing first_crossing(const Params& a, const Section& sec, const State& x0, double sign,
                        const SplittingSettings& ss) {
  IntegratorSettings is = ss.integrator;
  is.quadrant = false;
  Dopri5<2> solver([a, sign](const Vec2& x) { return Vec2(sign * vector_field(to_state(x), a)); }, is);
  const auto g = [&](const Vec2& x) { return sec.offset(to_state(x)); };
  const auto accept = [&](const Vec2& x) { return sec.coordinate(to_state(x)) > 0.0; };
  try {
    const auto hit = find_event(solver, 0.0, to_vec(x0), ss.t_max, g, 0, 0.0, accept);
    if (!hit) throw SectionMiss("separatrix never reached the section ray");
    return {sec.coordinate(to_state(hit->x)), hit->t};
  } catch (const StepUnderflow&) {
    throw SectionMiss("separatrix escaped before reaching the section ray");
  }
}

Splitting split_once(const Params& a, double eps, const SplittingSettings& ss) {
  const auto eq = equilibria(a);
  if (eq.kind != NontrivialKind::Pair) throw SaddleMissing("p_pm does not exist (Delta <= 0)");
  const Section sec = section_for(a);
  const Mat2 J = jacobian(eq.p_pm, a);
  const double tr = J.trace(), det = J.determinant();
  if (!(det < 0.0)) throw SaddleMissing("p_pm is not a saddle");
  const double root = std::sqrt(tr * tr / 4.0 - det);
  Vec2 eu = eigvec(J, tr / 2.0 + root);
  Vec2 es = eigvec(J, tr / 2.0 - root);
  // Orient both branches so that the wedge between them contains p_mp.
  Mat2 E;
  E << eu, es;
  const Vec2 coef = E.fullPivLu().solve(to_vec(eq.p_mp) - to_vec(eq.p_pm));
  if (coef(0) < 0.0) eu = -eu;
  if (coef(1) < 0.0) es = -es;

  const Crossing cu = first_crossing(a, sec, to_state(to_vec(eq.p_pm) + eps * eu), 1.0, ss);
  const Crossing cs = first_crossing(a, sec, to_state(to_vec(eq.p_pm) + eps * es), -1.0, ss);
  Splitting out;
  out.s_unstable = cu.s;
  out.s_stable = cs.s;
  out.t_unstable = cu.t;
  out.t_stable = cs.t;
  out.gap = cu.s - cs.s;
  return out;
}

}  // namespace

Splitting separatrix_splitting_detail(const Params& a, const SplittingSettings& ss) {
  require_positive(a);
  Splitting out = split_once(a, ss.eps, ss);
  if (ss.richardson) out.richardson_diff = std::abs(out.gap - split_once(a, 0.5 * ss.eps, ss).gap);
  return out;
}

double separatrix_splitting(const Params& a, const SplittingSettings& ss) {
  SplittingSettings quick = ss;
  quick.richardson = false;
  return separatrix_splitting_detail(a, quick).gap;
}

HomoclinicPoint homoclinic_point(double k, const HomoclinicSettings& hs) {
  const double Fh = hopf_F(k);
  const auto sn = saddle_node_F(k);
  const auto gap = [&](double F) -> std::optional<double> {
    try {
      return separatrix_splitting(Params{k, F}, hs.splitting);
    } catch (const SectionMiss&) {
      return std::nullopt;
    }
  };
  // Sample offsets from the Hopf curve geometrically towards each fold branch.
  for (const double end : {sn.upper, sn.lower}) {
    const double span = end - Fh;
    std::optional<double> g_prev;
    double F_prev = Fh;
    for (int i = 0; i < hs.scan; ++i) {
      const double w = 1e-6 * std::pow(0.999 / 1e-6, static_cast<double>(i) / (hs.scan - 1));
      const double F = Fh + w * span;
      const auto g = gap(F);
      if (g && g_prev && ((*g < 0.0) != (*g_prev < 0.0))) {
        double lo = F_prev, hi = F;
        double glo = *g_prev;
        while (std::abs(hi - lo) > hs.width) {
          const double mid = 0.5 * (lo + hi);
          const auto gm = gap(mid);
          if (!gm) throw BracketNotFound("splitting undefined inside the bracket");
          if ((*gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = *gm;
          } else {
            hi = mid;
          }
        }
        HomoclinicPoint p;
        p.k = k;
        p.F = 0.5 * (lo + hi);
        p.bracket_lo = std::min(lo, hi);
        p.bracket_hi = std::max(lo, hi);
        SplittingSettings check = hs.splitting;
        check.richardson = true;
        try {
          p.richardson_diff = separatrix_splitting_detail(Params{k, p.F}, check).richardson_diff;
        } catch (const SectionMiss&) {
          p.richardson_diff = nan;
        }
        return p;
      }
      if (g) {
        g_prev = g;
        F_prev = F;
      }
    }
  }
  std::ostringstream os;
  os << "no sign change of the splitting function at k=" << k;
  throw BracketNotFound(os.str());
}

std::vector<HomoclinicPoint> homoclinic_curve(const std::vector<double>& ks, const HomoclinicSettings& hs,
                                              std::string* termination) {
  std::vector<HomoclinicPoint> out;
  for (double k : ks) {
    try {
      out.push_back(homoclinic_point(k, hs));
    } catch (const BracketNotFound& e) {
      if (termination) *termination = e.what();
      return out;
    }
  }
  if (termination) *termination = "range covered";
  return out;
}

TangencyFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  TangencyFit f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  f.samples = n;
  if (n < 2) return f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace gskit
