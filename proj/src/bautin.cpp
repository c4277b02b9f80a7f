#include "gskit/bautin.hpp"

#include "gskit/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace gskit::bautin {

namespace {

using cd = std::complex<double>;

int sign_of(double x) { return (x > 0) - (x < 0); }

State p_mp_of(const Params& a) {
  require_positive(a);
  const auto eq = equilibria(a);
  if (eq.kind != NontrivialKind::Pair) throw NotOnHopfCurve("no nontrivial equilibrium pair at these parameters");
  return eq.p_mp;
}

cd inner(const CVec2& p, const CVec2& q) { return p.dot(q); }  // Eigen's dot conjugates the first argument

// Critical eigenvector q (A q = lambda q) and adjoint p (A^T p = conj(lambda) p)
// with <q, q> = 1 and <p, q> = 1.
void eigen_pair(const Mat2& A, cd lambda, CVec2& q, CVec2& p) {
  const double a = A(0, 0), b = A(0, 1), c = A(1, 0);
  q = CVec2(cd(b, 0.0), lambda - a);
  q /= q.norm();
  p = CVec2(cd(c, 0.0), std::conj(lambda) - a);
  p /= std::conj(inner(p, q));
}

// z' = i omega z + <p, 1/2 B(x, x) + 1/6 C(x, x, x)>, x = q z + conj(q) conj(z).
ZPoly nonlinear_part(const Jet& j, const CVec2& q, const CVec2& p, int degree) {
  std::array<ZPoly, 2> x{ZPoly(degree), ZPoly(degree)};
  for (int i = 0; i < 2; ++i) x[static_cast<std::size_t>(i)] = q(i) * ZPoly::z(degree) + std::conj(q(i)) * ZPoly::zbar(degree);
  const ZPoly cubic = x[0] * x[1] * x[1];
  ZPoly g(degree);
  for (int i = 0; i < 2; ++i) {
    ZPoly n(degree);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        n = n + cd(0.5 * j.hessian[static_cast<std::size_t>(i)](r, s), 0.0) * (x[static_cast<std::size_t>(r)] * x[static_cast<std::size_t>(s)]);
    n = n + cd(i == 0 ? -1.0 : 1.0, 0.0) * cubic;
    g = g + std::conj(p(i)) * n;
  }
  return g;
}

// Invariant formula for Re c1 / omega with eigenvalue lambda = mu + i omega.
double l1_formula(const Jet& j, const Mat2& A, cd lambda) {
  CVec2 q, p;
  eigen_pair(A, lambda, q, p);
  const CMat2 Ac = A.cast<cd>();
  const CVec2 qb = q.conjugate();
  const CVec2 h11 = -Ac.inverse() * j.B(q, qb);
  const CVec2 h20 = (cd(2.0) * lambda * CMat2::Identity() - Ac).inverse() * j.B(q, q);
  const cd c = inner(p, Jet::C(q, q, qb)) + cd(2.0) * inner(p, j.B(q, h11)) + inner(p, j.B(qb, h20));
  return c.real() / (2.0 * lambda.imag());
}

BiPoly bconst(const IntPoly& c) { return BiPoly(c, 'x'); }
BiPoly bconst(const Rational& c) { return BiPoly(IntPoly(c, 'y'), 'x'); }

IntPoly ypoly(std::initializer_list<long> low_to_high) {
  std::vector<Rational> c;
  for (long v : low_to_high) c.emplace_back(v);
  return IntPoly(std::move(c), 'y');
}

}  // namespace

HopfFrame hopf_frame(const Params& a, double trace_tol) {
  const State p = p_mp_of(a);
  const double tr = jacobian_trace(p, a);
  const double det = jacobian_det(p, a);
  if (!(std::abs(tr) < trace_tol) || !(det > 0.0)) {
    std::ostringstream os;
    os << "trace " << tr << ", det " << det << " at k=" << a.k << ", F=" << a.F;
    throw NotOnHopfCurve(os.str());
  }
  return {a, p, std::sqrt(det), a.F - hopf_offset_F(a.k, 0.0)};
}

double l1_clw(const Params& a) {
  const HopfFrame h = hopf_frame(a);
  const auto j = jacobian_entries(h.p_mp, a);
  const double beta2 = h.omega0 * h.omega0;
  return j[0][1] / (16.0 * beta2 * beta2) * clw_bracket_at(h.p_mp, a);
}

double hopf_offset_F(double k, double nu) {
  if (!(k > 0.0) || k > 1.0 / 16.0) throw DomainError("hopf_offset_F needs 0 < k <= 1/16");
  const double x = std::sqrt(k);
  const double y = std::sqrt(std::max(0.0, 1.0 - 4.0 * x));
  return nu - 0.5 * x * (-1.0 + y + 2.0 * x);
}

HopfNormalForm kuznetsov_normal_form(const Params& a) {
  const HopfFrame h = hopf_frame(a);
  const Jet j = jet(h.p_mp, a);
  CVec2 q, p;
  eigen_pair(j.jacobian, cd(0.0, h.omega0), q, p);
  return hopf_normal_form(nonlinear_part(j, q, p, 5), h.omega0);
}

double l1_kuz(const Params& a) { return kuznetsov_normal_form(a).l1(); }
double l2_kuz(const Params& a) { return kuznetsov_normal_form(a).l2(); }

double l1_invariant(const Params& a) {
  const HopfFrame h = hopf_frame(a);
  const Jet j = jet(h.p_mp, a);
  return l1_formula(j, j.jacobian, cd(0.0, h.omega0));
}

double mu(const Params& a) { return 0.5 * jacobian_trace(p_mp_of(a), a); }

double l1_extended(const Params& a) {
  const State p = p_mp_of(a);
  const Jet j = jet(p, a);
  const double m = 0.5 * j.jacobian.trace();
  const double w2 = j.jacobian.determinant() - m * m;
  if (!(w2 > 0.0)) throw NotOnHopfCurve("eigenvalues of Df(p_mp) are real; l1 extension undefined");
  return l1_formula(j, j.jacobian, cd(m, std::sqrt(w2)));
}

double l1_at(const State& p, const Params& a) {
  const Jet j = jet(p, a);
  const double m = 0.5 * j.jacobian.trace();
  const double w2 = j.jacobian.determinant() - m * m;
  if (!(w2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return l1_formula(j, j.jacobian, cd(m, std::sqrt(w2)));
}

double param_map_transversality(const Params& gh, double h) {
  const auto d = [&](auto&& fn, double dk, double dF) {
    return (fn(Params{gh.k + dk, gh.F + dF}) - fn(Params{gh.k - dk, gh.F - dF})) / (2.0 * h);
  };
  const auto m = [](const Params& a) { return mu(a); };
  const auto l = [](const Params& a) { return l1_extended(a); };
  const double mk = d(m, h, 0.0), mF = d(m, 0.0, h);
  const double lk = d(l, h, 0.0), lF = d(l, 0.0, h);
  return mk * lF - mF * lk;
}

BiPoly q1() {
  // Coefficients of x^0 .. x^8, each a polynomial in y (low to high).
  const std::vector<IntPoly> c{
      ypoly({-3, 3}),      ypoly({52, -46}),     ypoly({-372, 286}),
      ypoly({1416, -924}), ypoly({-3080, 1650}), ypoly({3816, -1596}),
      ypoly({-2520, 756}), ypoly({752, -136}),   ypoly({-66, 4})};
  return BiPoly(c, 'x');
}

BiPoly q2() { return BiPoly({ypoly({1, 0, -1}), ypoly({-4})}, 'x'); }

BiPoly clw_restricted() {
  const BiPoly x = BiPoly::variable('x');
  const BiPoly y = bconst(IntPoly::variable('y'));
  const BiPoly half = bconst(Rational(1, 2));
  const BasicState<BiPoly> p{half * (BiPoly(1) - y), x};
  const BasicParams<BiPoly> a{x * x, half * x * (BiPoly(1) - BiPoly(2) * x - y)};
  return clw_bracket_at(p, a);
}

IntPoly on_hopf_curve(const BiPoly& p) {
  const IntPoly x_of_y = IntPoly(std::vector<Rational>{Rational(1, 4), 0, Rational(-1, 4)}, 'y');
  return p.eval<IntPoly>(x_of_y);
}

double printed_restricted_l1(double k) {
  using big = boost::multiprecision::cpp_bin_float_50;
  if (!(k > 0.0) || k > 1.0 / 16.0) throw DomainError("printed_restricted_l1 needs 0 < k <= 1/16");
  const big x = boost::multiprecision::sqrt(big(k));
  const big y = boost::multiprecision::sqrt(big(1) - 4 * x);
  const BiPoly q = q1();
  big acc = 0;
  for (int i = q.degree(); i >= 0; --i) {
    const IntPoly ci = q.coeff(i);
    big cy = 0;
    for (int m = ci.degree(); m >= 0; --m) cy = cy * y + big(ci.coeff(m));
    acc = acc * x + cy;
  }
  return static_cast<double>(acc);
}

GHLocation gh_locate(bool mutate) {
  GHLocation g;
  BiPoly Q1 = q1();
  // Negative control: a small change to the constant term destroys the factorization.
  if (mutate) Q1 = Q1 + bconst(Rational(1, 1000));
  const BiPoly Q2 = q2();
  g.resultant = resultant(Q1, Q2);
  const IntPoly y = IntPoly::variable('y');
  g.expected_resultant = IntPoly(Rational(2), 'y') * pow(y - IntPoly(Rational(1), 'y'), 16) *
                         (IntPoly(Rational(2), 'y') * y - IntPoly(Rational(1), 'y'));

  std::set<Rational> admissible;
  for (const auto& [root, mult] : rational_roots(g.resultant)) {
    RootMapping r;
    r.y = root;
    r.multiplicity = mult;
    // From Q2, x = (1 - y^2)/4 with x = sqrt(k) > 0 and y = sqrt(1 - 4x) >= 0.
    const Rational x = (Rational(1) - root * root) / 4;
    if (root < 0) {
      r.reason = "y = sqrt(1 - 4 sqrt k) cannot be negative";
    } else if (x <= 0) {
      r.reason = "maps to k = 0, the degenerate boundary";
    } else {
      r.admissible = true;
      r.sqrt_k = x;
      r.k = x * x;
      r.F = x * (Rational(1) - 2 * x - root) / 2;
      r.reason = "inside the Hopf curve domain";
      admissible.insert(root);
    }
    g.roots.push_back(r);
  }

  for (const auto& r : g.roots) {
    if (!r.admissible) continue;
    g.k = *r.k;
    g.F = *r.F;
    const auto eq = equilibria_exact(BasicParams<Rational>{g.k, g.F});
    if (eq && eq->kind == NontrivialKind::Pair) {
      g.u = eq->p_mp.u;
      g.v = eq->p_mp.v;
    }
    const IntPoly at_x = Q1.eval<IntPoly>(IntPoly(*r.sqrt_k, 'y'));
    const IntPoly q2_at_x = Q2.eval<IntPoly>(IntPoly(*r.sqrt_k, 'y'));
    g.q_system_vanishes = at_x.eval<Rational>(r.y) == 0 && q2_at_x.eval<Rational>(r.y) == 0;
    break;
  }

  const BiPoly clw = clw_restricted();
  g.clw_resultant = resultant(clw, Q2);
  std::set<Rational> clw_admissible;
  for (const auto& [root, mult] : rational_roots(g.clw_resultant)) {
    (void)mult;
    if (root >= 0 && (Rational(1) - root * root) > 0) clw_admissible.insert(root);
  }
  g.clw_agrees = !admissible.empty() && admissible == clw_admissible;

  const IntPoly one(Rational(1), 'y');
  g.restriction_identity = IntPoly(Rational(64), 'y') * pow(y + one, 4) * on_hopf_curve(Q1) ==
                           pow(y - one, 10) * on_hopf_curve(clw);
  return g;
}

bool GHReport::passed() const {
  const auto& g = location;
  const bool resultant_ok = g.resultant == g.expected_resultant || g.resultant == -g.expected_resultant;
  return resultant_ok && g.k == Rational(9, 256) && g.F == Rational(3, 256) && g.u == Rational(1, 4) &&
         g.v == Rational(3, 16) && g.q_system_vanishes && g.clw_agrees && l1_left_sign < 0 && l1_right_sign > 0 &&
         l2_sign > 0 && param_map_det_sign < 0;
}

bool GHReport::nondegenerate() const {
  const auto& g = location;
  const bool resultant_ok = g.resultant == g.expected_resultant || g.resultant == -g.expected_resultant;
  const bool det_ok = param_map_det_sign != 0 && (param_map_det > 0.0) == (param_map_det_fine > 0.0);
  return resultant_ok && g.k == Rational(9, 256) && g.F == Rational(3, 256) && g.u == Rational(1, 4) &&
         g.v == Rational(3, 16) && g.q_system_vanishes && g.clw_agrees && l1_left_sign < 0 && l1_right_sign > 0 &&
         l2_sign != 0 && det_ok;
}

GHReport verify_bautin(bool mutate) {
  GHReport r;
  r.location = gh_locate(mutate);
  // Numerical checks run at the located point; a failed location leaves them at the
  // fallback (k, F) = (0, 0) and they are skipped.
  const double k = to_double(r.location.k);
  if (!(k > 0.0)) return r;
  const Params gh{k, hopf_F(k)};
  r.l1_left_sign = sign_of(l1_kuz(Params{k - 0.005, hopf_F(k - 0.005)}));
  r.l1_right_sign = sign_of(l1_kuz(Params{k + 0.005, hopf_F(k + 0.005)}));
  r.l1_at_gh = l1_kuz(gh);
  r.l2 = l2_kuz(gh);
  r.l2_sign = sign_of(r.l2);
  r.param_map_det = param_map_transversality(gh, 1e-6);
  r.param_map_det_fine = param_map_transversality(gh, 1e-7);
  r.param_map_det_sign = sign_of(r.param_map_det);
  return r;
}

std::vector<PolarCycle> bautin_polar_census(double beta1, double beta2) {
  std::vector<PolarCycle> out;
  const double disc = beta2 * beta2 - 4.0 * beta1;
  const double scale = std::max({1.0, beta2 * beta2, std::abs(beta1)});
  std::vector<double> r2;
  if (std::abs(disc) <= 1e-14 * scale) {
    r2.push_back(-0.5 * beta2);
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    r2.push_back(0.5 * (-beta2 - s));
    r2.push_back(0.5 * (-beta2 + s));
  }
  for (double v : r2) {
    if (!(v > 0.0)) continue;
    PolarCycle c;
    c.radius = std::sqrt(v);
    c.derivative = beta1 + 3.0 * beta2 * v + 5.0 * v * v;
    c.stable = c.derivative < 0.0;
    out.push_back(c);
  }
  return out;
}

}  // namespace gskit::bautin
