#include "gskit/equilibria.hpp"

#include "gskit/errors.hpp"

#include <cmath>
#include <sstream>

namespace gskit {

EquilibriumSet equilibria(const Params& a, double degenerate_tol) {
  require_positive(a);
  const auto [gamma, Delta] = discriminants(a);
  EquilibriumSet out;
  if (std::abs(Delta) <= degenerate_tol) {
    out.kind = NontrivialKind::Degenerate;
    out.p_mp = out.p_pm = {0.5, 1.0 / (2.0 * gamma)};
  } else if (Delta > 0.0) {
    const double s = std::sqrt(Delta);
    out.kind = NontrivialKind::Pair;
    out.p_mp = {0.5 * (1.0 - s), (1.0 + s) / (2.0 * gamma)};
    out.p_pm = {0.5 * (1.0 + s), (1.0 - s) / (2.0 * gamma)};
  }
  return out;
}

std::optional<BasicEquilibriumSet<Rational>> equilibria_exact(const BasicParams<Rational>& a) {
  if (a.k <= 0 || a.F <= 0) throw DomainError("parameters must satisfy k > 0 and F > 0");
  const auto d = discriminants(a);
  BasicEquilibriumSet<Rational> out;
  if (d.Delta < 0) return out;
  const auto s = exact_sqrt(d.Delta);
  if (!s) return std::nullopt;
  const Rational half(1, 2);
  if (*s == 0) {
    out.kind = NontrivialKind::Degenerate;
    out.p_mp = out.p_pm = {half, Rational(1) / (2 * d.gamma)};
    return out;
  }
  out.kind = NontrivialKind::Pair;
  out.p_mp = {half * (1 - *s), (1 + *s) / (2 * d.gamma)};
  out.p_pm = {half * (1 + *s), (1 - *s) / (2 * d.gamma)};
  return out;
}

std::string to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Saddle: return "saddle";
    case StabilityClass::StableNode: return "stable-node";
    case StabilityClass::UnstableNode: return "unstable-node";
    case StabilityClass::StableSpiral: return "stable-spiral";
    case StabilityClass::UnstableSpiral: return "unstable-spiral";
    case StabilityClass::Nonhyperbolic: return "nonhyperbolic";
  }
  return "unknown";
}

std::string to_string(NonhyperbolicKind k) {
  switch (k) {
    case NonhyperbolicKind::None: return "none";
    case NonhyperbolicKind::ZeroEigenvalue: return "zero-eigenvalue";
    case NonhyperbolicKind::HopfCandidate: return "hopf-candidate";
    case NonhyperbolicKind::DoubleZero: return "double-zero";
  }
  return "unknown";
}

StabilityReport classify_linear(double trace, double det, double tol) {
  StabilityReport r;
  r.trace = trace;
  r.det = det;
  r.disc = trace * trace - 4.0 * det;
  const std::complex<double> root = std::sqrt(std::complex<double>(r.disc, 0.0));
  r.lambda1 = 0.5 * (trace + root);
  r.lambda2 = 0.5 * (trace - root);

  if (std::abs(det) <= tol) {
    r.cls = StabilityClass::Nonhyperbolic;
    r.kind = std::abs(trace) <= tol ? NonhyperbolicKind::DoubleZero : NonhyperbolicKind::ZeroEigenvalue;
  } else if (det < 0.0) {
    r.cls = StabilityClass::Saddle;
  } else if (std::abs(trace) <= tol) {
    r.cls = StabilityClass::Nonhyperbolic;
    r.kind = NonhyperbolicKind::HopfCandidate;
  } else if (trace < 0.0) {
    r.cls = r.disc < 0.0 ? StabilityClass::StableSpiral : StabilityClass::StableNode;
  } else {
    r.cls = r.disc < 0.0 ? StabilityClass::UnstableSpiral : StabilityClass::UnstableNode;
  }
  return r;
}

StabilityReport classify(const State& p, const Params& a, const ClassifyOptions& options) {
  const double residual = vector_field(p, a).norm();
  if (!(residual <= options.equilibrium_tol)) {
    std::ostringstream os;
    os << "(" << p.u << ", " << p.v << ") has residual " << residual;
    throw NotAnEquilibrium(os.str());
  }
  const auto inv = linear_invariants(p, a);
  auto r = classify_linear(inv.trace, inv.det, options.nonhyperbolic_tol);
  // Triangular Jacobian (p0, or any point with v = 0): the eigenvalues are the
  // diagonal entries, free of the rounding in (tr +- sqrt(disc)) / 2.
  const auto J = jacobian_entries(p, a);
  if (J[0][1] == 0.0 || J[1][0] == 0.0) {
    r.lambda1 = std::max(J[0][0], J[1][1]);
    r.lambda2 = std::min(J[0][0], J[1][1]);
  }
  return r;
}

namespace {

void require_k_domain(double k, const char* what) {
  if (!(k > 0.0) || !(k <= 1.0 / 16.0)) {
    std::ostringstream os;
    os << what << " requires 0 < k <= 1/16 (got " << k << ")";
    throw DomainError(os.str());
  }
}

// k - 4 k sqrt(k), clamped at zero for rounding at the right endpoint.
double hopf_radicand(double k) { return std::max(0.0, k - 4.0 * k * std::sqrt(k)); }

}  // namespace

SaddleNodeBranches saddle_node_F(double k) {
  require_k_domain(k, "saddle_node_F");
  const double root = std::sqrt(std::max(0.0, 1.0 - 16.0 * k));
  const double upper = ((1.0 - 8.0 * k) + root) / 8.0;
  // The roots multiply to k^2; dividing avoids the cancellation in the lower one.
  return {upper, k * k / upper};
}

double hopf_F(double k) {
  require_k_domain(k, "hopf_F");
  // Product of the Hopf and neutral-saddle roots is k^2.
  return k * k / neutral_saddle_F(k);
}

double neutral_saddle_F(double k) {
  require_k_domain(k, "neutral_saddle_F");
  return 0.5 * (std::sqrt(k) - 2.0 * k + std::sqrt(hopf_radicand(k)));
}

double disc_at_p_mp(const Params& a) {
  const auto eq = equilibria(a);
  if (eq.kind == NontrivialKind::None) throw DomainError("p_mp does not exist (Delta < 0)");
  return linear_invariants(eq.p_mp, a).disc;
}

std::vector<double> disc_curve_F(double k, int scan_cells, double tol) {
  require_k_domain(k, "disc_curve_F");
  std::vector<double> roots;
  if (k >= 1.0 / 16.0) return roots;
  const double lo = saddle_node_F(k).lower;
  const double hi = hopf_F(k);
  if (!(hi > lo)) return roots;
  // The left end sits exactly on Delta = 0; nudge inside.
  const double start = lo + 1e-12 * std::max(1.0, lo);
  const double h = (hi - start) / scan_cells;
  auto disc = [k](double F) { return disc_at_p_mp({k, F}); };
  double f_prev = disc(start);
  double x_prev = start;
  for (int i = 1; i <= scan_cells; ++i) {
    const double x = (i == scan_cells) ? hi : start + i * h;
    const double fx = disc(x);
    if ((f_prev < 0.0) != (fx < 0.0)) {
      double a = x_prev, b = x, fa = f_prev;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = disc(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

}  // namespace gskit
