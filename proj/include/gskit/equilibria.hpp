#pragma once

#include "gskit/core.hpp"
#include "gskit/exact.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gskit {

template <class T>
struct BasicDiscriminants {
  T gamma{};  ///< (F + k) / F
  T Delta{};  ///< 1 - 4 F gamma^2; its sign counts the nontrivial equilibria
};

using Discriminants = BasicDiscriminants<double>;

template <class T>
BasicDiscriminants<T> discriminants(const BasicParams<T>& a) {
  const T g = a.gamma();
  return {g, T(1) - T(4) * a.F * g * g};
}

enum class NontrivialKind { None, Degenerate, Pair };

/// Equilibria of the kinetics. When kind == Degenerate, p_mp and p_pm hold
/// the same point (1/2, 1/(2 gamma)).
template <class T>
struct BasicEquilibriumSet {
  BasicState<T> p0{T(1), T(0)};
  NontrivialKind kind = NontrivialKind::None;
  BasicState<T> p_mp{};  ///< (u-, v+): the point that undergoes Hopf bifurcations
  BasicState<T> p_pm{};  ///< (u+, v-): the saddle

  std::vector<BasicState<T>> all() const {
    std::vector<BasicState<T>> out{p0};
    if (kind == NontrivialKind::Degenerate) out.push_back(p_mp);
    if (kind == NontrivialKind::Pair) {
      out.push_back(p_mp);
      out.push_back(p_pm);
    }
    return out;
  }
};

using EquilibriumSet = BasicEquilibriumSet<double>;

/// Closed-form equilibria. |Delta| <= degenerate_tol is treated as Delta = 0.
EquilibriumSet equilibria(const Params& a, double degenerate_tol = 0.0);

/// Exact equilibria; nullopt when sqrt(Delta) is irrational.
std::optional<BasicEquilibriumSet<Rational>> equilibria_exact(const BasicParams<Rational>& a);

enum class StabilityClass { Saddle, StableNode, UnstableNode, StableSpiral, UnstableSpiral, Nonhyperbolic };

enum class NonhyperbolicKind { None, ZeroEigenvalue, HopfCandidate, DoubleZero };

std::string to_string(StabilityClass c);
std::string to_string(NonhyperbolicKind k);

struct StabilityReport {
  double trace = 0.0;
  double det = 0.0;
  double disc = 0.0;  ///< trace^2 - 4 det
  std::complex<double> lambda1, lambda2;
  StabilityClass cls = StabilityClass::Nonhyperbolic;
  NonhyperbolicKind kind = NonhyperbolicKind::None;

  bool is_stable() const {
    return cls == StabilityClass::StableNode || cls == StabilityClass::StableSpiral;
  }
};

struct ClassifyOptions {
  double equilibrium_tol = 1e-10;
  double nonhyperbolic_tol = 1e-11;
};

/// Throws NotAnEquilibrium when |f(p)| exceeds options.equilibrium_tol.
StabilityReport classify(const State& p, const Params& a, const ClassifyOptions& options = {});

/// Classification from (trace, det) alone using the sign table.
StabilityReport classify_linear(double trace, double det, double nonhyperbolic_tol = 1e-11);

template <class T>
struct LinearInvariants {
  T trace{}, det{}, disc{};
};

template <class T>
LinearInvariants<T> linear_invariants(const BasicState<T>& p, const BasicParams<T>& a) {
  const T tr = jacobian_trace(p, a);
  const T det = jacobian_det(p, a);
  return {tr, det, tr * tr - T(4) * det};
}

struct SaddleNodeBranches {
  double upper = 0.0;
  double lower = 0.0;
};

/// F on the two branches of Delta = 0, i.e. 4 (F + k)^2 = F. DomainError
/// outside 0 < k <= 1/16.
SaddleNodeBranches saddle_node_F(double k);

/// Hopf curve: trace of Df(p_mp) vanishes. Domain 0 < k <= 1/16.
double hopf_F(double k);
/// Neutral saddle curve: trace of Df(p_pm) vanishes. Domain 0 < k <= 1/16.
double neutral_saddle_F(double k);

/// Roots in F of disc(Df(p_mp)) = 0 between the lower saddle-node branch
/// and the Hopf curve. Empty when no sign change is found.
std::vector<double> disc_curve_F(double k, int scan_cells = 512, double tol = 1e-13);

/// disc(Df(p_mp)) as a function of parameters (requires Delta > 0).
double disc_at_p_mp(const Params& a);

/// Nontrivial component of the equilibrium surface,
/// G = F (F + k) - F v + (F + k) v^2.
template <class T>
T surface_G(const T& k, const T& F, const T& v) {
  return F * (F + k) - F * v + (F + k) * v * v;
}

/// dG/dv; vanishes on the fold (singular) set of the surface.
template <class T>
T singular_set_residual(const T& k, const T& F, const T& v) {
  return -F + T(2) * (F + k) * v;
}

}  // namespace gskit
