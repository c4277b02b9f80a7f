#include "gskit/bt.hpp"

namespace gskit::bt {

BTReport bt_nondegeneracy(bool mutate) {
  BTReport r;
  r.k = Rational(1, 16);
  r.F = mutate ? Rational(1, 16) + Rational(1, 1024) : Rational(1, 16);
  r.u = Rational(1, 2);
  r.v = Rational(1, 4);
  const BasicState<Rational> p{r.u, r.v};
  const BasicParams<Rational> a{r.k, r.F};

  r.A0 = jacobian_entries(p, a);
  const auto f = field(p, a);
  r.equilibrium_ok = f[0] == 0 && f[1] == 0 && jacobian_trace(p, a) == 0 && jacobian_det(p, a) == 0;

  const auto basis = jordan_basis<Rational>();
  r.frame_ok = true;
  for (const auto& e : frame_residuals(basis)) r.frame_ok = r.frame_ok && e == 0;

  const Pair<Rational> alpha{r.F - Rational(1, 16), r.k - Rational(1, 16)};
  r.coefficients = projected_coefficients(alpha, basis);
  r.a20_plus_b11 = r.coefficients.a20 + r.coefficients.b11;
  r.s = normal_form_sign(r.coefficients);
  r.bt1 = r.a20_plus_b11 != 0;
  r.bt2 = r.coefficients.b20 != 0;

  r.transversality = transversality_matrix(p, a);
  r.transversality_det = bareiss_determinant(r.transversality);
  r.bt3 = r.transversality_det != 0;

  r.reference_b20 = reference_b20(alpha);
  Coefficients<Rational> ref = r.coefficients;
  ref.b20 = r.reference_b20;
  r.reference_s = normal_form_sign(ref);
  return r;
}

}  // namespace gskit::bt
