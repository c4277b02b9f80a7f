#include "gskit/normal_form.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gskit {

cplx ZPoly::coeff(int j, int k) const {
  const auto it = terms_.find({j, k});
  return it == terms_.end() ? cplx{} : it->second;
}

void ZPoly::add(int j, int k, cplx c) {
  if (j + k > max_degree_ || c == cplx{}) return;
  auto& slot = terms_[{j, k}];
  slot += c;
  if (slot == cplx{}) terms_.erase({j, k});
}

ZPoly ZPoly::constant(cplx c, int max_degree) {
  ZPoly p(max_degree);
  p.add(0, 0, c);
  return p;
}

ZPoly ZPoly::z(int max_degree) {
  ZPoly p(max_degree);
  p.add(1, 0, 1.0);
  return p;
}

ZPoly ZPoly::zbar(int max_degree) {
  ZPoly p(max_degree);
  p.add(0, 1, 1.0);
  return p;
}

ZPoly ZPoly::conj() const {
  ZPoly out(max_degree_);
  for (const auto& [jk, c] : terms_) out.add(jk.second, jk.first, std::conj(c));
  return out;
}

ZPoly ZPoly::homogeneous(int m) const {
  ZPoly out(max_degree_);
  for (const auto& [jk, c] : terms_)
    if (jk.first + jk.second == m) out.add(jk.first, jk.second, c);
  return out;
}

ZPoly ZPoly::dz() const {
  ZPoly out(max_degree_);
  for (const auto& [jk, c] : terms_)
    if (jk.first > 0) out.add(jk.first - 1, jk.second, c * static_cast<double>(jk.first));
  return out;
}

ZPoly ZPoly::dzbar() const {
  ZPoly out(max_degree_);
  for (const auto& [jk, c] : terms_)
    if (jk.second > 0) out.add(jk.first, jk.second - 1, c * static_cast<double>(jk.second));
  return out;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::min(a.max_degree_, b.max_degree_));
  for (const auto& [jk, c] : a.terms_) out.add(jk.first, jk.second, c);
  for (const auto& [jk, c] : b.terms_) out.add(jk.first, jk.second, c);
  return out;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-1.0) * b; }

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::min(a.max_degree_, b.max_degree_));
  for (const auto& [ja, ca] : a.terms_)
    for (const auto& [jb, cb] : b.terms_) out.add(ja.first + jb.first, ja.second + jb.second, ca * cb);
  return out;
}

ZPoly operator*(cplx s, const ZPoly& a) {
  ZPoly out(a.max_degree_);
  for (const auto& [jk, c] : a.terms_) out.add(jk.first, jk.second, s * c);
  return out;
}

ZPoly ZPoly::compose(const ZPoly& a, const ZPoly& b) const {
  const int n = max_degree_;
  // Powers of the substituted arguments, truncated at n.
  std::vector<ZPoly> pa{constant(1.0, n)}, pb{constant(1.0, n)};
  for (int i = 1; i <= n; ++i) {
    pa.push_back(pa.back() * a);
    pb.push_back(pb.back() * b);
  }
  ZPoly out(n);
  for (const auto& [jk, c] : terms_) out = out + c * (pa[static_cast<std::size_t>(jk.first)] * pb[static_cast<std::size_t>(jk.second)]);
  return out;
}

HopfNormalForm hopf_normal_form(const ZPoly& nonlinear, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("hopf_normal_form requires omega > 0");
  const int n = nonlinear.max_degree();
  const cplx i_omega(0.0, omega);
  // Full right-hand side including the linear part.
  ZPoly field = i_omega * ZPoly::z(n) + nonlinear;

  for (int m = 2; m <= n; ++m) {
    // Homological equation: i omega ((j - k) - 1) h_jk = g_jk for non-resonant (j, k).
    ZPoly h(n);
    const ZPoly part = field.homogeneous(m);
    for (const auto& [jk, c] : part.terms()) {
      const int j = jk.first, k = jk.second;
      if (j - k == 1) continue;
      h.add(j, k, c / (i_omega * static_cast<double>((j - k) - 1)));
    }
    if (h.terms().empty()) continue;
    // z = w + h(w, wbar): w' solves w' = G(w + h, conj(w + h)) - h_w w' - h_wbar conj(w').
    const ZPoly zw = ZPoly::z(n) + h;
    const ZPoly source = field.compose(zw, zw.conj());
    const ZPoly hw = h.dz();
    const ZPoly hwb = h.dzbar();
    ZPoly w_dot = source;
    for (int it = 0; it < n; ++it) w_dot = source - hw * w_dot - hwb * w_dot.conj();
    field = w_dot;
  }
  HopfNormalForm nf;
  nf.omega = omega;
  nf.c1 = field.coeff(2, 1);
  nf.c2 = n >= 5 ? field.coeff(3, 2) : cplx{};
  return nf;
}

}  // namespace gskit
