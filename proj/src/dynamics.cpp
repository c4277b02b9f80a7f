#include "gskit/dynamics.hpp"

#include "gskit/equilibria.hpp"
#include "gskit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace gskit {

std::string to_string(Region r) {
  switch (r) {
    case Region::Outside: return "outside";
    case Region::R1: return "1";
    case Region::R2: return "2";
    case Region::R3: return "3";
    case Region::R4: return "4";
    case Region::R5: return "5";
    case Region::Unclassified: return "unclassified";
  }
  return "?";
}

const std::vector<RegionSignature>& signature_table() {
  static const std::vector<RegionSignature> table{
      {Region::Outside, false, false, 0, 0, "Delta < 0: p0 is the only equilibrium"},
      {Region::R1, true, true, 0, 0, "p_mp stable, no cycle"},
      {Region::R2, true, true, 1, 0, "p_mp stable inside one unstable cycle"},
      {Region::R3, true, false, 2, 1, "p_mp unstable, inner stable and outer unstable cycle"},
      {Region::R4, true, false, 1, 1, "p_mp unstable inside one stable cycle"},
      {Region::R5, true, false, 0, 0, "p_mp unstable, no cycle"},
  };
  return table;
}

RegionSettings map_region_settings() {
  RegionSettings rs;
  rs.census.ray_samples = 24;
  rs.census.ret = ReturnSettings{IntegratorSettings{1e-9, 1e-12}, 5000.0};
  rs.census.tol = 1e-9;
  return rs;
}

RegionLabel classify_region(const Params& a, const RegionSettings& rs) {
  require_positive(a);
  RegionLabel label;
  const auto d = discriminants(a);
  if (std::abs(d.Delta) <= rs.boundary_tol) label.tags.push_back("SN");
  const auto eq = equilibria(a);
  if (eq.kind != NontrivialKind::Pair) {
    label.id = Region::Outside;
    label.equilibria = eq.kind == NontrivialKind::Degenerate ? 2 : 1;
    return label;
  }
  label.equilibria = 3;
  const double tr = jacobian_trace(eq.p_mp, a);
  label.p_mp_stable = tr < 0.0;
  if (std::abs(tr) <= rs.hopf_guard) {
    // Cycles born here are too small for the return map to resolve.
    label.tags.push_back("H");
    label.note = "inside the Hopf guard band";
    return label;
  }

  const auto cycles = limit_cycle_census(a, rs.census);
  label.cycles = static_cast<int>(cycles.size());
  for (const auto& c : cycles) label.stable_cycles += c.stable() ? 1 : 0;

  if (rs.with_splitting) {
    try {
      label.splitting = separatrix_splitting(a, rs.splitting);
      if (std::abs(*label.splitting) < rs.splitting_tol) label.tags.push_back("P");
    } catch (const Error& e) {
      label.note = e.what();
    }
  }

  for (const auto& sig : signature_table()) {
    if (!sig.p_mp_exists) continue;
    if (sig.p_mp_stable == *label.p_mp_stable && sig.cycles == label.cycles && sig.stable_cycles == label.stable_cycles) {
      label.id = sig.id;
      return label;
    }
  }
  label.id = Region::Unclassified;
  if (label.note.empty()) label.note = "signature not in the table";
  return label;
}

Params RegionMap::at(int ik, int iF) const {
  return {k_lo + (k_hi - k_lo) * (ik + 1) / nk, F_lo + (F_hi - F_lo) * (iF + 1) / nF};
}

RegionMap region_map(int nk, int nF, double k_lo, double k_hi, double F_lo, double F_hi, const RegionSettings& rs,
                     int threads) {
  if (nk < 1 || nF < 1) throw DomainError("map grid must have at least one cell per axis");
  if (!(k_hi > k_lo) || !(F_hi > F_lo) || k_lo < 0.0 || F_lo < 0.0) throw DomainError("bad map extents");
  RegionMap m;
  m.nk = nk;
  m.nF = nF;
  m.k_lo = k_lo;
  m.k_hi = k_hi;
  m.F_lo = F_lo;
  m.F_hi = F_hi;
  const std::size_t n = static_cast<std::size_t>(nk) * nF;
  m.cells.resize(n);
  const auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      const int ik = static_cast<int>(i % nk), iF = static_cast<int>(i / nk);
      m.cells[i] = classify_region(m.at(ik, iF), rs);
    }
  };
  const int t = std::max(1, threads);
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < t; ++w) pool.emplace_back(work, static_cast<std::size_t>(w), static_cast<std::size_t>(t));
    for (auto& th : pool) th.join();
  }
  return m;
}

namespace {

Edge edge(Region a, Region b) { return a < b ? Edge{a, b} : Edge{b, a}; }

bool in_guard(const RegionLabel& l) {
  return l.id == Region::Unclassified && std::find(l.tags.begin(), l.tags.end(), "H") != l.tags.end();
}

}  // namespace

std::set<Edge> adjacency(const RegionMap& m) {
  std::set<Edge> out;
  for (int iF = 0; iF < m.nF; ++iF) {
    for (int ik = 0; ik < m.nk; ++ik) {
      const Region r = m.cell(ik, iF).id;
      if (ik + 1 < m.nk && m.cell(ik + 1, iF).id != r) out.insert(edge(r, m.cell(ik + 1, iF).id));
      if (iF + 1 < m.nF && m.cell(ik, iF + 1).id != r) out.insert(edge(r, m.cell(ik, iF + 1).id));
    }
  }
  return out;
}

std::set<Edge> expected_adjacency() {
  return {
      edge(Region::Outside, Region::R1),  // upper fold
      edge(Region::Outside, Region::R5),  // lower fold
      edge(Region::R1, Region::R2),       // homoclinic loop, unstable cycle
      edge(Region::R4, Region::R5),       // homoclinic loop, stable cycle
      edge(Region::R3, Region::R4),       // homoclinic loop, outer cycle of the pair
      edge(Region::R2, Region::R5),       // subcritical Hopf
      edge(Region::R1, Region::R4),       // supercritical Hopf
      edge(Region::R2, Region::R3),       // supercritical Hopf inside the unstable cycle
      edge(Region::R3, Region::R5),       // limit point of cycles
  };
}

std::set<Edge> refined_adjacency(const RegionMap& m, const RegionSettings& rs, double resolution) {
  std::set<Edge> out;
  // Region sequence along the segment [p, q], resolved by bisection.
  const auto walk = [&](auto&& self, const Params& p, Region rp, const Params& q, Region rq) -> void {
    if (rp == rq) return;
    if (std::hypot(q.k - p.k, q.F - p.F) <= resolution) {
      out.insert(edge(rp, rq));
      return;
    }
    // Split the segment, stepping off the Hopf guard band if the midpoint lands in it.
    for (const double t : {0.5, 0.3, 0.7, 0.1, 0.9}) {
      const Params mid{p.k + t * (q.k - p.k), p.F + t * (q.F - p.F)};
      const RegionLabel lm = classify_region(mid, rs);
      if (in_guard(lm)) continue;
      self(self, p, rp, mid, lm.id);
      self(self, mid, lm.id, q, rq);
      return;
    }
    out.insert(edge(rp, rq));
  };
  for (int iF = 0; iF < m.nF; ++iF) {
    for (int ik = 0; ik < m.nk; ++ik) {
      const RegionLabel& c = m.cell(ik, iF);
      if (in_guard(c)) continue;
      const Region r = c.id;
      if (ik + 1 < m.nk && !in_guard(m.cell(ik + 1, iF)) && m.cell(ik + 1, iF).id != r) {
        walk(walk, m.at(ik, iF), r, m.at(ik + 1, iF), m.cell(ik + 1, iF).id);
      }
      if (iF + 1 < m.nF && !in_guard(m.cell(ik, iF + 1)) && m.cell(ik, iF + 1).id != r) {
        walk(walk, m.at(ik, iF), r, m.at(ik, iF + 1), m.cell(ik, iF + 1).id);
      }
    }
  }
  return out;
}

std::set<Region> regions_present(const RegionMap& m) {
  std::set<Region> out;
  for (const auto& c : m.cells) out.insert(c.id);
  return out;
}

// -- compactification -----------------------------------------------------------

Vec2 chart_field(Chart c, const Vec2& wz, const Params& a) {
  const double w = wz(0), z = wz(1);
  const double z2 = z * z, z3 = z2 * z;
  if (c == Chart::U1) {
    return {w * w * (1.0 + w) - a.k * w * z2 - a.F * w * z3, w * w * z - a.F * z3 * z + a.F * z3};
  }
  return {-w * (1.0 + w) + a.k * w * z2 + a.F * z3, -w * z + (a.F + a.k) * z3};
}

Mat2 chart_jacobian(Chart c, const Vec2& wz, const Params& a) {
  const double w = wz(0), z = wz(1);
  const double z2 = z * z;
  Mat2 J;
  if (c == Chart::U1) {
    J << 2.0 * w + 3.0 * w * w - a.k * z2 - a.F * z2 * z, -2.0 * a.k * w * z - 3.0 * a.F * w * z2,
        2.0 * w * z, w * w - 4.0 * a.F * z2 * z + 3.0 * a.F * z2;
  } else {
    J << -1.0 - 2.0 * w + a.k * z2, 2.0 * a.k * w * z + 3.0 * a.F * z2,
        -z, -w + 3.0 * (a.F + a.k) * z2;
  }
  return J;
}

Vec2 to_chart(Chart c, const State& p) {
  if (c == Chart::U1) {
    if (p.u == 0.0) throw DomainError("chart U1 needs u != 0");
    return {p.v / p.u, 1.0 / p.u};
  }
  if (p.v == 0.0) throw DomainError("chart U2 needs v != 0");
  return {p.u / p.v, 1.0 / p.v};
}

State from_chart(Chart c, const Vec2& wz) {
  if (wz(1) == 0.0) throw DomainError("chart point at infinity has no finite image");
  if (c == Chart::U1) return {1.0 / wz(1), wz(0) / wz(1)};
  return {wz(0) / wz(1), 1.0 / wz(1)};
}

Vec2 to_disc(const State& p) {
  const double r = std::sqrt(1.0 + p.u * p.u + p.v * p.v);
  return {p.u / r, p.v / r};
}

std::vector<InfinityPoint> infinity_points(const Params& a) {
  require_positive(a);
  std::vector<InfinityPoint> out;
  // On the equator z = 0: U1 gives w^2 (1 + w) = 0 and U2 gives -w (1 + w) = 0;
  // w = -1 is the direction v = -u, outside the quadrant.
  InfinityPoint east;
  east.name = "u=inf,v=0";
  east.chart = Chart::U1;
  east.wz = Vec2::Zero();
  east.jacobian = chart_jacobian(Chart::U1, east.wz, a);
  east.degenerate = true;
  // w' ~ w^2 and z' ~ F z^3 near the origin: every quadrant orbit leaves it.
  east.kind = "degenerate repeller (zero linear part)";
  out.push_back(east);

  InfinityPoint north;
  north.name = "u=0,v=inf";
  north.chart = Chart::U2;
  north.wz = Vec2::Zero();
  north.jacobian = chart_jacobian(Chart::U2, north.wz, a);
  north.degenerate = true;
  // Eigenvalues -1 (along the equator) and 0; on the centre direction
  // z' = (F + k) z^3 > 0, so orbits leave into the plane: a degenerate saddle.
  north.kind = "degenerate saddle (eigenvalues -1, 0)";
  out.push_back(north);
  return out;
}

InfinityManifold infinity_unstable_manifold(const Params& a, double offset, double t_end) {
  require_positive(a);
  if (!(offset > 0.0) || offset > 1e-2) throw DomainError("manifold offset must lie in (0, 1e-2]");
  InfinityManifold out;
  const double F = a.F, k = a.k;
  const auto graph = [&](double z) { return F * z * z * z - (3.0 * F * F + 2.0 * k * F) * std::pow(z, 5); };

  // Near the equator the centre direction is far slower than the contracting
  // one; the manifold is followed as the graph w(z) until z = 1e-2.
  const double z_graph = 1e-2;
  for (int i = 0; i <= 32; ++i) {
    const double z = offset * std::pow(z_graph / offset, i / 32.0);
    out.chart_path.push_back({graph(z), z});
  }

  // Chart flow (time scaled by z^2) until v = 1/z drops to 1.
  IntegratorSettings cs{1e-10, 1e-14};
  cs.quadrant = false;
  Dopri5<2> chart([a](const Vec2& x) { return chart_field(Chart::U2, x, a); }, cs);
  Vec2 x = out.chart_path.back();
  bool reached = false;
  chart.run(0.0, x, 1e9, [&](const DenseStep<2>& step) {
    const Vec2 y = step.r[0] + step.r[1];
    out.chart_path.push_back(y);
    x = y;
    if (y(1) >= 1.0) {
      reached = true;
      return false;
    }
    return true;
  });
  if (!reached) {
    out.attractor = "none";
    out.end = from_chart(Chart::U2, x);
    return out;
  }

  const State p0 = from_chart(Chart::U2, x);
  out.plane = integrate(p0, a, t_end, IntegratorSettings{1e-10, 1e-12});
  out.end = out.plane.x.back();
  const auto eq = equilibria(a);
  const auto near = [&](const State& q) { return std::hypot(out.end.u - q.u, out.end.v - q.v) < 1e-6; };
  if (near(eq.p0)) {
    out.attractor = "p0";
  } else if (eq.kind == NontrivialKind::Pair && near(eq.p_mp)) {
    out.attractor = "p_mp";
  } else if (eq.kind == NontrivialKind::Pair) {
    // Still moving: follow the orbit to the section ray and test whether the
    // hit is a fixed point of the return map.
    const Section sec = section_for(a);
    Dopri5<2> solver([a](const Vec2& y) { return vector_field(to_state(y), a); }, IntegratorSettings{1e-10, 1e-12});
    const auto g = [&](const Vec2& y) { return sec.offset(to_state(y)); };
    const auto accept = [&](const Vec2& y) { return sec.coordinate(to_state(y)) > 0.0; };
    const auto hit = find_event(solver, 0.0, to_vec(out.end), 1e4, g, 0, 0.0, accept);
    std::optional<ReturnResult> r;
    double s = 0.0;
    if (hit) {
      s = sec.coordinate(to_state(hit->x));
      if (s < sec.s_max) r = return_map(a, sec, s);
    }
    out.attractor = r && std::abs(r->s - s) < 1e-6 ? "cycle" : "none";
  } else {
    out.attractor = "none";
  }
  return out;
}

CompactPortrait compactified_portrait(const Params& a) {
  return {infinity_points(a), infinity_unstable_manifold(a)};
}

}  // namespace gskit
