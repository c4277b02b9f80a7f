#pragma once

// Global picture: region labels over the (k, F) plane and the flow on the
// Poincare sphere.
//
// Region signatures (the labels are names; the signature is what is tested):
//   outside  Delta < 0, only p0
//   1        p_mp stable, no cycle around it
//   2        p_mp stable, one unstable cycle
//   3        p_mp unstable, two cycles (inner stable, outer unstable)
//   4        p_mp unstable, one stable cycle
//   5        p_mp unstable, no cycle (every orbit off W^s(p_pm) ends at p0)
// Boundary tags: SN (Delta = 0), H (p_mp inside the Hopf guard band, left
// unlabelled), P (separatrix gap = 0).

#include "gskit/continuation.hpp"
#include "gskit/core.hpp"
#include "gskit/cycles.hpp"
#include "gskit/integrator.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gskit {

enum class Region { Outside, R1, R2, R3, R4, R5, Unclassified };

std::string to_string(Region r);

struct RegionSignature {
  Region id;
  bool p_mp_exists;
  bool p_mp_stable;
  int cycles;
  int stable_cycles;
  std::string description;
};

const std::vector<RegionSignature>& signature_table();

struct RegionSettings {
  CensusSettings census;
  double boundary_tol = 1e-10;
  /// |tr Df(p_mp)| below this: labelled Unclassified with tag H, no census.
  double hopf_guard = 1e-6;
  bool with_splitting = false;   ///< attach the separatrix gap (costly)
  SplittingSettings splitting{1e-7, IntegratorSettings{1e-10, 1e-13}, 2e4, false};
  double splitting_tol = 1e-7;   ///< |gap| below this tags P
};

/// Cheaper census for whole-plane maps (24 ray samples).
RegionSettings map_region_settings();

struct RegionLabel {
  Region id = Region::Unclassified;
  std::vector<std::string> tags;
  int equilibria = 1;
  std::optional<bool> p_mp_stable;
  int cycles = 0;
  int stable_cycles = 0;
  std::optional<double> splitting;
  std::string note;
};

RegionLabel classify_region(const Params& a, const RegionSettings& rs = {});

struct RegionMap {
  int nk = 0, nF = 0;
  double k_lo = 0, k_hi = 0, F_lo = 0, F_hi = 0;
  std::vector<RegionLabel> cells;  ///< index i_F * nk + i_k

  /// Grid abscissae exclude the lower edge: k_i = k_lo + (k_hi - k_lo) (i + 1) / nk.
  Params at(int ik, int iF) const;
  const RegionLabel& cell(int ik, int iF) const { return cells[static_cast<std::size_t>(iF) * nk + ik]; }
};

RegionMap region_map(int nk, int nF, double k_lo, double k_hi, double F_lo, double F_hi, const RegionSettings& rs,
                     int threads = 1);

using Edge = std::pair<Region, Region>;  ///< ordered with first < second

std::set<Edge> adjacency(const RegionMap& m);

/// Same as adjacency, but every pair of differing neighbours is bisected
/// until the segment is shorter than `resolution`, so a band thinner than a
/// cell between them shows up as two edges instead of a spurious one.
std::set<Edge> refined_adjacency(const RegionMap& m, const RegionSettings& rs, double resolution = 1e-6);

/// Adjacencies implied by the signature table and the order of the curves:
/// crossing SN, H, P or T changes the signature as listed in the table.
std::set<Edge> expected_adjacency();

std::set<Region> regions_present(const RegionMap& m);

// -- Poincare compactification ------------------------------------------------
//
// U1: w = v/u, z = 1/u (direction u -> inf); U2: w = u/v, z = 1/v (v -> inf).
// Both chart fields are multiplied by z^2, which keeps the orientation for z > 0.

enum class Chart { U1, U2 };

Vec2 chart_field(Chart c, const Vec2& wz, const Params& a);
Mat2 chart_jacobian(Chart c, const Vec2& wz, const Params& a);
Vec2 to_chart(Chart c, const State& p);
State from_chart(Chart c, const Vec2& wz);

/// Poincare disc coordinates p / sqrt(1 + |p|^2).
Vec2 to_disc(const State& p);

struct InfinityPoint {
  std::string name;    ///< "u=inf,v=0" or "u=0,v=inf"
  Chart chart;
  Vec2 wz;
  Mat2 jacobian;
  bool degenerate = false;
  std::string kind;
};

/// Equilibria on the equator inside the closed first quadrant.
std::vector<InfinityPoint> infinity_points(const Params& a);

struct InfinityManifold {
  std::vector<Vec2> chart_path;  ///< U2 coordinates, centre-manifold graph then chart flow
  Trajectory plane;              ///< continuation in the finite plane
  State end;
  std::string attractor;         ///< "p0", "p_mp", "cycle" or "none"
};

/// Unstable (centre) manifold of the degenerate saddle at u = 0, v = inf,
/// launched at z = offset on its centre-manifold graph w = F z^3 - (3F^2 + 2kF) z^5.
InfinityManifold infinity_unstable_manifold(const Params& a, double offset = 1e-6, double t_end = 5000.0);

struct CompactPortrait {
  std::vector<InfinityPoint> infinity;
  InfinityManifold manifold;
};

CompactPortrait compactified_portrait(const Params& a);

}  // namespace gskit
