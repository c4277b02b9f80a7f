#pragma once

// Deterministic phase portraits: SVG drawing and CSV dump of the orbits.
//
// Orbits: a fixed n x n grid of seeds in the window, the four separatrices of
// the saddle, and every cycle found by the census. Equilibria are coloured by
// class (saddle red, stable blue, unstable white, nonhyperbolic orange).
// CSV columns: orbit,kind,t,u,v (orbit is a running index, kind one of
// seed, unstable, stable, cycle).

#include "gskit/core.hpp"
#include "gskit/cycles.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/integrator.hpp"

#include <string>
#include <vector>

namespace gskit {

struct PortraitSpec {
  int size = 1000;           ///< SVG viewport, pixels per side
  int seeds = 7;             ///< seeds per axis
  double t_end = 3000.0;
  double u_max = 1.05;
  double v_max = 0.0;        ///< 0 picks a window that holds the equilibria and cycles
  CensusSettings census;
  IntegratorSettings integrator{1e-9, 1e-12};
};

struct Orbit {
  std::string kind;
  Trajectory path;
};

struct PortraitData {
  Params params;
  EquilibriumSet equilibria;
  std::vector<StabilityReport> reports;  ///< parallel to equilibria.all()
  std::vector<CycleRepr> cycles;
  std::vector<Orbit> orbits;
  double u_max = 1.05, v_max = 1.0;
};

PortraitData build_portrait(const Params& a, const PortraitSpec& spec = {});
std::string render_svg(const PortraitData& d, const PortraitSpec& spec = {});
std::string orbits_csv(const PortraitData& d);

}  // namespace gskit
