#pragma once

// Run configuration: a key=value file (one pair per line, '#' starts a
// comment) whose values command-line flags may override.
//
//   rel_tol      = 1e-10          integrator tolerances
//   abs_tol      = 1e-12
//   out_dir      = out            where repro and file outputs go
//   format       = json           json | csv | svg (per-command default)
//   seed         = 20240611       seed of the sampled checks
//   threads      = 0              0: hardware concurrency (GSKIT_THREADS caps it)
//   map_grid     = 200x200
//   map_k        = 0..0.07
//   map_F        = 0..0.07
//   ray_samples  = 400            census resolution (cycles, portrait)
//   map_ray_samples = 24          census resolution per map cell

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace gskit {

struct RunConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::string out_dir = "out";
  std::string format;
  std::uint64_t seed = 20240611;
  int threads = 0;
  int map_nk = 200, map_nF = 200;
  std::pair<double, double> map_k{0.0, 0.07};
  std::pair<double, double> map_F{0.0, 0.07};
  int ray_samples = 400;
  int map_ray_samples = 24;

  /// Applies one key=value assignment; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

/// Parses the text of a config file into `base`.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// "a..b" ranges and "NxM" grids.
std::pair<double, double> parse_range(const std::string& text);
std::pair<int, int> parse_grid(const std::string& text);

/// Worker count: the requested number (0 means hardware concurrency), capped
/// by GSKIT_THREADS when that variable holds a positive integer.
int thread_budget(int requested);

}  // namespace gskit
