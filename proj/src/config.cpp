#include "gskit/config.hpp"

#include "gskit/errors.hpp"
#include "gskit/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace gskit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double positive(const std::string& key, const std::string& value) {
  const double x = parse_number(value).value;
  if (!(x > 0.0)) throw ConfigError(key + " must be positive");
  return x;
}

int to_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
  if (used != value.size()) throw ConfigError(key + ": not an integer: '" + value + "'");
  return x;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "rel_tol") {
    rel_tol = positive(key, value);
  } else if (key == "abs_tol") {
    abs_tol = positive(key, value);
  } else if (key == "out_dir") {
    if (value.empty()) throw ConfigError("out_dir must not be empty");
    out_dir = value;
  } else if (key == "format") {
    if (value != "json" && value != "csv" && value != "svg") throw ConfigError("format must be json, csv or svg");
    format = value;
  } else if (key == "seed") {
    try {
      seed = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("seed: not an unsigned integer: '" + value + "'");
    }
  } else if (key == "threads") {
    threads = to_int(key, value);
    if (threads < 0) throw ConfigError("threads must be >= 0");
  } else if (key == "map_grid") {
    std::tie(map_nk, map_nF) = parse_grid(value);
  } else if (key == "map_k") {
    map_k = parse_range(value);
  } else if (key == "map_F") {
    map_F = parse_range(value);
  } else if (key == "ray_samples") {
    ray_samples = to_int(key, value);
    if (ray_samples < 2) throw ConfigError("ray_samples must be >= 2");
  } else if (key == "map_ray_samples") {
    map_ray_samples = to_int(key, value);
    if (map_ray_samples < 2) throw ConfigError("map_ray_samples must be >= 2");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigError("range must look like a..b, got '" + text + "'");
  const double a = parse_number(trim(text.substr(0, dots))).value;
  const double b = parse_number(trim(text.substr(dots + 2))).value;
  if (!(b > a)) throw ConfigError("empty range '" + text + "'");
  return {a, b};
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid must look like NxM, got '" + text + "'");
  const int a = to_int("grid", trim(text.substr(0, x)));
  const int b = to_int("grid", trim(text.substr(x + 1)));
  if (a < 2 || b < 2) throw ConfigError("grid needs at least 2 cells per axis");
  return {a, b};
}

int thread_budget(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("GSKIT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

}  // namespace gskit
