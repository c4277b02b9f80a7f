#include <doctest.h>

#include "gskit/config.hpp"
#include "gskit/errors.hpp"

#include <cstdlib>

using namespace gskit;

TEST_SUITE("config") {
  TEST_CASE("key=value text with comments and blanks") {
    const auto c = parse_config(
        "# tolerances\n"
        "rel_tol = 1e-9\n"
        "\n"
        "abs_tol=1e-11   # trailing comment\n"
        "map_grid = 30x40\n"
        "map_k = 0.01..0.05\n"
        "threads = 3\n"
        "out_dir = results\n");
    CHECK(c.rel_tol == 1e-9);
    CHECK(c.abs_tol == 1e-11);
    CHECK(c.map_nk == 30);
    CHECK(c.map_nF == 40);
    CHECK(c.map_k.first == 0.01);
    CHECK(c.map_k.second == 0.05);
    CHECK(c.threads == 3);
    CHECK(c.out_dir == "results");
    // untouched keys keep their defaults
    CHECK(c.ray_samples == 400);
  }

  TEST_CASE("later assignments override earlier ones and the base") {
    RunConfig base;
    base.seed = 5;
    auto c = parse_config("seed = 9\nseed = 11\n", base);
    CHECK(c.seed == 11);
    c.set("seed", "12");
    CHECK(c.seed == 12);
  }

  TEST_CASE("bad input is a config error") {
    CHECK_THROWS_AS(parse_config("nonsense = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("rel_tol = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("just a line\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("map_ray_samples = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_grid("12by12"), ConfigError);
    CHECK_THROWS_AS(parse_range("0.1"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/gskit.conf"), ConfigError);
  }

  TEST_CASE("GSKIT_THREADS caps the worker count") {
    ::setenv("GSKIT_THREADS", "2", 1);
    CHECK(thread_budget(8) == 2);
    CHECK(thread_budget(1) == 1);
    CHECK(thread_budget(0) <= 2);
    ::setenv("GSKIT_THREADS", "junk", 1);
    CHECK(thread_budget(5) == 5);
    ::unsetenv("GSKIT_THREADS");
    CHECK(thread_budget(0) >= 1);
  }
}
