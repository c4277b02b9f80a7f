#include <doctest.h>

#include "gskit/portrait.hpp"

using namespace gskit;

TEST_SUITE("portrait") {
  TEST_CASE("two-cycle portrait is deterministic") {
    const Params a{0.034, 0.010963426116312};
    PortraitSpec spec;
    spec.seeds = 3;
    spec.t_end = 500.0;
    const auto d1 = build_portrait(a, spec);
    const auto d2 = build_portrait(a, spec);
    CHECK(d1.cycles.size() == 2);
    CHECK(d1.reports.size() == d1.equilibria.all().size());
    const auto s1 = render_svg(d1, spec), s2 = render_svg(d2, spec);
    CHECK(s1 == s2);
    CHECK(s1.rfind("<svg", 0) != std::string::npos);
    CHECK(s1.find("</svg>") != std::string::npos);
    const auto csv = orbits_csv(d1);
    CHECK(csv.rfind("orbit,kind,t,u,v\n", 0) == 0);
    CHECK(csv == orbits_csv(d2));
    CHECK(csv.find(",cycle,") != std::string::npos);
    CHECK(csv.find(",unstable,") != std::string::npos);
  }

  TEST_CASE("outside the saddle-node curve only p0 is drawn") {
    PortraitSpec spec;
    spec.seeds = 2;
    spec.t_end = 200.0;
    const auto d = build_portrait(Params{0.05, 0.015}, spec);
    CHECK(d.equilibria.all().size() == 1);
    CHECK(d.cycles.empty());
  }
}
