// One line per acceptance criterion; nonzero exit when any fails.

#include "gskit/acceptance.hpp"
#include "gskit/config.hpp"

#include <cstdio>
#include <iostream>

int main() {
  gskit::AcceptanceOptions opt;
  opt.threads = gskit::thread_budget(0);
  opt.on_result = [](const gskit::CriterionResult& r) { std::cout << gskit::format_line(r) << std::endl; };
  bool ok = true;
  for (const auto& r : gskit::run_acceptance(opt)) ok = ok && r.pass;
  return ok ? 0 : 1;
}
