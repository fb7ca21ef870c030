#include <CLI11.hpp>

#include <iostream>

#include "lensgrid/acceptance.hpp"

using namespace lensgrid;

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one line per criterion"};
  int criterion = 0;
  AcceptanceOptions opt;
  app.add_option("--criterion", criterion, "Run only this criterion")->check(CLI::Range(1, kCriterionCount));
  app.add_option("--seed", opt.seed, "Seed for the random part of the corpus");
  app.add_option("--random-per-lens", opt.random_per_lens, "Random n=2 knots per lens space");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (criterion && id != criterion) continue;
    const auto r = run_criterion(id, opt);
    std::cout << format_result(r) << std::endl;
    failures += !r.passed;
  }
  return failures == 0 ? 0 : 1;
}
