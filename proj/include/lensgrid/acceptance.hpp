#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lensgrid/grid.hpp"

namespace lensgrid {

struct AcceptanceOptions {
  std::uint64_t seed = 0x5eed2024;
  int random_per_lens = 50;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 10;

// Valid q in (-p, p) coprime to p, negative values included.
std::vector<int> valid_q_values(int p);

// Uniform random knot diagram of grid number n (rejection on component count).
GridDiagram random_knot_diagram(LensParams lens, int n, std::mt19937_64& rng);

// Every grid-number-one diagram for p in {2,3,5} and all q, then
// random_per_lens random n = 2 knots for each of L(2,1), L(3,1), L(3,2), L(5,2).
std::vector<GridDiagram> acceptance_corpus(const AcceptanceOptions& opt);

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// "[PASS] 3 cover relations: ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace lensgrid
