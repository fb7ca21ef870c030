#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lensgrid/complex.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/rational.hpp"

namespace lensgrid {

inline constexpr std::uint64_t kDefaultPieceCap = 100'000;

enum class PivotOrder { LowestBit, HighestBit };

// Bit-packed F2 row: bit c of word c/64.
using BitRow = std::vector<std::uint64_t>;

std::size_t f2_rank(std::vector<BitRow> rows, PivotOrder order = PivotOrder::LowestBit);

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GradedPiece {
  int spin_c = 0;
  Rational alexander;
  Rational maslov;
  std::vector<std::uint64_t> basis;  // generator ranks, ascending
};

// Pieces keyed by exact (S, A, M), sorted by that key.
std::vector<GradedPiece> split_by_gradings(const std::vector<GradingTriple>& gradings);

// (M, A) -> rank.
using Bigraded = std::map<std::pair<Rational, Rational>, std::uint64_t>;

struct HomologyTable {
  int spin_c_count = 1;
  int n = 1;
  std::vector<Bigraded> tilde;  // per Spin^c
  std::vector<Bigraded> hfk_hat;
  bool extraction_exact = false;
  std::string diagnostic;

  std::uint64_t tilde_rank() const;
  std::uint64_t hfk_rank() const;
  std::uint64_t hfk_rank(int spin_c) const;
};

struct HomologyOptions {
  PivotOrder pivot = PivotOrder::LowestBit;
  std::uint64_t piece_cap = kDefaultPieceCap;
  bool parallel = true;
};

// Rank of H at each M for the generators sharing one (S, A). Throws
// InvariantError if the boundary leaves the piece or misses M - 1.
std::map<Rational, std::uint64_t> homology_ranks(const SparseBoundary& tilde,
                                                 const std::vector<GradingTriple>& gradings,
                                                 const std::vector<std::uint64_t>& members,
                                                 const HomologyOptions& opt = {});

// Tilde homology split by Spin^c, followed by extract_hfk_hat.
HomologyTable tilde_homology(const SparseBoundary& tilde, const std::vector<GradingTriple>& gradings,
                             int spin_c_count, int n, const HomologyOptions& opt = {});

// Divides each Spin^c Poincare polynomial by (1 + u^-1 v^-1)^(n-1). When the
// division leaves a remainder or a negative coefficient, hfk_hat is the
// undivided table and extraction_exact is false.
void extract_hfk_hat(HomologyTable& table);

// Divides one bigraded table by (1 + u^-1 v^-1) once; false if inexact.
bool divide_by_V(const Bigraded& in, Bigraded& out);

enum class Simplicity { Simple, NearSimple, Other, NotExtracted };

struct SimplicityReport {
  Simplicity kind = Simplicity::NotExtracted;
  std::uint64_t rank = 0;
  bool rank_at_least_p = false;
};

std::string to_string(Simplicity s);
SimplicityReport simplicity_report(const HomologyTable& table, int p);

// Per Spin^c: sum of (-1)^(M - M0) over homology equals the same sum over
// generators. Returns an empty string when it holds.
std::string euler_characteristic_mismatch(const HomologyTable& table,
                                          const std::vector<GradingTriple>& gradings);

// "u^M v^A" sum for one Spin^c class, exponents as exact fractions.
std::string poincare_string(const Bigraded& ranks);

}  // namespace lensgrid
