#pragma once

#include <stdexcept>
#include <vector>

#include "lensgrid/grid.hpp"
#include "lensgrid/rational.hpp"

namespace lensgrid {

// Pairs (a, b) in A x B with a < b in both coordinates (strict).
std::int64_t count_I(const std::vector<ShearedPoint>& A, const std::vector<ShearedPoint>& B);

// Formal integer combination of points; J extends (I(A,B) + I(B,A)) / 2
// bilinearly.
struct FormalPointSum {
  std::vector<std::pair<std::int64_t, ShearedPoint>> terms;

  static FormalPointSum of(const std::vector<ShearedPoint>& pts, std::int64_t coeff = 1);
  FormalPointSum& add(const std::vector<ShearedPoint>& pts, std::int64_t coeff);
};

Rational count_J(const FormalPointSum& A, const FormalPointSum& B);
Rational count_J(const std::vector<ShearedPoint>& A, const std::vector<ShearedPoint>& B);

// d(1,0,0) = 0; d(p,q,i) = (pq - (2i+1-p-q)^2)/(4pq) - d(q, p mod q, i mod q).
// Requires 0 < q < p and 0 <= i < p (or the base case).
Rational d_invariant(int p, int q, int i);

namespace testing_hooks {
// Corrupts d_invariant so the self-test can demonstrate it catches the fault.
void set_d_mutation(bool on);
bool d_mutation();
}  // namespace testing_hooks

enum class BasepointRole { O, X };

struct GradingTriple {
  int S = 0;
  Rational M;
  Rational A;

  bool operator==(const GradingTriple&) const = default;
};

class NotAKnotError : public std::runtime_error {
 public:
  explicit NotAKnotError(int components);
};

// Per-diagram precomputation: lifted basepoints, x_O, and the absolute
// Maslov shift d(p,q,q-1) + (p-1)/p.
class GradingContext {
 public:
  explicit GradingContext(const GridDiagram& diagram);

  const GridDiagram& diagram() const { return diagram_; }
  bool is_knot() const { return components_ == 1; }
  int components() const { return components_; }
  const Rational& maslov_shift() const { return shift_; }

  int spin_c(const Generator& x) const;
  // The bracketed pair-count combination before dividing by p.
  std::int64_t maslov_raw(const Generator& x, BasepointRole role) const;
  Rational maslov(const Generator& x, BasepointRole role) const;
  Rational alexander(const Generator& x) const;
  Rational alexander_swapped(const Generator& x) const;
  GradingTriple grade(const Generator& x) const;

 private:
  void require_knot() const;

  GridDiagram diagram_;
  Torus torus_;
  int components_ = 0;
  int xO_sum_ = 0;
  Rational shift_;
  std::vector<ShearedPoint> lifted_O_;
  std::vector<ShearedPoint> lifted_X_;
  std::int64_t I_OO_ = 0;
  std::int64_t I_XX_ = 0;
};

int grading_S(const Generator& x, const GridDiagram& diagram);
Rational grading_M(const Generator& x, const GridDiagram& diagram, BasepointRole role);
Rational grading_A(const Generator& x, const GridDiagram& diagram);

// U_0^{e_0}...U_{n-1}^{e_{n-1}} x: S fixed, M drops 2 and A drops 1 per U.
GradingTriple grade_monomial(const GradingTriple& base, const std::vector<int>& exponents);

class InhomogeneousError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grading of a sum of monomial-weighted generators; throws
// InhomogeneousError unless every term has the same triple.
GradingTriple grade_homogeneous(const std::vector<GradingTriple>& term_gradings);

std::vector<GradingTriple> grade_all_serial(const GradingContext& ctx,
                                            const std::vector<Generator>& gens);
std::vector<GradingTriple> grade_all(const GradingContext& ctx, const std::vector<Generator>& gens);

}  // namespace lensgrid
