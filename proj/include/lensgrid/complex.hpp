#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lensgrid/cover.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/grid.hpp"

namespace lensgrid {

inline constexpr std::uint64_t kDefaultGeneratorCap = 10'000'000;

class SizeError : public std::runtime_error {
 public:
  SizeError(const std::string& what, std::uint64_t count)
      : std::runtime_error(what), count_(count) {}
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

// S_n x Z_p^n in lexicographic (sigma, a) order.
class GeneratorSpace {
 public:
  GeneratorSpace(int p, int n);

  // n! * p^n, saturating at UINT64_MAX.
  static std::uint64_t count(int p, int n);
  // Throws SizeError naming n!*p^n when the space exceeds the cap.
  void require_within(std::uint64_t cap) const;

  int p() const { return p_; }
  int n() const { return n_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t rank(const Generator& x) const;
  Generator unrank(std::uint64_t r) const;
  std::vector<Generator> all() const;

 private:
  int p_;
  int n_;
  std::uint64_t size_;
  std::uint64_t p_pow_n_;
};

// Torus plus basepoint centers (doubled coordinates). Marker k is the one in
// row k and carries the variable U_k. The square S^3 torus is p = 1, q = 0.
struct MarkedTorus {
  Torus torus;
  std::vector<ShearedPoint> O;
  std::vector<ShearedPoint> X;

  static MarkedTorus from(const GridDiagram& diagram);
  static MarkedTorus from_s3(const S3GridDiagram& diagram);
};

Generator s3_as_generator(const S3Generator& x);
S3Generator generator_as_s3(const Generator& x);

// Candidate window with x_i at the SW corner and the wrap-th lift of x_j at
// the NE corner: h = t_j - t_i + wrap*n, w = (s_j + wrap*nq - s_i) mod np.
struct Window {
  int row_i = 0;
  int row_j = 0;
  int wrap = 0;
  std::int64_t s0 = 0;
  std::int64_t t0 = 0;
  std::int64_t w = 0;
  std::int64_t h = 0;
};

// One window per ordered row pair with the smallest wrap giving h > 0.
std::vector<Window> first_wrap_windows(const Generator& x, const Torus& torus);
// Every window with h in (0, pn): p per ordered pair.
std::vector<Window> all_windows(const Generator& x, const Torus& torus);

bool window_embedded(const Window& win, const Torus& torus);
// Number of lattice translates of pt strictly inside the window.
int interior_count(const ShearedPoint& pt, const Window& win, const Torus& torus);

struct Parallelogram {
  Generator from;
  Generator to;
  Window window;
  std::vector<int> o_counts;
  std::vector<int> x_counts;

  int n_O() const;
  int n_X() const;
};

// Embedded windows whose interior holds no component of x.
std::vector<Parallelogram> rectangles_from(const Generator& x, const MarkedTorus& mt);

enum class BoundaryVariant { Tilde, AssocGraded, Minus, Hat };

std::string to_string(BoundaryVariant v);
BoundaryVariant parse_variant(const std::string& s);

struct Term {
  std::uint64_t target = 0;
  std::vector<int> exponents;  // powers of U_0..U_{n-1}

  auto operator<=>(const Term&) const = default;
};

struct SparseBoundary {
  BoundaryVariant variant = BoundaryVariant::Tilde;
  int p = 1;
  int n = 1;
  bool transposed = false;
  std::vector<std::vector<Term>> terms;  // by source rank, sorted

  std::uint64_t term_count() const;
  bool operator==(const SparseBoundary&) const = default;
};

struct BuildOptions {
  std::uint64_t cap = kDefaultGeneratorCap;
  // Puts x at the NW/SE corners instead of SW/NE; only for checking that
  // the grading tests notice.
  bool debug_orientation = false;
};

bool keeps_term(BoundaryVariant v, const Parallelogram& P);

SparseBoundary build_boundary(const MarkedTorus& mt, BoundaryVariant v, const BuildOptions& opt = {});
SparseBoundary build_boundary_serial(const MarkedTorus& mt, BoundaryVariant v,
                                     const BuildOptions& opt = {});
SparseBoundary build_boundary(const GridDiagram& d, BoundaryVariant v, const BuildOptions& opt = {});

struct SquareCheck {
  bool zero = true;
  std::uint64_t nonzero_entries = 0;
  std::string first_failure;
};

// Symbolic square over F2[U_0..U_{n-1}].
SquareCheck check_square_zero(const SparseBoundary& b);

struct GradingDropCheck {
  std::uint64_t terms_checked = 0;
  std::uint64_t violations = 0;
  std::string first_failure;

  bool ok() const { return violations == 0; }
};

// Every parallelogram from every generator: S preserved, M_O drop 1 - 2n_O,
// M_X drop 1 - 2n_X, A drop n_X - n_O. With debug orientation the roles of
// source and target are exchanged.
GradingDropCheck check_grading_drops(const GridDiagram& d, const GradingContext& ctx,
                                     const BuildOptions& opt = {});

// "SRC -> DST U0^e0 ... U{n-1}^e{n-1}" per term, sources in rank order.
void export_boundary(const SparseBoundary& b, std::ostream& os);

}  // namespace lensgrid
