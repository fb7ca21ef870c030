#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lensgrid/rational.hpp"

namespace lensgrid {

// L(p,q): p >= 2, 0 < |q| < p, gcd(p,|q|) = 1. q may be negative in input
// files; every formula works with the representative in (0, p).
struct LensParams {
  int p = 0;
  int q = 0;

  int q_normalized() const { return ((q % p) + p) % p; }
  bool operator==(const LensParams&) const = default;
};

// Sheared plane coordinates. Alpha curves are the lines t = const, beta curves
// the lines s = const, and the torus is the quotient by the lattice spanned by
// (np, 0) and (nq, n). A square S^3 grid of size N is the degenerate case
// p = 1, q = 0, n = N.
struct Torus {
  int p = 1;
  int q = 0;  // normalized into [0, p)
  int n = 1;

  int width() const { return n * p; }
  // Vertical period of the universal cover R^2 / <(np,0),(0,pn)>.
  int cover_height() const { return n * p; }

  // Reduce a lattice point into the fundamental domain [0,np) x [0,n).
  void reduce(std::int64_t& s, std::int64_t& t) const;
};

// A grid region named by its lower-left corner (s, t), s in [0,pn), t in [0,n).
struct Cell {
  int s = 0;
  int t = 0;
  auto operator<=>(const Cell&) const = default;
};

// Points are stored with doubled coordinates so that region centers
// (half-integers) stay integral.
struct ShearedPoint {
  std::int64_t s2 = 0;
  std::int64_t t2 = 0;

  static ShearedPoint lattice(std::int64_t s, std::int64_t t) { return {2 * s, 2 * t}; }
  Rational s() const { return Rational(s2, 2); }
  Rational t() const { return Rational(t2, 2); }
  auto operator<=>(const ShearedPoint&) const = default;
};

enum class CellAnchor { Corner, Center };

ShearedPoint cell_to_sheared(Cell cell, CellAnchor anchor);

struct GridDiagram {
  LensParams lens;
  int n = 0;
  std::vector<Cell> O;  // O[t] is the O in row t once canonical
  std::vector<Cell> X;

  // Row-major construction from the s-coordinates listed in a grid file.
  static GridDiagram from_columns(LensParams lens, const std::vector<int>& o_s,
                                  const std::vector<int>& x_s);

  Torus torus() const { return {lens.p, lens.q_normalized(), n}; }
  GridDiagram canonical() const;
  GridDiagram swapped() const;  // O and X exchanged (orientation reversal)
  bool operator==(const GridDiagram&) const = default;
};

enum class ViolationKind {
  ParameterRange,
  GcdFailure,
  SizeMismatch,
  CellRange,
  RowCollision,
  ColumnCollision,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

std::string to_string(ViolationKind kind);

// Every violated invariant, with the offending indices in the message.
std::vector<Violation> validate(const GridDiagram& diagram);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

void require_valid(const GridDiagram& diagram);

// A generator: the alpha_i component is the a[i]-th intersection of alpha_i
// with beta_{sigma[i]}, i.e. the sheared point (sigma[i] + n*a[i], i).
struct Generator {
  std::vector<int> sigma;
  std::vector<int> a;

  int size() const { return static_cast<int>(sigma.size()); }
  std::int64_t s_of(int row) const;
  ShearedPoint component(int row) const;
  std::vector<ShearedPoint> components() const;
  bool is_valid(int p) const;

  // From the fundamental-domain s-coordinate of each row's component.
  static Generator from_s_coordinates(const std::vector<std::int64_t>& s_by_row, int n);

  auto operator<=>(const Generator&) const = default;
};

// "[sigma|a]", e.g. "[1 0|1 3]".
std::string to_string(const Generator& x);

// Lower-left corners of the O regions.
Generator canonical_generator_xO(const GridDiagram& diagram);

struct LinkStructure {
  int component_count = 0;
  // Class of K in H_1(L(p,q)) = Z_p: net upward winding of the slanted arcs
  // divided by n. Meaningful up to the identification of H_1 with Z_p; the
  // order is the convention-free part.
  int homology_class = 0;
  int order = 1;
  std::vector<int> component_of_row;  // O[t] and X[t] lie on this component
};

LinkStructure reconstruct_link(const GridDiagram& diagram);

// Cycle decomposition shared by lens and S^3 grids: row t holds O at column
// o_col[t] and X at column x_col[t] (columns taken mod the column count).
std::vector<int> link_components_by_row(const std::vector<int>& o_col,
                                        const std::vector<int>& x_col, int& component_count);

std::vector<GridDiagram> enumerate_grid_number_one(LensParams lens);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Text format: "p q n", "O: s_0 .. s_{n-1}", "X: ...". '#' starts a comment.
GridDiagram parse_grid(std::istream& in);
GridDiagram parse_grid(const std::string& text);
std::string format_grid(const GridDiagram& diagram);

// FNV-1a over the canonical text form.
std::uint64_t content_hash(const std::string& text);
std::string hex_hash(std::uint64_t h);

}  // namespace lensgrid
