#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lensgrid/grid.hpp"

namespace lensgrid {

// Standard N x N grid on the square torus. O_col[r] is the column of the O in
// row r; likewise X_col.
struct S3GridDiagram {
  int N = 0;
  std::vector<int> O_col;
  std::vector<int> X_col;

  bool operator==(const S3GridDiagram&) const = default;
};

// Generator on the square grid: col_of_row[r] is the column of the point in
// row r.
struct S3Generator {
  std::vector<int> col_of_row;

  int size() const { return static_cast<int>(col_of_row.size()); }
  bool is_bijection() const;
  auto operator<=>(const S3Generator&) const = default;
};

std::vector<std::string> validate_s3(const S3GridDiagram& diagram);
void require_valid_s3(const S3GridDiagram& diagram);

// C_{p,q}: each point (a, b) of [0,pn) x [0,n) maps to the p points
// ((a + nqk) mod np, b + nk), k = 0..p-1, emitted point-major. Throws
// std::out_of_range for inputs outside the fundamental domain.
std::vector<ShearedPoint> lift_points(const std::vector<ShearedPoint>& points, const Torus& torus);

S3GridDiagram lift_diagram(const GridDiagram& diagram);
S3Generator lift_generator(const Generator& x, const GridDiagram& diagram);

// Square-grid points in doubled coordinates: generator corners and
// basepoint centers.
std::vector<ShearedPoint> s3_points(const S3Generator& x);
std::vector<ShearedPoint> s3_centers(const std::vector<int>& col_of_row);

// Text format: "N", "O: c_0 .. c_{N-1}", "X: ..." (column by row).
S3GridDiagram parse_s3_grid(std::istream& in);
S3GridDiagram parse_s3_grid(const std::string& text);
std::string format_s3_grid(const S3GridDiagram& diagram);

}  // namespace lensgrid
