#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lensgrid/complex.hpp"
#include "lensgrid/cover.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/homology.hpp"

namespace lensgrid {

// M(x) = I(x,x) - I(x,B) - I(B,x) + I(B,B) + 1 on the square grid torus,
// with B the O markers (or X markers for the X role).
std::int64_t s3_maslov(const S3Generator& x, const S3GridDiagram& d,
                       BasepointRole role = BasepointRole::O);

struct LinkBasepointPartition {
  int components = 0;
  std::vector<int> component_of_row;  // O and X in row r both belong here
  std::vector<int> sizes;             // n_i, markers of each kind per component
};

LinkBasepointPartition basepoint_partition(const S3GridDiagram& d);

// A_i = J(x - (X + O)/2, X_i - O_i) - (n_i - 1)/2 for each component.
std::vector<Rational> s3_alexander_multi(const S3Generator& x, const S3GridDiagram& d,
                                         const LinkBasepointPartition& partition);
Rational s3_alexander(const S3Generator& x, const S3GridDiagram& d,
                      const LinkBasepointPartition& partition);

// Bigraded tilde homology of a square grid (single Spin^c class). Links are
// graded by total Alexander grading.
HomologyTable s3_tilde_homology(const S3GridDiagram& d, std::uint64_t cap = 40'320,
                                const HomologyOptions& opt = {});

struct CoverRow {
  Generator x;
  GradingTriple lens;
  std::int64_t lifted_maslov = 0;
  Rational lifted_alexander;
  bool absolute_ok = true;
};

struct CoverReport {
  int p = 0;
  int n = 0;
  int lifted_components = 0;
  int order = 0;
  bool order_matches_lift = false;  // components of the lift == p / order
  std::int64_t xO_lifted_maslov = 0;
  Rational xO_maslov;
  bool anchors_ok = false;          // x_O: M~ = -(pn-1) and M = d(p,q,q-1) - (n-1)
  std::vector<CoverRow> rows;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Absolute M(x) = M~(x~)/p + d(p,q,q-1) + (p-1)/p for every x, and the
// relative M and A relations for every pair (checked as constancy of
// M - M~/p and A - A~/p).
CoverReport verify_cover_relations(const GridDiagram& d, std::uint64_t cap = kDefaultGeneratorCap);

}  // namespace lensgrid
