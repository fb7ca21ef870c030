#include "lensgrid/s3_oracle.hpp"

namespace lensgrid {

std::int64_t s3_maslov(const S3Generator& x, const S3GridDiagram& d, BasepointRole role) {
  const auto pts = s3_points(x);
  const auto B = s3_centers(role == BasepointRole::O ? d.O_col : d.X_col);
  return count_I(pts, pts) - count_I(pts, B) - count_I(B, pts) + count_I(B, B) + 1;
}

LinkBasepointPartition basepoint_partition(const S3GridDiagram& d) {
  LinkBasepointPartition part;
  part.component_of_row = link_components_by_row(d.O_col, d.X_col, part.components);
  part.sizes.assign(part.components, 0);
  for (int c : part.component_of_row) ++part.sizes[c];
  return part;
}

std::vector<Rational> s3_alexander_multi(const S3Generator& x, const S3GridDiagram& d,
                                         const LinkBasepointPartition& partition) {
  if (static_cast<int>(partition.component_of_row.size()) != d.N)
    throw std::invalid_argument("basepoint partition does not match the diagram size");
  const auto O = s3_centers(d.O_col);
  const auto X = s3_centers(d.X_col);
  // 2x - X - O keeps the coefficients integral; halve at the end.
  FormalPointSum lhs = FormalPointSum::of(s3_points(x), 2);
  lhs.add(X, -1).add(O, -1);
  std::vector<FormalPointSum> rhs(partition.components);
  for (int r = 0; r < d.N; ++r) {
    const int c = partition.component_of_row[r];
    rhs[c].add({X[r]}, 1).add({O[r]}, -1);
  }
  std::vector<Rational> out;
  for (int c = 0; c < partition.components; ++c) {
    out.push_back(count_J(lhs, rhs[c]) / 2 - Rational(partition.sizes[c] - 1, 2));
  }
  return out;
}

Rational s3_alexander(const S3Generator& x, const S3GridDiagram& d,
                      const LinkBasepointPartition& partition) {
  Rational total(0);
  for (const auto& a : s3_alexander_multi(x, d, partition)) total += a;
  return total;
}

HomologyTable s3_tilde_homology(const S3GridDiagram& d, std::uint64_t cap, const HomologyOptions& opt) {
  const MarkedTorus mt = MarkedTorus::from_s3(d);
  BuildOptions bopt;
  bopt.cap = cap;
  const SparseBoundary b = build_boundary(mt, BoundaryVariant::Tilde, bopt);
  const GeneratorSpace space(1, d.N);
  const auto part = basepoint_partition(d);
  std::vector<GradingTriple> gradings(space.size());
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    const S3Generator x = generator_as_s3(space.unrank(r));
    gradings[r] = {0, Rational(s3_maslov(x, d)), s3_alexander(x, d, part)};
  }
  return tilde_homology(b, gradings, 1, d.N, opt);
}

CoverReport verify_cover_relations(const GridDiagram& diagram, std::uint64_t cap) {
  const GradingContext ctx(diagram);
  const GridDiagram& d = ctx.diagram();
  const int p = d.lens.p;
  CoverReport rep;
  rep.p = p;
  rep.n = d.n;

  const S3GridDiagram lifted = lift_diagram(d);
  const auto part = basepoint_partition(lifted);
  const LinkStructure ls = reconstruct_link(d);
  rep.lifted_components = part.components;
  rep.order = ls.order;
  rep.order_matches_lift = part.components * ls.order == p;
  if (!rep.order_matches_lift)
    rep.violations.push_back("lift has " + std::to_string(part.components) + " components but p/order = " +
                             std::to_string(p / ls.order));

  const Generator xO = canonical_generator_xO(d);
  rep.xO_lifted_maslov = s3_maslov(lift_generator(xO, d), lifted);
  rep.xO_maslov = ctx.maslov(xO, BasepointRole::O);
  const Rational expected_xO = d_invariant(p, d.lens.q_normalized(), d.lens.q_normalized() - 1) - (d.n - 1);
  rep.anchors_ok = rep.xO_lifted_maslov == -(static_cast<std::int64_t>(p) * d.n - 1) &&
                   rep.xO_maslov == expected_xO;
  if (!rep.anchors_ok)
    rep.violations.push_back("x_O anchors: lifted M = " + std::to_string(rep.xO_lifted_maslov) +
                             ", M = " + to_string(rep.xO_maslov));

  GeneratorSpace space(p, d.n);
  space.require_within(cap);
  bool have_ref = false;
  Rational ref_A;
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    CoverRow row;
    row.x = space.unrank(r);
    const S3Generator xt = lift_generator(row.x, d);
    row.lifted_maslov = s3_maslov(xt, lifted);
    row.lens.S = ctx.spin_c(row.x);
    row.lens.M = ctx.maslov(row.x, BasepointRole::O);
    const Rational predicted = Rational(row.lifted_maslov, p) + ctx.maslov_shift();
    row.absolute_ok = row.lens.M == predicted;
    if (!row.absolute_ok)
      rep.violations.push_back(to_string(row.x) + ": M = " + to_string(row.lens.M) + " but lift predicts " +
                               to_string(predicted));
    if (ctx.is_knot()) {
      row.lens.A = ctx.alexander(row.x);
      row.lifted_alexander = s3_alexander(xt, lifted, part);
      const Rational offset = row.lens.A - row.lifted_alexander / p;
      if (!have_ref) {
        ref_A = offset;
        have_ref = true;
      } else if (offset != ref_A) {
        rep.violations.push_back(to_string(row.x) + ": A - A~/p = " + to_string(offset) + " differs from " +
                                 to_string(ref_A) + " at " + to_string(space.unrank(0)));
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace lensgrid
