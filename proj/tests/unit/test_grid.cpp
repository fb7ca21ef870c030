#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lensgrid/acceptance.hpp"
#include "lensgrid/complex.hpp"
#include "lensgrid/cover.hpp"
#include "lensgrid/grid.hpp"

using namespace lensgrid;

namespace {

bool has_kind(const std::vector<Violation>& v, ViolationKind k) {
  return std::any_of(v.begin(), v.end(), [k](const Violation& x) { return x.kind == k; });
}

}  // namespace

TEST_CASE("validate accepts a grid-number-one diagram") {
  CHECK(validate(GridDiagram::from_columns({5, 2}, {0}, {2})).empty());
}

TEST_CASE("validate reports column collisions with the rows involved") {
  const auto v = validate(GridDiagram::from_columns({5, 2}, {0, 2}, {1, 3}));
  REQUIRE(has_kind(v, ViolationKind::ColumnCollision));
  const auto it = std::find_if(v.begin(), v.end(),
                               [](const Violation& x) { return x.kind == ViolationKind::ColumnCollision; });
  CHECK(it->message.find("rows 0,1") != std::string::npos);
}

TEST_CASE("validate reports gcd, range and parameter failures") {
  CHECK(has_kind(validate(GridDiagram::from_columns({4, 2}, {0}, {1})), ViolationKind::GcdFailure));
  CHECK(has_kind(validate(GridDiagram::from_columns({5, 2}, {5}, {2})), ViolationKind::CellRange));
  CHECK(has_kind(validate(GridDiagram::from_columns({5, 7}, {0}, {2})), ViolationKind::ParameterRange));
  CHECK(has_kind(validate(GridDiagram::from_columns({1, 0}, {0}, {0})), ViolationKind::ParameterRange));

  GridDiagram rows = GridDiagram::from_columns({3, 1}, {0, 1}, {1, 0});
  rows.O[1].t = 0;
  CHECK(has_kind(validate(rows), ViolationKind::RowCollision));

  GridDiagram sizes = GridDiagram::from_columns({3, 1}, {0, 1}, {1, 0});
  sizes.X.pop_back();
  CHECK(has_kind(validate(sizes), ViolationKind::SizeMismatch));
}

TEST_CASE("validate lists every violation") {
  const auto v = validate(GridDiagram::from_columns({4, 2}, {0, 2}, {1, 3}));
  CHECK(has_kind(v, ViolationKind::GcdFailure));
  CHECK(has_kind(v, ViolationKind::ColumnCollision));
  CHECK(v.size() >= 3);
  CHECK_THROWS_AS(require_valid(GridDiagram::from_columns({4, 2}, {0}, {1})), ValidationError);
}

TEST_CASE("negative q is accepted and normalized") {
  const auto d = GridDiagram::from_columns({5, -3}, {0}, {2});
  CHECK(validate(d).empty());
  CHECK(d.lens.q_normalized() == 2);
  CHECK(d.torus().q == 2);
}

TEST_CASE("cell_to_sheared corners and centers") {
  auto c = cell_to_sheared({2, 0}, CellAnchor::Center);
  CHECK(c.s() == Rational(5, 2));
  CHECK(c.t() == Rational(1, 2));
  c = cell_to_sheared({0, 0}, CellAnchor::Corner);
  CHECK(c.s() == Rational(0));
  CHECK(c.t() == Rational(0));
  c = cell_to_sheared({7, 1}, CellAnchor::Center);
  CHECK(c.s() == Rational(15, 2));
  CHECK(c.t() == Rational(3, 2));
}

TEST_CASE("torus reduction uses the sheared lattice") {
  const Torus t{5, 2, 2};
  std::int64_t s = 3, r = 2;  // one period up: subtract (nq, n) = (4, 2)
  t.reduce(s, r);
  CHECK(s == 9);
  CHECK(r == 0);
  s = 12, r = -1;
  t.reduce(s, r);
  CHECK(s == 6);
  CHECK(r == 1);
}

TEST_CASE("canonical x_O reads the O corners") {
  auto x = canonical_generator_xO(GridDiagram::from_columns({5, 2}, {0}, {2}));
  CHECK(x.sigma == std::vector<int>{0});
  CHECK(x.a == std::vector<int>{0});

  x = canonical_generator_xO(GridDiagram::from_columns({5, 2}, {3, 6}, {0, 1}));
  CHECK(x.sigma == std::vector<int>{1, 0});
  CHECK(x.a == std::vector<int>{1, 3});
}

TEST_CASE("x_O is a valid generator and survives the encode/decode round trip") {
  AcceptanceOptions opt;
  opt.random_per_lens = 10;
  for (const auto& d : acceptance_corpus(opt)) {
    const Generator x = canonical_generator_xO(d);
    REQUIRE(x.is_valid(d.lens.p));
    std::vector<std::int64_t> s;
    for (int i = 0; i < x.size(); ++i) s.push_back(x.s_of(i));
    CHECK(Generator::from_s_coordinates(s, d.n) == x);
    for (int t = 0; t < d.n; ++t) CHECK(x.component(t) == cell_to_sheared(d.canonical().O[t], CellAnchor::Corner));
  }
}

TEST_CASE("generator components sit in distinct rows and beta curves") {
  const GeneratorSpace space(3, 3);
  for (const auto& x : space.all()) {
    std::set<std::int64_t> rows, betas;
    for (const auto& pt : x.components()) {
      rows.insert(pt.t2 / 2);
      betas.insert((pt.s2 / 2) % 3);
    }
    CHECK(rows.size() == 3);
    CHECK(betas.size() == 3);
  }
}

TEST_CASE("generator text form") {
  Generator x{{1, 0}, {1, 3}};
  CHECK(to_string(x) == "[1 0|1 3]");
}

TEST_CASE("reconstruct_link on grid-number-one diagrams") {
  const auto ls = reconstruct_link(GridDiagram::from_columns({5, 2}, {0}, {2}));
  CHECK(ls.component_count == 1);
  CHECK(ls.homology_class == 4);
  CHECK(ls.order == 5);
  CHECK(5 % ls.order == 0);
}

TEST_CASE("O = X cells give trivial components of class 0") {
  const auto ls = reconstruct_link(GridDiagram::from_columns({3, 1}, {0, 3}, {0, 3}));
  CHECK(ls.component_count == 2);
  CHECK(ls.homology_class == 0);
  CHECK(ls.order == 1);
  const auto one = reconstruct_link(GridDiagram::from_columns({5, 2}, {0}, {0}));
  CHECK(one.component_count == 1);
  CHECK(one.homology_class == 0);
}

TEST_CASE("order times lifted component count equals p") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 4, 5, 6, 7}) {
    for (int q : valid_q_values(p)) {
      for (const auto& d : enumerate_grid_number_one({p, q})) {
        const auto ls = reconstruct_link(d);
        int lifted = 0;
        const auto s3 = lift_diagram(d);
        link_components_by_row(s3.O_col, s3.X_col, lifted);
        CHECK(ls.order * lifted == p);
      }
      for (int k = 0; k < 5; ++k) {
        const auto d = random_knot_diagram({p, q}, 3, rng);
        const auto ls = reconstruct_link(d);
        int lifted = 0;
        const auto s3 = lift_diagram(d);
        link_components_by_row(s3.O_col, s3.X_col, lifted);
        CHECK(ls.order * lifted == p);
      }
    }
  }
}

TEST_CASE("enumerate_grid_number_one lists p valid diagrams") {
  const auto ds = enumerate_grid_number_one({5, 2});
  REQUIRE(ds.size() == 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(validate(ds[j]).empty());
    CHECK(ds[j].X[0].s == j);
    CHECK(ds[j].O[0].s == 0);
  }
}

TEST_CASE("grid files parse, print and reparse identically") {
  const std::string text = "# comment line\n5 -3 2   # p q n\nO: 0 7\nX: 5 2\n";
  const GridDiagram d = parse_grid(text);
  CHECK(d.lens.p == 5);
  CHECK(d.lens.q == -3);
  CHECK(d.n == 2);
  CHECK(d.O[1].s == 7);
  CHECK(d.X[1].t == 1);
  CHECK(parse_grid(format_grid(d)) == d);
  CHECK(format_grid(d) == "5 -3 2\nO: 0 7\nX: 5 2\n");
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_grid("5 2 1\nO: 0 x\nX: 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_grid("5 2 2\n\n# gap\nO: 0 1\nX: 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(parse_grid("5 2\nO: 0\nX: 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("5 2 1\nX: 0\nO: 2\n"), ParseError);
}

TEST_CASE("content hash is stable and sensitive") {
  CHECK(hex_hash(content_hash("")) == "cbf29ce484222325");
  const auto a = content_hash(format_grid(GridDiagram::from_columns({5, 2}, {0}, {2})));
  const auto b = content_hash(format_grid(GridDiagram::from_columns({5, 2}, {0}, {3})));
  CHECK(a != b);
}
