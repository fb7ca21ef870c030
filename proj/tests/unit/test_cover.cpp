#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lensgrid/acceptance.hpp"
#include "lensgrid/complex.hpp"
#include "lensgrid/cover.hpp"

using namespace lensgrid;

namespace {

std::set<std::pair<std::int64_t, std::int64_t>> as_set(const std::vector<ShearedPoint>& pts) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& p : pts) out.insert({p.s2, p.t2});
  return out;
}

}  // namespace

TEST_CASE("lifting a lattice point in L(5,2)") {
  const Torus t{5, 2, 1};
  const auto pts = lift_points({ShearedPoint::lattice(0, 0)}, t);
  REQUIRE(pts.size() == 5);
  const std::vector<std::pair<int, int>> want{{0, 0}, {2, 1}, {4, 2}, {1, 3}, {3, 4}};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(pts[k] == ShearedPoint::lattice(want[k].first, want[k].second));
  }
}

TEST_CASE("lifting a half-integer center keeps the half offsets") {
  const Torus t{5, 2, 1};
  const auto pts = lift_points({cell_to_sheared({0, 0}, CellAnchor::Center)}, t);
  REQUIRE(pts.size() == 5);
  CHECK(pts[1].s() == Rational(5, 2));
  CHECK(pts[1].t() == Rational(3, 2));
  CHECK(pts[3].s() == Rational(3, 2));
  CHECK(pts[3].t() == Rational(7, 2));
}

TEST_CASE("lifting in L(2,1)") {
  const auto pts = lift_points({ShearedPoint::lattice(1, 0)}, Torus{2, 1, 1});
  CHECK(as_set(pts) == as_set({ShearedPoint::lattice(1, 0), ShearedPoint::lattice(0, 1)}));
}

TEST_CASE("points outside the fundamental domain are rejected") {
  const Torus t{5, 2, 1};
  CHECK_THROWS_AS(lift_points({ShearedPoint::lattice(5, 0)}, t), std::out_of_range);
  CHECK_THROWS_AS(lift_points({ShearedPoint::lattice(0, 1)}, t), std::out_of_range);
  CHECK_THROWS_AS(lift_points({ShearedPoint::lattice(-1, 0)}, t), std::out_of_range);
}

TEST_CASE("grid-number-one L(5,2) lifts to a 5x5 grid") {
  const auto s3 = lift_diagram(GridDiagram::from_columns({5, 2}, {0}, {2}));
  CHECK(s3.N == 5);
  CHECK(s3.O_col == std::vector<int>{0, 2, 4, 1, 3});
  CHECK(s3.X_col == std::vector<int>{2, 4, 1, 3, 0});
  CHECK(validate_s3(s3).empty());
}

TEST_CASE("grid-number-one L(2,1) lifts to a 2x2 grid") {
  const auto s3 = lift_diagram(GridDiagram::from_columns({2, 1}, {0}, {1}));
  CHECK(s3.N == 2);
  CHECK(s3.O_col == std::vector<int>{0, 1});
  CHECK(s3.X_col == std::vector<int>{1, 0});
}

TEST_CASE("an n = 2 knot in L(3,1) lifts to a 6x6 grid") {
  const auto s3 = lift_diagram(GridDiagram::from_columns({3, 1}, {0, 3}, {5, 2}));
  CHECK(s3.N == 6);
  CHECK(s3.O_col == std::vector<int>{0, 3, 2, 5, 4, 1});
  CHECK(s3.X_col == std::vector<int>{5, 2, 1, 4, 3, 0});
  CHECK(validate_s3(s3).empty());
}

TEST_CASE("every lifted generator is a bijection") {
  std::mt19937_64 rng(11);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {5, 2}}) {
    const auto d = random_knot_diagram({p, q}, 2, rng);
    const GeneratorSpace space(p, 2);
    std::set<std::vector<int>> seen;
    for (const auto& x : space.all()) {
      const auto lx = lift_generator(x, d);
      CHECK(lx.is_bijection());
      CHECK(lx.size() == 2 * p);
      seen.insert(lx.col_of_row);
    }
    // distinct generators lift to distinct invariant generators
    CHECK(seen.size() == space.size());
  }
}

TEST_CASE("lifted diagrams are invariant under the deck shift") {
  std::mt19937_64 rng(5);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}, {7, 3}}) {
    const auto d = random_knot_diagram({p, q}, 2, rng);
    const auto s3 = lift_diagram(d);
    const int N = s3.N, n = d.n, shift = n * d.lens.q_normalized();
    for (int r = 0; r < N; ++r) {
      CHECK(s3.O_col[(r + n) % N] == (s3.O_col[r] + shift) % N);
      CHECK(s3.X_col[(r + n) % N] == (s3.X_col[r] + shift) % N);
    }
  }
}

TEST_CASE("square grid files round trip and validate") {
  const std::string text = "# unknot\n2\nO: 0 1\nX: 1 0\n";
  const auto d = parse_s3_grid(text);
  CHECK(d.N == 2);
  CHECK(parse_s3_grid(format_s3_grid(d)) == d);
  CHECK(validate_s3(d).empty());
  CHECK_FALSE(validate_s3({3, {0, 0, 1}, {1, 2, 0}}).empty());
  CHECK_THROWS_AS(require_valid_s3({2, {0, 2}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_s3_grid("2\nO: 0\nX: 1 0\n"), ParseError);
}

TEST_CASE("generator and square-grid conversions agree") {
  const S3Generator x{{2, 0, 1}};
  CHECK(x.is_bijection());
  CHECK_FALSE(S3Generator{{0, 0, 1}}.is_bijection());
  CHECK(generator_as_s3(s3_as_generator(x)) == x);
  const auto pts = s3_points(x);
  CHECK(pts[0] == ShearedPoint::lattice(2, 0));
  const auto c = s3_centers({1, 0});
  CHECK(c[0].s() == Rational(3, 2));
  CHECK(c[1].t() == Rational(3, 2));
}
