#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "lensgrid/acceptance.hpp"
#include "lensgrid/complex.hpp"

using namespace lensgrid;

namespace {

// Any O/X placement on the n x pn grid, links included.
GridDiagram random_placement(LensParams lens, int n, std::mt19937_64& rng) {
  std::vector<int> o(n), x(n);
  std::iota(o.begin(), o.end(), 0);
  std::iota(x.begin(), x.end(), 0);
  std::shuffle(o.begin(), o.end(), rng);
  std::shuffle(x.begin(), x.end(), rng);
  std::uniform_int_distribution<int> lift(0, lens.p - 1);
  for (int& v : o) v += n * lift(rng);
  for (int& v : x) v += n * lift(rng);
  return GridDiagram::from_columns(lens, o, x);
}

// Unit cells of the window, reduced into the fundamental domain.
std::vector<std::pair<std::int64_t, std::int64_t>> window_cells(const Window& w, const Torus& t) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t u = 0; u < w.w; ++u) {
    for (std::int64_t v = 0; v < w.h; ++v) {
      std::int64_t s = w.s0 + u, r = w.t0 + v;
      t.reduce(s, r);
      out.push_back({s, r});
    }
  }
  return out;
}

// Square-grid rectangles by direct scan: (target columns, O counts, X counts).
using S3Rect = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>;

std::multiset<S3Rect> brute_s3_rectangles(const S3GridDiagram& d, const std::vector<int>& x) {
  const int N = d.N;
  auto mod = [N](int v) { return ((v % N) + N) % N; };
  std::multiset<S3Rect> out;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const int h = mod(j - i), w = mod(x[j] - x[i]);
      if (w == 0) continue;
      bool empty = true;
      for (int r = 0; r < N && empty; ++r) {
        const int dr = mod(r - i), dc = mod(x[r] - x[i]);
        if (dr > 0 && dr < h && dc > 0 && dc < w) empty = false;
      }
      if (!empty) continue;
      std::vector<int> oc(N), xc(N);
      for (int r = 0; r < N; ++r) {
        oc[r] = mod(r - i) < h && mod(d.O_col[r] - x[i]) < w;
        xc[r] = mod(r - i) < h && mod(d.X_col[r] - x[i]) < w;
      }
      std::vector<int> y = x;
      std::swap(y[i], y[j]);
      out.insert({y, oc, xc});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("generator counts") {
  CHECK(GeneratorSpace::count(5, 1) == 5);
  CHECK(GeneratorSpace::count(3, 2) == 18);
  CHECK(GeneratorSpace::count(5, 3) == 750);
  CHECK(GeneratorSpace::count(2, 4) == 384);
  CHECK(GeneratorSpace::count(1, 6) == 720);
  CHECK(GeneratorSpace::count(97, 60) == UINT64_MAX);
}

TEST_CASE("rank and unrank are inverse and lexicographic") {
  const GeneratorSpace space(3, 3);
  const auto all = space.all();
  REQUIRE(all.size() == 162);
  for (std::uint64_t r = 0; r < all.size(); ++r) CHECK(space.rank(all[r]) == r);
  CHECK(std::is_sorted(all.begin(), all.end(), [](const Generator& a, const Generator& b) {
    return std::tie(a.sigma, a.a) < std::tie(b.sigma, b.a);
  }));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("oversized generator spaces are refused") {
  const GeneratorSpace space(7, 9);
  try {
    space.require_within(kDefaultGeneratorCap);
    FAIL("expected SizeError");
  } catch (const SizeError& e) {
    CHECK(std::string(e.what()).find("n!*p^n") != std::string::npos);
    CHECK(e.count() == GeneratorSpace::count(7, 9));
  }
  CHECK_NOTHROW(GeneratorSpace(5, 3).require_within(750));
  CHECK_THROWS_AS(GeneratorSpace(5, 3).require_within(749), SizeError);
  BuildOptions opt;
  opt.cap = 10;
  CHECK_THROWS_AS(build_boundary(GridDiagram::from_columns({3, 1}, {0, 3}, {5, 2}), BoundaryVariant::Minus, opt),
                  SizeError);
}

TEST_CASE("grid number one has no rectangles") {
  for (int q : valid_q_values(5)) {
    for (const auto& d : enumerate_grid_number_one({5, q})) {
      const auto mt = MarkedTorus::from(d);
      for (const auto& x : GeneratorSpace(5, 1).all()) {
        CHECK(first_wrap_windows(x, mt.torus).empty());
        CHECK(rectangles_from(x, mt).empty());
      }
      CHECK(build_boundary(d, BoundaryVariant::Minus).term_count() == 0);
    }
  }
}

TEST_CASE("n = 2: two first-wrap candidates, both embedded, widths sum to nq mod np") {
  std::mt19937_64 rng(23);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {5, 2}, {7, 3}}) {
    const Torus t{p, q, 2};
    for (const auto& x : GeneratorSpace(p, 2).all()) {
      const auto ws = first_wrap_windows(x, t);
      REQUIRE(ws.size() == 2);
      CHECK(window_embedded(ws[0], t));
      CHECK(window_embedded(ws[1], t));
      CHECK(ws[0].h + ws[1].h == 2);
      CHECK((ws[0].w + ws[1].w) % (2 * p) == (2 * q) % (2 * p));
      CHECK(all_windows(x, t).size() == static_cast<std::size_t>(2 * p));
    }
  }
}

TEST_CASE("on the square torus the two widths sum to N") {
  const Torus t{1, 0, 4};
  const GeneratorSpace space(1, 4);
  for (const auto& x : space.all()) {
    for (const auto& a : first_wrap_windows(x, t)) {
      for (const auto& b : first_wrap_windows(x, t)) {
        if (a.row_i == b.row_j && a.row_j == b.row_i) {
          CHECK(a.w + b.w == 4);
          CHECK(a.h + b.h == 4);
        }
      }
    }
  }
}

TEST_CASE("first-wrap window count is n(n-1)") {
  for (int n = 1; n <= 4; ++n) {
    const Torus t{3, 1, n};
    const GeneratorSpace space(3, n);
    for (std::uint64_t r = 0; r < space.size(); r += 7) {
      const auto x = space.unrank(r);
      CHECK(first_wrap_windows(x, t).size() == static_cast<std::size_t>(n * (n - 1)));
      CHECK(all_windows(x, t).size() == static_cast<std::size_t>(n * (n - 1) * 3));
    }
  }
}

TEST_CASE("embedding and interior counts agree with a cell-by-cell scan") {
  std::mt19937_64 rng(29);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {5, 2}, {5, 3}}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto d = random_placement({p, q}, 3, rng);
      const auto mt = MarkedTorus::from(d);
      const auto& t = mt.torus;
      const GeneratorSpace space(p, 3);
      for (std::uint64_t r = 0; r < space.size(); r += 5) {
        const auto x = space.unrank(r);
        for (const auto& w : all_windows(x, t)) {
          auto cells = window_cells(w, t);
          std::sort(cells.begin(), cells.end());
          const bool injective = std::adjacent_find(cells.begin(), cells.end()) == cells.end();
          CHECK(window_embedded(w, t) == injective);
          if (!injective) continue;
          for (const auto& c : mt.O) {
            const auto cnt = std::count(cells.begin(), cells.end(), std::make_pair(c.s2 / 2, c.t2 / 2));
            CHECK(interior_count(c, w, t) == cnt);
          }
          for (const auto& pt : x.components()) {
            int inside = 0;
            for (std::int64_t u = 1; u < w.w; ++u) {
              for (std::int64_t v = 1; v < w.h; ++v) {
                std::int64_t s = w.s0 + u, tt = w.t0 + v;
                t.reduce(s, tt);
                inside += (2 * s == pt.s2 && 2 * tt == pt.t2);
              }
            }
            CHECK(interior_count(pt, w, t) == inside);
          }
        }
      }
    }
  }
}

TEST_CASE("square-torus rectangles match a direct scan") {
  std::mt19937_64 rng(31);
  for (int N : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 3; ++trial) {
      S3GridDiagram d{N, std::vector<int>(N), std::vector<int>(N)};
      std::iota(d.O_col.begin(), d.O_col.end(), 0);
      std::iota(d.X_col.begin(), d.X_col.end(), 0);
      std::shuffle(d.O_col.begin(), d.O_col.end(), rng);
      std::shuffle(d.X_col.begin(), d.X_col.end(), rng);
      const auto mt = MarkedTorus::from_s3(d);
      for (const auto& x : GeneratorSpace(1, N).all()) {
        std::multiset<S3Rect> got;
        for (const auto& P : rectangles_from(x, mt)) got.insert({P.to.sigma, P.o_counts, P.x_counts});
        CHECK(got == brute_s3_rectangles(d, x.sigma));
      }
    }
  }
}

TEST_CASE("rectangles change exactly two components") {
  std::mt19937_64 rng(37);
  const auto d = random_knot_diagram({5, 2}, 3, rng);
  const auto mt = MarkedTorus::from(d);
  for (const auto& x : GeneratorSpace(5, 3).all()) {
    for (const auto& P : rectangles_from(x, mt)) {
      int changed = 0;
      for (int k = 0; k < 3; ++k) changed += P.from.component(k) != P.to.component(k);
      CHECK(changed == 2);
      CHECK(P.to.is_valid(5));
    }
  }
}

TEST_CASE("the boundary squares to zero on random L(3,1) placements") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = random_placement({3, 1}, 2, rng);
    for (auto v : {BoundaryVariant::Tilde, BoundaryVariant::Minus, BoundaryVariant::Hat}) {
      const auto sq = check_square_zero(build_boundary(d, v));
      CHECK_MESSAGE(sq.zero, format_grid(d), " ", to_string(v), ": ", sq.first_failure);
    }
  }
}

TEST_CASE("the boundary squares to zero for n = 3") {
  std::mt19937_64 rng(43);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {5, 2}}) {
    const auto d = random_placement({p, q}, 3, rng);
    CHECK(check_square_zero(build_boundary(d, BoundaryVariant::Minus)).zero);
  }
}

TEST_CASE("variant filters nest") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = random_placement({3, 2}, 3, rng);
    const auto mt = MarkedTorus::from(d);
    for (const auto& x : GeneratorSpace(3, 3).all()) {
      for (const auto& P : rectangles_from(x, mt)) {
        const bool tilde = keeps_term(BoundaryVariant::Tilde, P);
        const bool assoc = keeps_term(BoundaryVariant::AssocGraded, P);
        const bool hat = keeps_term(BoundaryVariant::Hat, P);
        CHECK(keeps_term(BoundaryVariant::Minus, P));
        if (tilde) CHECK(assoc);
        if (tilde) CHECK(hat);
        CHECK(hat == (P.o_counts[0] == 0));
      }
    }
    const auto tb = build_boundary(d, BoundaryVariant::Tilde);
    const auto ab = build_boundary(d, BoundaryVariant::AssocGraded);
    const auto hb = build_boundary(d, BoundaryVariant::Hat);
    for (std::size_t r = 0; r < tb.terms.size(); ++r) {
      for (const auto& t : tb.terms[r]) {
        CHECK(std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; }));
        CHECK(std::binary_search(ab.terms[r].begin(), ab.terms[r].end(), t));
      }
      for (const auto& t : hb.terms[r]) CHECK(t.exponents[0] == 0);
    }
  }
}

TEST_CASE("grading drops hold on every parallelogram") {
  std::mt19937_64 rng(53);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 2}}) {
    const auto d = random_knot_diagram({p, q}, 3, rng);
    const GradingContext ctx(d);
    const auto chk = check_grading_drops(d, ctx);
    CHECK_MESSAGE(chk.ok(), chk.first_failure);
    CHECK(chk.terms_checked > 0);
  }
}

TEST_CASE("the debug orientation is caught by the grading checks") {
  const auto d = GridDiagram::from_columns({3, 1}, {0, 3}, {5, 2});
  const GradingContext ctx(d);
  BuildOptions opt;
  opt.debug_orientation = true;
  const auto chk = check_grading_drops(d, ctx, opt);
  CHECK_FALSE(chk.ok());
  CHECK_FALSE(chk.first_failure.empty());
  const auto b = build_boundary(d, BoundaryVariant::Minus, opt);
  CHECK(b.transposed);
}

TEST_CASE("parallel and serial boundaries are identical") {
  std::mt19937_64 rng(59);
  for (auto v : {BoundaryVariant::Tilde, BoundaryVariant::Minus, BoundaryVariant::Hat}) {
    const auto mt = MarkedTorus::from(random_placement({5, 2}, 3, rng));
    CHECK(build_boundary(mt, v) == build_boundary_serial(mt, v));
  }
}

TEST_CASE("variant names round trip") {
  for (auto v : {BoundaryVariant::Tilde, BoundaryVariant::AssocGraded, BoundaryVariant::Minus,
                 BoundaryVariant::Hat})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK(parse_variant("minus-export") == BoundaryVariant::Minus);
  CHECK_THROWS_AS(parse_variant("plus"), std::invalid_argument);
}

TEST_CASE("boundary export format") {
  const auto b = build_boundary(GridDiagram::from_columns({2, 1}, {0, 1}, {3, 0}), BoundaryVariant::Minus);
  std::ostringstream os;
  export_boundary(b, os);
  const std::string out = os.str();
  std::istringstream lines(out);
  std::string line;
  std::uint64_t count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(line.find(" -> ") != std::string::npos);
    CHECK(line.find(" U0^") != std::string::npos);
    CHECK(line.find(" U1^") != std::string::npos);
    CHECK(line.front() == '[');
  }
  CHECK(count == b.term_count());
  CHECK(count > 0);
}
