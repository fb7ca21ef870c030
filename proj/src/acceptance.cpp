#include "lensgrid/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

#include "lensgrid/complex.hpp"
#include "lensgrid/homology.hpp"
#include "lensgrid/report.hpp"
#include "lensgrid/s3_oracle.hpp"

namespace lensgrid {

std::vector<int> valid_q_values(int p) {
  std::vector<int> out;
  for (int q = -p + 1; q < p; ++q)
    if (q != 0 && std::gcd(p, q < 0 ? -q : q) == 1) out.push_back(q);
  return out;
}

GridDiagram random_knot_diagram(LensParams lens, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lift(0, lens.p - 1);
  std::vector<int> oc(n), xc(n);
  std::iota(oc.begin(), oc.end(), 0);
  std::iota(xc.begin(), xc.end(), 0);
  for (;;) {
    std::shuffle(oc.begin(), oc.end(), rng);
    std::shuffle(xc.begin(), xc.end(), rng);
    std::vector<int> os(n), xs(n);
    for (int t = 0; t < n; ++t) {
      os[t] = oc[t] + n * lift(rng);
      xs[t] = xc[t] + n * lift(rng);
    }
    GridDiagram d = GridDiagram::from_columns(lens, os, xs);
    int count = 0;
    link_components_by_row(oc, xc, count);
    if (count == 1) return d;
  }
}

std::vector<GridDiagram> acceptance_corpus(const AcceptanceOptions& opt) {
  std::vector<GridDiagram> out;
  for (int p : {2, 3, 5})
    for (int q : valid_q_values(p))
      for (auto& d : enumerate_grid_number_one({p, q})) out.push_back(d);
  std::mt19937_64 rng(opt.seed);
  const std::pair<int, int> lenses[] = {{2, 1}, {3, 1}, {3, 2}, {5, 2}};
  for (auto [p, q] : lenses)
    for (int k = 0; k < opt.random_per_lens; ++k) out.push_back(random_knot_diagram({p, q}, 2, rng));
  return out;
}

namespace {

std::string label(const GridDiagram& d) {
  std::string s = "L(" + std::to_string(d.lens.p) + "," + std::to_string(d.lens.q) + ") O=";
  for (const auto& c : d.O) s += std::to_string(c.s) + ",";
  s.back() = ' ';
  s += "X=";
  for (const auto& c : d.X) s += std::to_string(c.s) + ",";
  s.pop_back();
  return s;
}

// Collects the first few failures and a count.
struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }
  void finish(CriterionResult& r, const std::string& summary) const {
    r.passed = failed == 0;
    r.detail = summary + ": " + std::to_string(checked) + " checks";
    if (failed) r.detail += ", " + std::to_string(failed) + " failed; first: " + first;
  }
};

void d_anchors(CriterionResult& r, const AcceptanceOptions&) {
  Tally t;
  auto expect = [&](int p, int q, int i, Rational v) {
    Rational got;
    try {
      got = d_invariant(p, q, i);
    } catch (const std::exception& e) {
      t.check(false, e.what());
      return;
    }
    t.check(got == v, "d(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(i) +
                          ") = " + to_string(got) + ", expected " + to_string(v));
  };
  expect(1, 0, 0, Rational(0));
  expect(2, 1, 0, Rational(-1, 4));
  expect(2, 1, 1, Rational(1, 4));
  expect(5, 2, 1, Rational(-2, 5));
  t.finish(r, "d(1,0,0), d(2,1,0), d(2,1,1), d(5,2,1)");
}

void absolute_anchors(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  const auto corpus = acceptance_corpus(opt);
  for (const auto& d0 : corpus) {
    const GradingContext ctx(d0);
    const GridDiagram& d = ctx.diagram();
    const int p = d.lens.p, q = d.lens.q_normalized();
    const Generator xO = canonical_generator_xO(d);
    t.check(ctx.spin_c(xO) == (q - 1) % p, label(d) + ": S(x_O) = " + std::to_string(ctx.spin_c(xO)));
    const Rational m = ctx.maslov(xO, BasepointRole::O);
    t.check(m == d_invariant(p, q, q - 1) - (d.n - 1), label(d) + ": M(x_O) = " + to_string(m));
    const auto lifted = lift_diagram(d);
    const std::int64_t mt = s3_maslov(lift_generator(xO, d), lifted);
    t.check(mt == -(static_cast<std::int64_t>(p) * d.n - 1),
            label(d) + ": lifted M(x_O) = " + std::to_string(mt));
  }
  t.finish(r, std::to_string(corpus.size()) + " diagrams");
}

void cover_relations(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  const auto corpus = acceptance_corpus(opt);
  std::uint64_t rows = 0;
  for (const auto& d : corpus) {
    const auto rep = verify_cover_relations(d);
    rows += rep.rows.size();
    t.check(rep.ok(), label(d) + ": " + (rep.ok() ? "" : rep.violations.front()));
  }
  t.finish(r, std::to_string(corpus.size()) + " diagrams, " + std::to_string(rows) + " generators");
}

void square_zero(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  const auto corpus = acceptance_corpus(opt);
  for (const auto& d : corpus) {
    std::vector<BoundaryVariant> variants = {BoundaryVariant::Tilde, BoundaryVariant::AssocGraded,
                                             BoundaryVariant::Hat};
    if (d.lens.p <= 3 && d.n <= 2) variants.push_back(BoundaryVariant::Minus);
    for (auto v : variants) {
      const auto sq = check_square_zero(build_boundary(d, v));
      t.check(sq.zero, label(d) + " " + to_string(v) + ": " + sq.first_failure);
    }
  }
  t.finish(r, std::to_string(corpus.size()) + " diagrams x variants");
}

void grading_drops(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  std::uint64_t terms = 0;
  const auto corpus = acceptance_corpus(opt);
  for (const auto& d : corpus) {
    const GradingContext ctx(d);
    const auto chk = check_grading_drops(d, ctx);
    terms += chk.terms_checked;
    t.check(chk.ok(), label(d) + ": " + chk.first_failure);
  }
  t.finish(r, std::to_string(corpus.size()) + " diagrams, " + std::to_string(terms) + " parallelograms");
}

void alexander_symmetry(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  const auto corpus = acceptance_corpus(opt);
  for (const auto& d : corpus) {
    const GradingContext ctx(d);
    const GradingContext swapped(d.swapped());
    const GeneratorSpace space(d.lens.p, d.n);
    for (const auto& x : space.all()) {
      const Rational a = ctx.alexander(x), as = swapped.alexander(x);
      t.check(as == -a - (d.n - 1), label(d) + " " + to_string(x) + ": A = " + to_string(a) +
                                        ", swapped A = " + to_string(as));
    }
  }
  t.finish(r, std::to_string(corpus.size()) + " diagrams");
}

HomologyTable lens_tilde_homology(const GridDiagram& d, const HomologyOptions& hopt = {}) {
  const GradingContext ctx(d);
  const GeneratorSpace space(d.lens.p, d.n);
  const auto grades = grade_all(ctx, space.all());
  return tilde_homology(build_boundary(d, BoundaryVariant::Tilde), grades, d.lens.p, d.n, hopt);
}

void simple_knots(CriterionResult& r, const AcceptanceOptions&) {
  Tally t;
  int diagrams = 0;
  for (int p : {2, 3, 5, 7}) {
    for (int q : valid_q_values(p)) {
      for (const auto& d : enumerate_grid_number_one({p, q})) {
        ++diagrams;
        const auto table = lens_tilde_homology(d);
        bool per_class = table.extraction_exact;
        for (int s = 0; s < p && per_class; ++s) per_class = table.hfk_rank(s) == 1;
        t.check(per_class && table.hfk_rank() == static_cast<std::uint64_t>(p),
                label(d) + ": HFK-hat rank " + std::to_string(table.hfk_rank()));
      }
    }
  }
  t.finish(r, std::to_string(diagrams) + " grid-number-one knots");
}

void extraction(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  const auto corpus = acceptance_corpus(opt);
  for (const auto& d : corpus) {
    const auto table = lens_tilde_homology(d);
    t.check(table.extraction_exact, label(d) + ": " + table.diagnostic);
  }
  const S3GridDiagram unknot{2, {0, 1}, {1, 0}};
  const auto s3 = s3_tilde_homology(unknot);
  const Bigraded expected = {{{Rational(0), Rational(0)}, 1}};
  t.check(s3.extraction_exact && s3.hfk_hat[0] == expected,
          "2x2 unknot HFK-hat " + poincare_string(s3.hfk_hat[0]));
  t.finish(r, std::to_string(corpus.size()) + " diagrams + 2x2 unknot");
}

void structural_counts(CriterionResult& r, const AcceptanceOptions&) {
  Tally counts, windows, duality;
  std::uint64_t width_congruent = 0, pairs = 0;
  for (int p = 2; p <= 5; ++p) {
    for (int q : valid_q_values(p)) {
      if (q < 0) continue;  // same torus as q + p
      for (int n = 1; n <= 3; ++n) {
        const Torus torus{p, q, n};
        const GeneratorSpace space(p, n);
        std::set<Generator> seen;
        bool roundtrip = true;
        for (std::uint64_t k = 0; k < space.size(); ++k) {
          const Generator x = space.unrank(k);
          roundtrip = roundtrip && x.is_valid(p) && space.rank(x) == k;
          seen.insert(x);
          const auto wins = first_wrap_windows(x, torus);
          windows.check(wins.size() == static_cast<std::size_t>(n * (n - 1)),
                        "L(" + std::to_string(p) + "," + std::to_string(q) + ") " + to_string(x) +
                            ": " + std::to_string(wins.size()) + " candidates");
          for (const auto& w1 : wins) {
            if (w1.row_i > w1.row_j) continue;
            for (const auto& w2 : wins) {
              if (w2.row_i != w1.row_j || w2.row_j != w1.row_i) continue;
              ++pairs;
              const std::int64_t np = torus.width();
              if ((w1.w + w2.w - static_cast<std::int64_t>(n) * q) % np == 0) ++width_congruent;
              duality.check(w1.w + w2.w == np && w1.h + w2.h == n,
                            "L(" + std::to_string(p) + "," + std::to_string(q) + ") n=" +
                                std::to_string(n) + " " + to_string(x) + " rows {" +
                                std::to_string(w1.row_i) + "," + std::to_string(w1.row_j) +
                                "}: w1+w2 = " + std::to_string(w1.w + w2.w) + ", np = " +
                                std::to_string(np) + ", h1+h2 = " + std::to_string(w1.h + w2.h));
            }
          }
        }
        counts.check(roundtrip && seen.size() == GeneratorSpace::count(p, n),
                     "L(" + std::to_string(p) + "," + std::to_string(q) + ") n=" + std::to_string(n) +
                         ": " + std::to_string(seen.size()) + " generators");
      }
    }
  }
  r.passed = counts.failed == 0 && windows.failed == 0 && duality.failed == 0;
  std::ostringstream os;
  os << "generator count " << (counts.failed ? "FAIL" : "ok") << " (" << counts.checked << " spaces); "
     << "n(n-1) candidates " << (windows.failed ? "FAIL" : "ok") << " (" << windows.checked
     << " generators); w1+w2=np, h1+h2=n " << (duality.failed ? "FAIL" : "ok") << " (" << duality.failed
     << "/" << duality.checked << " pairs fail";
  if (duality.failed) os << "; first: " << duality.first;
  os << "; w1+w2 = nq mod np on " << width_congruent << "/" << pairs << ")";
  r.detail = os.str();
}

void determinism(CriterionResult& r, const AcceptanceOptions& opt) {
  Tally t;
  auto corpus = acceptance_corpus(opt);
  std::vector<GridDiagram> sample;
  for (std::size_t k = 0; k < corpus.size(); k += 7) sample.push_back(corpus[k]);
  for (const auto& d : sample) {
    HomologyOptions low, high, serial;
    low.pivot = PivotOrder::LowestBit;
    high.pivot = PivotOrder::HighestBit;
    serial.parallel = false;
    auto render = [&](const HomologyOptions& h) {
      const auto table = lens_tilde_homology(d, h);
      return homology_json(d, table, simplicity_report(table, d.lens.p)).dump();
    };
    const std::string a = render(low), b = render(low), c = render(high), e = render(serial);
    t.check(a == b && a == c && a == e, label(d) + ": structured output differs");
    const auto mt = MarkedTorus::from(d);
    t.check(build_boundary(mt, BoundaryVariant::Minus) == build_boundary_serial(mt, BoundaryVariant::Minus),
            label(d) + ": parallel and serial boundaries differ");
  }
  t.finish(r, std::to_string(sample.size()) + " diagrams, repeated runs and both pivot orders");
}

using Runner = void (*)(CriterionResult&, const AcceptanceOptions&);

struct Entry {
  const char* name;
  Runner run;
};

const Entry kEntries[kCriterionCount] = {
    {"d-invariant anchors", d_anchors},
    {"absolute grading anchors", absolute_anchors},
    {"cover relations", cover_relations},
    {"boundary squares to zero", square_zero},
    {"grading drops on differential terms", grading_drops},
    {"Alexander symmetry under O/X swap", alexander_symmetry},
    {"grid-number-one knots are simple", simple_knots},
    {"HFK-hat extraction", extraction},
    {"structural counts", structural_counts},
    {"determinism", determinism},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = kEntries[id - 1].name;
  const auto start = std::chrono::steady_clock::now();
  try {
    kEntries[id - 1].run(r, opt);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail << " ("
     << std::fixed;
  os.precision(2);
  os << r.seconds << "s)";
  return os.str();
}

}  // namespace lensgrid
