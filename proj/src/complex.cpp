#include "lensgrid/complex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>

namespace lensgrid {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

GeneratorSpace::GeneratorSpace(int p, int n) : p_(p), n_(n), size_(count(p, n)), p_pow_n_(1) {
  if (p < 1 || n < 1) throw std::invalid_argument("generator space needs p, n >= 1");
  for (int i = 0; i < n; ++i) p_pow_n_ = sat_mul(p_pow_n_, p);
}

std::uint64_t GeneratorSpace::count(int p, int n) {
  std::uint64_t c = 1;
  for (int i = 2; i <= n; ++i) c = sat_mul(c, i);
  for (int i = 0; i < n; ++i) c = sat_mul(c, p);
  return c;
}

void GeneratorSpace::require_within(std::uint64_t cap) const {
  if (size_ > cap) {
    throw SizeError("refusing " + std::to_string(size_) + " generators (n!*p^n with n=" +
                        std::to_string(n_) + ", p=" + std::to_string(p_) + ") above cap " +
                        std::to_string(cap),
                    size_);
  }
}

std::uint64_t GeneratorSpace::rank(const Generator& x) const {
  // Lehmer code of sigma, then a read as base-p digits.
  std::uint64_t perm_rank = 0;
  std::vector<char> used(n_, 0);
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int v = 0; v < x.sigma[i]; ++v) smaller += !used[v];
    used[x.sigma[i]] = 1;
    perm_rank = perm_rank * (n_ - i) + smaller;
  }
  std::uint64_t a_rank = 0;
  for (int i = 0; i < n_; ++i) a_rank = a_rank * p_ + x.a[i];
  return perm_rank * p_pow_n_ + a_rank;
}

Generator GeneratorSpace::unrank(std::uint64_t r) const {
  Generator x;
  x.sigma.resize(n_);
  x.a.resize(n_);
  std::uint64_t a_rank = r % p_pow_n_;
  std::uint64_t perm_rank = r / p_pow_n_;
  for (int i = n_ - 1; i >= 0; --i) {
    x.a[i] = static_cast<int>(a_rank % p_);
    a_rank /= p_;
  }
  std::vector<int> digits(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    const int base = n_ - i;
    digits[i] = static_cast<int>(perm_rank % base);
    perm_rank /= base;
  }
  std::vector<int> pool(n_);
  for (int v = 0; v < n_; ++v) pool[v] = v;
  for (int i = 0; i < n_; ++i) {
    x.sigma[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return x;
}

std::vector<Generator> GeneratorSpace::all() const {
  std::vector<Generator> out;
  out.reserve(size_);
  for (std::uint64_t r = 0; r < size_; ++r) out.push_back(unrank(r));
  return out;
}

MarkedTorus MarkedTorus::from(const GridDiagram& diagram) {
  require_valid(diagram);
  const GridDiagram d = diagram.canonical();
  MarkedTorus mt;
  mt.torus = d.torus();
  for (const auto& c : d.O) mt.O.push_back(cell_to_sheared(c, CellAnchor::Center));
  for (const auto& c : d.X) mt.X.push_back(cell_to_sheared(c, CellAnchor::Center));
  return mt;
}

MarkedTorus MarkedTorus::from_s3(const S3GridDiagram& diagram) {
  require_valid_s3(diagram);
  MarkedTorus mt;
  mt.torus = {1, 0, diagram.N};
  mt.O = s3_centers(diagram.O_col);
  mt.X = s3_centers(diagram.X_col);
  return mt;
}

Generator s3_as_generator(const S3Generator& x) {
  Generator g;
  g.sigma = x.col_of_row;
  g.a.assign(x.col_of_row.size(), 0);
  return g;
}

S3Generator generator_as_s3(const Generator& x) { return {x.sigma}; }

namespace {

void collect_windows(const Generator& x, const Torus& torus, bool first_only,
                     std::vector<Window>& out) {
  const int n = x.size();
  const std::int64_t width = torus.width();
  const std::int64_t height = static_cast<std::int64_t>(torus.p) * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int first = j > i ? 0 : 1;
      const int last = first_only ? first : torus.p;
      for (int b = first; b <= last; ++b) {
        const std::int64_t h = j - i + static_cast<std::int64_t>(b) * n;
        if (h <= 0 || h >= height) continue;
        Window win;
        win.row_i = i;
        win.row_j = j;
        win.wrap = b;
        win.s0 = x.s_of(i);
        win.t0 = i;
        win.h = h;
        win.w = mod(x.s_of(j) + static_cast<std::int64_t>(b) * n * torus.q - x.s_of(i), width);
        if (win.w == 0) continue;
        out.push_back(win);
      }
    }
  }
}

}  // namespace

std::vector<Window> first_wrap_windows(const Generator& x, const Torus& torus) {
  std::vector<Window> out;
  collect_windows(x, torus, true, out);
  return out;
}

std::vector<Window> all_windows(const Generator& x, const Torus& torus) {
  std::vector<Window> out;
  collect_windows(x, torus, false, out);
  return out;
}

bool window_embedded(const Window& win, const Torus& torus) {
  // A nonzero lattice vector (a*np + c*nq, c*n) with |dx| < w and |dy| < h
  // would identify two interior points.
  const std::int64_t np = torus.width();
  for (std::int64_t c = 1; c * torus.n < win.h; ++c) {
    const std::int64_t r = mod(c * torus.n * torus.q, np);
    if (std::min(r, np - r) < win.w) return false;
  }
  return true;
}

int interior_count(const ShearedPoint& pt, const Window& win, const Torus& torus) {
  const std::int64_t n2 = 2 * static_cast<std::int64_t>(torus.n);
  const std::int64_t np2 = 2 * static_cast<std::int64_t>(torus.width());
  const std::int64_t s0 = 2 * win.s0, t0 = 2 * win.t0;
  int count = 0;
  for (std::int64_t c = 0; c <= torus.p + 1; ++c) {
    const std::int64_t t = pt.t2 + c * n2;
    if (t <= t0 || t >= t0 + 2 * win.h) continue;
    const std::int64_t r = mod(pt.s2 + c * n2 * torus.q - s0, np2);
    if (r > 0 && r < 2 * win.w) ++count;
  }
  return count;
}

int Parallelogram::n_O() const {
  int s = 0;
  for (int v : o_counts) s += v;
  return s;
}

int Parallelogram::n_X() const {
  int s = 0;
  for (int v : x_counts) s += v;
  return s;
}

std::vector<Parallelogram> rectangles_from(const Generator& x, const MarkedTorus& mt) {
  const Torus& torus = mt.torus;
  const int n = x.size();
  const auto pts = x.components();
  std::vector<Parallelogram> out;
  for (const Window& win : all_windows(x, torus)) {
    if (!window_embedded(win, torus)) continue;
    bool empty = true;
    for (int k = 0; k < n && empty; ++k) empty = interior_count(pts[k], win, torus) == 0;
    if (!empty) continue;

    std::vector<std::int64_t> s(n);
    for (int k = 0; k < n; ++k) s[k] = x.s_of(k);
    std::int64_t si = win.s0 + win.w, ti = win.t0;
    torus.reduce(si, ti);
    std::int64_t sj = win.s0, tj = win.t0 + win.h;
    torus.reduce(sj, tj);
    s[win.row_i] = si;
    s[win.row_j] = sj;

    Parallelogram P;
    P.from = x;
    P.to = Generator::from_s_coordinates(s, n);
    P.window = win;
    P.o_counts.resize(mt.O.size());
    P.x_counts.resize(mt.X.size());
    for (std::size_t k = 0; k < mt.O.size(); ++k) P.o_counts[k] = interior_count(mt.O[k], win, torus);
    for (std::size_t k = 0; k < mt.X.size(); ++k) P.x_counts[k] = interior_count(mt.X[k], win, torus);
    out.push_back(std::move(P));
  }
  return out;
}

std::string to_string(BoundaryVariant v) {
  switch (v) {
    case BoundaryVariant::Tilde: return "tilde";
    case BoundaryVariant::AssocGraded: return "assoc-graded";
    case BoundaryVariant::Minus: return "minus";
    case BoundaryVariant::Hat: return "hat";
  }
  return "?";
}

BoundaryVariant parse_variant(const std::string& s) {
  if (s == "tilde") return BoundaryVariant::Tilde;
  if (s == "assoc-graded") return BoundaryVariant::AssocGraded;
  if (s == "minus" || s == "minus-export") return BoundaryVariant::Minus;
  if (s == "hat") return BoundaryVariant::Hat;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

bool keeps_term(BoundaryVariant v, const Parallelogram& P) {
  switch (v) {
    case BoundaryVariant::Tilde: return P.n_O() == 0 && P.n_X() == 0;
    case BoundaryVariant::AssocGraded: return P.n_X() == 0;
    case BoundaryVariant::Minus: return true;
    case BoundaryVariant::Hat: return P.o_counts.empty() || P.o_counts[0] == 0;
  }
  return false;
}

std::uint64_t SparseBoundary::term_count() const {
  std::uint64_t c = 0;
  for (const auto& t : terms) c += t.size();
  return c;
}

namespace {

std::vector<Term> terms_from(const Generator& x, const MarkedTorus& mt, BoundaryVariant v,
                             const GeneratorSpace& space) {
  std::map<Term, int> acc;
  for (const auto& P : rectangles_from(x, mt)) {
    if (!keeps_term(v, P)) continue;
    Term t;
    t.target = space.rank(P.to);
    if (v == BoundaryVariant::Tilde)
      t.exponents.assign(P.o_counts.size(), 0);
    else
      t.exponents = P.o_counts;
    acc[t] ^= 1;
  }
  std::vector<Term> out;
  for (auto& [t, c] : acc)
    if (c) out.push_back(t);
  return out;
}

void transpose(SparseBoundary& b) {
  std::vector<std::vector<Term>> flipped(b.terms.size());
  for (std::uint64_t src = 0; src < b.terms.size(); ++src) {
    for (const auto& t : b.terms[src]) flipped[t.target].push_back({src, t.exponents});
  }
  for (auto& list : flipped) std::sort(list.begin(), list.end());
  b.terms = std::move(flipped);
  b.transposed = true;
}

SparseBoundary make_shell(const MarkedTorus& mt, BoundaryVariant v, const GeneratorSpace& space) {
  SparseBoundary b;
  b.variant = v;
  b.p = mt.torus.p;
  b.n = mt.torus.n;
  b.terms.resize(space.size());
  return b;
}

}  // namespace

SparseBoundary build_boundary_serial(const MarkedTorus& mt, BoundaryVariant v, const BuildOptions& opt) {
  GeneratorSpace space(mt.torus.p, mt.torus.n);
  space.require_within(opt.cap);
  SparseBoundary b = make_shell(mt, v, space);
  for (std::uint64_t r = 0; r < space.size(); ++r) b.terms[r] = terms_from(space.unrank(r), mt, v, space);
  if (opt.debug_orientation) transpose(b);
  return b;
}

SparseBoundary build_boundary(const MarkedTorus& mt, BoundaryVariant v, const BuildOptions& opt) {
  GeneratorSpace space(mt.torus.p, mt.torus.n);
  space.require_within(opt.cap);
  SparseBoundary b = make_shell(mt, v, space);
  const auto count = static_cast<std::int64_t>(space.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t r = 0; r < count; ++r) b.terms[r] = terms_from(space.unrank(r), mt, v, space);
  if (opt.debug_orientation) transpose(b);
  return b;
}

SparseBoundary build_boundary(const GridDiagram& d, BoundaryVariant v, const BuildOptions& opt) {
  return build_boundary(MarkedTorus::from(d), v, opt);
}

SquareCheck check_square_zero(const SparseBoundary& b) {
  SquareCheck out;
  for (std::uint64_t src = 0; src < b.terms.size(); ++src) {
    std::map<Term, int> acc;
    for (const auto& t1 : b.terms[src]) {
      for (const auto& t2 : b.terms[t1.target]) {
        Term t{t2.target, t1.exponents};
        for (std::size_t k = 0; k < t.exponents.size(); ++k) t.exponents[k] += t2.exponents[k];
        acc[t] ^= 1;
      }
    }
    for (const auto& [t, c] : acc) {
      if (!c) continue;
      ++out.nonzero_entries;
      if (out.zero) {
        out.zero = false;
        out.first_failure = "d^2 of generator #" + std::to_string(src) + " hits #" +
                            std::to_string(t.target);
      }
    }
  }
  return out;
}

GradingDropCheck check_grading_drops(const GridDiagram& d, const GradingContext& ctx,
                                     const BuildOptions& opt) {
  const MarkedTorus mt = MarkedTorus::from(d);
  GeneratorSpace space(mt.torus.p, mt.torus.n);
  space.require_within(opt.cap);
  GradingDropCheck out;
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    const Generator x = space.unrank(r);
    for (const auto& P : rectangles_from(x, mt)) {
      const Generator& src = opt.debug_orientation ? P.to : P.from;
      const Generator& dst = opt.debug_orientation ? P.from : P.to;
      ++out.terms_checked;
      const int nO = P.n_O(), nX = P.n_X();
      const Rational dMO = ctx.maslov(src, BasepointRole::O) - ctx.maslov(dst, BasepointRole::O);
      const Rational dMX = ctx.maslov(src, BasepointRole::X) - ctx.maslov(dst, BasepointRole::X);
      std::string bad;
      if (ctx.spin_c(src) != ctx.spin_c(dst)) bad = "S changes";
      else if (dMO != Rational(1 - 2 * nO)) bad = "M_O drop " + to_string(dMO);
      else if (dMX != Rational(1 - 2 * nX)) bad = "M_X drop " + to_string(dMX);
      else if (ctx.is_knot() && ctx.alexander(src) - ctx.alexander(dst) != Rational(nX - nO))
        bad = "A drop " + to_string(ctx.alexander(src) - ctx.alexander(dst));
      if (!bad.empty()) {
        if (out.violations++ == 0)
          out.first_failure = to_string(src) + " -> " + to_string(dst) + ": " + bad + " (n_O=" +
                              std::to_string(nO) + ", n_X=" + std::to_string(nX) + ")";
      }
    }
  }
  return out;
}

void export_boundary(const SparseBoundary& b, std::ostream& os) {
  GeneratorSpace space(b.p, b.n);
  for (std::uint64_t src = 0; src < b.terms.size(); ++src) {
    const std::string from = to_string(space.unrank(src));
    for (const auto& t : b.terms[src]) {
      os << from << " -> " << to_string(space.unrank(t.target));
      for (std::size_t k = 0; k < t.exponents.size(); ++k) os << " U" << k << '^' << t.exponents[k];
      os << '\n';
    }
  }
}

}  // namespace lensgrid
