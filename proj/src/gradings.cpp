#include "lensgrid/gradings.hpp"

#include <atomic>

#include "lensgrid/cover.hpp"

namespace lensgrid {

std::int64_t count_I(const std::vector<ShearedPoint>& A, const std::vector<ShearedPoint>& B) {
  std::int64_t count = 0;
  for (const auto& a : A)
    for (const auto& b : B)
      if (a.s2 < b.s2 && a.t2 < b.t2) ++count;
  return count;
}

FormalPointSum FormalPointSum::of(const std::vector<ShearedPoint>& pts, std::int64_t coeff) {
  FormalPointSum f;
  f.add(pts, coeff);
  return f;
}

FormalPointSum& FormalPointSum::add(const std::vector<ShearedPoint>& pts, std::int64_t coeff) {
  for (const auto& p : pts) terms.emplace_back(coeff, p);
  return *this;
}

Rational count_J(const FormalPointSum& A, const FormalPointSum& B) {
  std::int64_t twice = 0;
  for (const auto& [ca, a] : A.terms) {
    for (const auto& [cb, b] : B.terms) {
      const int both = (a.s2 < b.s2 && a.t2 < b.t2) + (b.s2 < a.s2 && b.t2 < a.t2);
      twice += ca * cb * both;
    }
  }
  return Rational(twice, 2);
}

Rational count_J(const std::vector<ShearedPoint>& A, const std::vector<ShearedPoint>& B) {
  return count_J(FormalPointSum::of(A), FormalPointSum::of(B));
}

namespace {
std::atomic<bool> g_d_mutation{false};
}

namespace testing_hooks {
void set_d_mutation(bool on) { g_d_mutation.store(on); }
bool d_mutation() { return g_d_mutation.load(); }
}  // namespace testing_hooks

Rational d_invariant(int p, int q, int i) {
  if (p == 1 && q == 0 && i == 0) return Rational(0);
  if (!(0 < q && q < p) || i < 0 || i >= p)
    throw std::invalid_argument("d(" + std::to_string(p) + "," + std::to_string(q) + "," +
                                std::to_string(i) + ") outside 0 < q < p, 0 <= i < p");
  const std::int64_t pq = static_cast<std::int64_t>(p) * q;
  const std::int64_t k = 2 * i + 1 - p - q;
  Rational head(pq - k * k, 4 * pq);
  if (g_d_mutation.load()) head = -head;
  return head - d_invariant(q, p % q, i % q);
}

NotAKnotError::NotAKnotError(int components)
    : std::runtime_error("Alexander grading is defined for knots only; diagram has " +
                         std::to_string(components) + " components") {}

namespace {

std::vector<ShearedPoint> centers(const std::vector<Cell>& cells) {
  std::vector<ShearedPoint> pts;
  for (const auto& c : cells) pts.push_back(cell_to_sheared(c, CellAnchor::Center));
  return pts;
}

}  // namespace

GradingContext::GradingContext(const GridDiagram& diagram) {
  require_valid(diagram);
  diagram_ = diagram.canonical();
  torus_ = diagram_.torus();
  components_ = reconstruct_link(diagram_).component_count;
  const Generator xO = canonical_generator_xO(diagram_);
  for (int v : xO.a) xO_sum_ += v;
  const int p = torus_.p;
  shift_ = d_invariant(p, torus_.q, torus_.q - 1) + Rational(p - 1, p);
  lifted_O_ = lift_points(centers(diagram_.O), torus_);
  lifted_X_ = lift_points(centers(diagram_.X), torus_);
  I_OO_ = count_I(lifted_O_, lifted_O_);
  I_XX_ = count_I(lifted_X_, lifted_X_);
}

int GradingContext::spin_c(const Generator& x) const {
  const int p = torus_.p;
  std::int64_t s = torus_.q - 1 - xO_sum_;
  for (int v : x.a) s += v;
  return static_cast<int>(((s % p) + p) % p);
}

std::int64_t GradingContext::maslov_raw(const Generator& x, BasepointRole role) const {
  const auto xt = lift_points(x.components(), torus_);
  const auto& B = role == BasepointRole::O ? lifted_O_ : lifted_X_;
  const std::int64_t IBB = role == BasepointRole::O ? I_OO_ : I_XX_;
  return count_I(xt, xt) - count_I(xt, B) - count_I(B, xt) + IBB + 1;
}

Rational GradingContext::maslov(const Generator& x, BasepointRole role) const {
  return Rational(maslov_raw(x, role), torus_.p) + shift_;
}

void GradingContext::require_knot() const {
  if (components_ != 1) throw NotAKnotError(components_);
}

Rational GradingContext::alexander(const Generator& x) const {
  require_knot();
  return (maslov(x, BasepointRole::O) - maslov(x, BasepointRole::X) - (diagram_.n - 1)) / 2;
}

Rational GradingContext::alexander_swapped(const Generator& x) const {
  require_knot();
  return (maslov(x, BasepointRole::X) - maslov(x, BasepointRole::O) - (diagram_.n - 1)) / 2;
}

GradingTriple GradingContext::grade(const Generator& x) const {
  require_knot();
  const Rational mo = maslov(x, BasepointRole::O);
  const Rational mx = maslov(x, BasepointRole::X);
  return {spin_c(x), mo, (mo - mx - (diagram_.n - 1)) / 2};
}

int grading_S(const Generator& x, const GridDiagram& diagram) {
  return GradingContext(diagram).spin_c(x);
}

Rational grading_M(const Generator& x, const GridDiagram& diagram, BasepointRole role) {
  return GradingContext(diagram).maslov(x, role);
}

Rational grading_A(const Generator& x, const GridDiagram& diagram) {
  return GradingContext(diagram).alexander(x);
}

GradingTriple grade_monomial(const GradingTriple& base, const std::vector<int>& exponents) {
  GradingTriple g = base;
  for (int e : exponents) {
    g.M -= 2 * e;
    g.A -= e;
  }
  return g;
}

GradingTriple grade_homogeneous(const std::vector<GradingTriple>& term_gradings) {
  if (term_gradings.empty()) throw InhomogeneousError("empty sum has no grading");
  for (const auto& g : term_gradings) {
    if (!(g == term_gradings.front()))
      throw InhomogeneousError("terms carry different (S, M, A) gradings");
  }
  return term_gradings.front();
}

std::vector<GradingTriple> grade_all_serial(const GradingContext& ctx,
                                            const std::vector<Generator>& gens) {
  std::vector<GradingTriple> out;
  out.reserve(gens.size());
  for (const auto& x : gens) out.push_back(ctx.grade(x));
  return out;
}

std::vector<GradingTriple> grade_all(const GradingContext& ctx, const std::vector<Generator>& gens) {
  // Exceptions cannot leave the parallel region, so surface NotAKnotError here.
  ctx.grade(gens.empty() ? canonical_generator_xO(ctx.diagram()) : gens.front());
  std::vector<GradingTriple> out(gens.size());
  const auto count = static_cast<std::int64_t>(gens.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) out[k] = ctx.grade(gens[k]);
  return out;
}

}  // namespace lensgrid
