#include "lensgrid/homology.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <unordered_map>

namespace lensgrid {

std::size_t f2_rank(std::vector<BitRow> rows, PivotOrder order) {
  // pivot bit -> reduced row owning it
  std::unordered_map<std::size_t, BitRow> pivots;
  auto lead = [order](const BitRow& r) -> long {
    if (order == PivotOrder::LowestBit) {
      for (std::size_t w = 0; w < r.size(); ++w)
        if (r[w]) return static_cast<long>(w * 64 + std::countr_zero(r[w]));
    } else {
      for (std::size_t w = r.size(); w-- > 0;)
        if (r[w]) return static_cast<long>(w * 64 + 63 - std::countl_zero(r[w]));
    }
    return -1;
  };
  for (auto& row : rows) {
    for (long b = lead(row); b >= 0; b = lead(row)) {
      auto it = pivots.find(static_cast<std::size_t>(b));
      if (it == pivots.end()) {
        pivots.emplace(static_cast<std::size_t>(b), std::move(row));
        break;
      }
      const BitRow& p = it->second;
      for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= p[w];
    }
  }
  return pivots.size();
}

std::vector<GradedPiece> split_by_gradings(const std::vector<GradingTriple>& gradings) {
  std::map<std::tuple<int, Rational, Rational>, std::vector<std::uint64_t>> groups;
  for (std::uint64_t r = 0; r < gradings.size(); ++r) {
    const auto& g = gradings[r];
    groups[{g.S, g.A, g.M}].push_back(r);
  }
  std::vector<GradedPiece> out;
  for (auto& [key, basis] : groups) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::move(basis)});
  }
  return out;
}

std::uint64_t HomologyTable::tilde_rank() const {
  std::uint64_t s = 0;
  for (const auto& t : tilde)
    for (const auto& [k, r] : t) s += r;
  return s;
}

std::uint64_t HomologyTable::hfk_rank() const {
  std::uint64_t s = 0;
  for (int c = 0; c < spin_c_count; ++c) s += hfk_rank(c);
  return s;
}

std::uint64_t HomologyTable::hfk_rank(int spin_c) const {
  std::uint64_t s = 0;
  for (const auto& [k, r] : hfk_hat[spin_c]) s += r;
  return s;
}

std::map<Rational, std::uint64_t> homology_ranks(const SparseBoundary& tilde,
                                                 const std::vector<GradingTriple>& gradings,
                                                 const std::vector<std::uint64_t>& members,
                                                 const HomologyOptions& opt) {
  // Position of each member within its M level.
  std::map<Rational, std::vector<std::uint64_t>> levels;
  for (auto r : members) levels[gradings[r].M].push_back(r);
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (auto& [m, gens] : levels) {
    if (gens.size() > opt.piece_cap)
      throw SizeError("graded piece of " + std::to_string(gens.size()) + " generators above cap " +
                          std::to_string(opt.piece_cap),
                      gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) slot[gens[k]] = k;
  }
  const GradingTriple& key = gradings[members.front()];

  std::map<Rational, std::size_t> rank_d;  // rank of d leaving level M
  for (auto& [m, gens] : levels) {
    auto below = levels.find(m - 1);
    const std::size_t cols = below == levels.end() ? 0 : below->second.size();
    std::vector<BitRow> rows;
    rows.reserve(gens.size());
    for (auto r : gens) {
      BitRow row((cols + 63) / 64, 0);
      for (const auto& t : tilde.terms[r]) {
        const auto& g = gradings[t.target];
        if (g.S != key.S || g.A != key.A || g.M != m - 1)
          throw InvariantError("tilde differential does not drop (S,A,M) by (0,0,1)");
        const std::size_t c = slot.at(t.target);
        row[c / 64] ^= std::uint64_t{1} << (c % 64);
      }
      rows.push_back(std::move(row));
    }
    rank_d[m] = cols == 0 ? 0 : f2_rank(std::move(rows), opt.pivot);
  }
  std::map<Rational, std::uint64_t> out;
  for (auto& [m, gens] : levels) {
    auto above = rank_d.find(m + 1);
    const std::size_t in = above == rank_d.end() ? 0 : above->second;
    const std::uint64_t h = gens.size() - rank_d[m] - in;
    if (h) out[m] = h;
  }
  return out;
}

HomologyTable tilde_homology(const SparseBoundary& tilde, const std::vector<GradingTriple>& gradings,
                             int spin_c_count, int n, const HomologyOptions& opt) {
  if (tilde.variant != BoundaryVariant::Tilde)
    throw std::invalid_argument("homology is computed from the tilde boundary only");
  std::map<std::pair<int, Rational>, std::vector<std::uint64_t>> groups;
  for (std::uint64_t r = 0; r < gradings.size(); ++r) groups[{gradings[r].S, gradings[r].A}].push_back(r);
  std::vector<std::pair<std::pair<int, Rational>, std::vector<std::uint64_t>>> work(groups.begin(),
                                                                                   groups.end());
  std::vector<std::map<Rational, std::uint64_t>> results(work.size());

  const auto count = static_cast<std::int64_t>(work.size());
  if (opt.parallel) {
    std::string error;
    bool size_error = false;
    std::uint64_t size_count = 0;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
      try {
        results[k] = homology_ranks(tilde, gradings, work[k].second, opt);
      } catch (const SizeError& e) {
#pragma omp critical
        {
          size_error = true;
          size_count = e.count();
          error = e.what();
        }
      } catch (const std::exception& e) {
#pragma omp critical
        error = e.what();
      }
    }
    if (size_error) throw SizeError(error, size_count);
    if (!error.empty()) throw InvariantError(error);
  } else {
    for (std::int64_t k = 0; k < count; ++k) results[k] = homology_ranks(tilde, gradings, work[k].second, opt);
  }

  HomologyTable table;
  table.spin_c_count = spin_c_count;
  table.n = n;
  table.tilde.resize(spin_c_count);
  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto& [s, a] = work[k].first;
    for (const auto& [m, r] : results[k]) table.tilde[s][{m, a}] += r;
  }
  extract_hfk_hat(table);
  return table;
}

bool divide_by_V(const Bigraded& in, Bigraded& out) {
  // Chains along the diagonal M - A = const, walked downward in M.
  std::map<std::pair<Rational, Rational>, std::map<Rational, std::int64_t>> chains;
  for (const auto& [key, r] : in) {
    const Rational& m = key.first;
    std::int64_t floor = m.numerator() / m.denominator();
    if (m.numerator() % m.denominator() != 0 && m.numerator() < 0) --floor;
    chains[{key.first - key.second, m - floor}][m] = static_cast<std::int64_t>(r);
  }
  out.clear();
  for (const auto& [diag, coeffs] : chains) {
    const Rational top = coeffs.rbegin()->first;
    const Rational bottom = coeffs.begin()->first;
    std::int64_t carry = 0;  // Q(M + 1)
    for (Rational m = top; m >= bottom; m -= 1) {
      auto it = coeffs.find(m);
      const std::int64_t pm = it == coeffs.end() ? 0 : it->second;
      const std::int64_t qm = pm - carry;
      if (qm < 0) return false;
      if (m == bottom) {
        if (qm != 0) return false;
      } else if (qm > 0) {
        out[{m, m - diag.first}] = static_cast<std::uint64_t>(qm);
      }
      carry = qm;
    }
  }
  return true;
}

void extract_hfk_hat(HomologyTable& table) {
  table.hfk_hat = table.tilde;
  table.extraction_exact = true;
  table.diagnostic.clear();
  for (int s = 0; s < table.spin_c_count; ++s) {
    Bigraded cur = table.tilde[s];
    for (int k = 0; k + 1 < table.n; ++k) {
      Bigraded next;
      if (!divide_by_V(cur, next)) {
        table.extraction_exact = false;
        table.hfk_hat = table.tilde;
        table.diagnostic = "Spin^c " + std::to_string(s) + ": Poincare polynomial not divisible by (1+u^-1v^-1)^" +
                           std::to_string(table.n - 1) + " (failed at factor " + std::to_string(k + 1) + ")";
        return;
      }
      cur = std::move(next);
    }
    table.hfk_hat[s] = std::move(cur);
  }
}

std::string to_string(Simplicity s) {
  switch (s) {
    case Simplicity::Simple: return "simple";
    case Simplicity::NearSimple: return "near-simple";
    case Simplicity::Other: return "other";
    case Simplicity::NotExtracted: return "not-extracted";
  }
  return "?";
}

SimplicityReport simplicity_report(const HomologyTable& table, int p) {
  SimplicityReport rep;
  if (!table.extraction_exact) return rep;
  rep.rank = table.hfk_rank();
  rep.rank_at_least_p = rep.rank >= static_cast<std::uint64_t>(p);
  if (rep.rank == static_cast<std::uint64_t>(p))
    rep.kind = Simplicity::Simple;
  else if (rep.rank == static_cast<std::uint64_t>(p) + 2)
    rep.kind = Simplicity::NearSimple;
  else
    rep.kind = Simplicity::Other;
  return rep;
}

std::string euler_characteristic_mismatch(const HomologyTable& table,
                                          const std::vector<GradingTriple>& gradings) {
  std::vector<std::int64_t> chain(table.spin_c_count, 0), hom(table.spin_c_count, 0);
  std::vector<Rational> anchor(table.spin_c_count);
  std::vector<char> have(table.spin_c_count, 0);
  auto sign = [&](int s, const Rational& m) -> std::int64_t {
    if (!have[s]) {
      anchor[s] = m;
      have[s] = 1;
    }
    const Rational diff = m - anchor[s];
    if (!is_integer(diff)) throw InvariantError("non-integral relative Maslov grading");
    return diff.numerator() % 2 == 0 ? 1 : -1;
  };
  for (const auto& g : gradings) chain[g.S] += sign(g.S, g.M);
  for (int s = 0; s < table.spin_c_count; ++s)
    for (const auto& [key, r] : table.tilde[s]) hom[s] += sign(s, key.first) * static_cast<std::int64_t>(r);
  for (int s = 0; s < table.spin_c_count; ++s) {
    if (chain[s] != hom[s])
      return "Spin^c " + std::to_string(s) + ": chain Euler characteristic " + std::to_string(chain[s]) +
             " vs homology " + std::to_string(hom[s]);
  }
  return {};
}

std::string poincare_string(const Bigraded& ranks) {
  std::string s;
  for (auto it = ranks.rbegin(); it != ranks.rend(); ++it) {
    if (!s.empty()) s += " + ";
    if (it->second != 1) s += std::to_string(it->second) + "*";
    s += "u^(" + to_string(it->first.first) + ")v^(" + to_string(it->first.second) + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace lensgrid
