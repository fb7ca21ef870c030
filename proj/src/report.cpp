#include "lensgrid/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <tuple>

namespace lensgrid {

std::string diagram_hash(const GridDiagram& d) { return hex_hash(content_hash(format_grid(d))); }

Json diagram_json(const GridDiagram& diagram) {
  const GridDiagram d = diagram.canonical();
  Json j;
  j["p"] = d.lens.p;
  j["q"] = d.lens.q;
  j["n"] = d.n;
  Json o = Json::array(), x = Json::array();
  for (const auto& c : d.O) o.push_back(c.s);
  for (const auto& c : d.X) x.push_back(c.s);
  j["O"] = o;
  j["X"] = x;
  j["hash"] = diagram_hash(d);
  return j;
}

Json link_json(const LinkStructure& ls) {
  Json j;
  j["components"] = ls.component_count;
  j["homology_class"] = ls.homology_class;
  j["homology_class_note"] = "up to the identification of H_1 with Z_p";
  j["order"] = ls.order;
  return j;
}

Json violations_json(const std::vector<Violation>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back({{"kind", to_string(x.kind)}, {"message", x.message}});
  return arr;
}

std::vector<GradingRow> grading_rows(const GradingContext& ctx, std::uint64_t cap) {
  GeneratorSpace space(ctx.diagram().lens.p, ctx.diagram().n);
  space.require_within(cap);
  const auto gens = space.all();
  const auto grades = grade_all(ctx, gens);
  std::vector<GradingRow> rows;
  rows.reserve(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) rows.push_back({gens[k], grades[k]});
  std::sort(rows.begin(), rows.end(), [](const GradingRow& a, const GradingRow& b) {
    return std::tie(a.g.S, a.g.A, a.g.M, a.x) < std::tie(b.g.S, b.g.A, b.g.M, b.x);
  });
  return rows;
}

Json gradings_json(const GridDiagram& d, const std::vector<GradingRow>& rows) {
  Json j;
  j["diagram"] = diagram_json(d);
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"generator", to_string(r.x)},
                   {"S", r.g.S},
                   {"M", to_string(r.g.M)},
                   {"A", to_string(r.g.A)}});
  }
  j["gradings"] = arr;
  return j;
}

std::string gradings_text(const std::vector<GradingRow>& rows) {
  std::size_t wx = 9, wm = 1;
  for (const auto& r : rows) {
    wx = std::max(wx, to_string(r.x).size());
    wm = std::max(wm, to_string(r.g.M).size());
  }
  std::ostringstream os;
  os << std::left << std::setw(wx) << "generator" << "  S  " << std::setw(wm) << "M" << "  " << "A\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(wx) << to_string(r.x) << "  " << std::setw(3) << r.g.S
       << std::setw(wm) << to_string(r.g.M) << "  " << to_string(r.g.A) << '\n';
  }
  return os.str();
}

Json bigraded_json(const Bigraded& ranks) {
  Json arr = Json::array();
  for (const auto& [key, r] : ranks)
    arr.push_back({{"M", to_string(key.first)}, {"A", to_string(key.second)}, {"rank", r}});
  return arr;
}

Json homology_json(const GridDiagram& d, const HomologyTable& t, const SimplicityReport& s) {
  Json j;
  j["diagram"] = diagram_json(d);
  Json classes = Json::array();
  for (int c = 0; c < t.spin_c_count; ++c) {
    classes.push_back({{"spin_c", c},
                       {"tilde", bigraded_json(t.tilde[c])},
                       {"hfk_hat", bigraded_json(t.hfk_hat[c])},
                       {"hfk_hat_rank", t.hfk_rank(c)}});
  }
  j["spin_c"] = classes;
  j["tilde_rank"] = t.tilde_rank();
  j["hfk_hat_rank"] = t.hfk_rank();
  j["extraction_exact"] = t.extraction_exact;
  if (!t.diagnostic.empty()) j["diagnostic"] = t.diagnostic;
  j["classification"] = to_string(s.kind);
  return j;
}

std::string homology_text(const HomologyTable& t, const SimplicityReport& s) {
  std::ostringstream os;
  for (int c = 0; c < t.spin_c_count; ++c) {
    os << "Spin^c " << c << '\n';
    os << "  tilde:   " << poincare_string(t.tilde[c]) << '\n';
    os << "  HFK-hat: " << poincare_string(t.hfk_hat[c]) << '\n';
    os << "  " << std::left << std::setw(10) << "M" << std::setw(10) << "A" << "rank\n";
    for (const auto& [key, r] : t.hfk_hat[c]) {
      os << "  " << std::left << std::setw(10) << to_string(key.first) << std::setw(10)
         << to_string(key.second) << r << '\n';
    }
  }
  os << "tilde rank " << t.tilde_rank() << ", HFK-hat rank " << t.hfk_rank()
     << (t.extraction_exact ? "" : " (extraction inexact: " + t.diagnostic + ")") << '\n';
  os << "classification: " << to_string(s.kind) << '\n';
  return os.str();
}

Json cover_json(const GridDiagram& d, const CoverReport& rep) {
  Json j;
  j["diagram"] = diagram_json(d);
  j["lifted_components"] = rep.lifted_components;
  j["order"] = rep.order;
  j["order_matches_lift"] = rep.order_matches_lift;
  j["xO"] = {{"lifted_maslov", rep.xO_lifted_maslov},
             {"maslov", to_string(rep.xO_maslov)},
             {"anchors_ok", rep.anchors_ok}};
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row = {{"generator", to_string(r.x)},
                {"S", r.lens.S},
                {"M", to_string(r.lens.M)},
                {"lifted_maslov", r.lifted_maslov},
                {"absolute_ok", r.absolute_ok}};
    row["A"] = to_string(r.lens.A);
    row["lifted_alexander"] = to_string(r.lifted_alexander);
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["violations"] = rep.violations;
  j["ok"] = rep.ok();
  return j;
}

std::string cover_text(const CoverReport& rep) {
  std::ostringstream os;
  os << "lift: " << rep.lifted_components << " component(s), order " << rep.order
     << (rep.order_matches_lift ? " (consistent)" : " (MISMATCH)") << '\n';
  os << "x_O: lifted M = " << rep.xO_lifted_maslov << ", M = " << to_string(rep.xO_maslov)
     << (rep.anchors_ok ? "" : "  ANCHOR VIOLATION") << '\n';
  os << rep.rows.size() << " generators checked, " << rep.violations.size() << " violation(s)\n";
  for (const auto& v : rep.violations) os << "  " << v << '\n';
  return os.str();
}

}  // namespace lensgrid
