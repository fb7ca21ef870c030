#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lensgrid/acceptance.hpp"
#include "lensgrid/complex.hpp"
#include "lensgrid/cover.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/grid.hpp"
#include "lensgrid/homology.hpp"
#include "lensgrid/report.hpp"
#include "lensgrid/s3_oracle.hpp"

using namespace lensgrid;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kSize = 2, kInvariant = 3 };

struct Config {
  std::string input;
  std::string format = "human";
  std::uint64_t cap = kDefaultGeneratorCap;
  std::uint64_t piece_cap = kDefaultPieceCap;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  std::string variant = "tilde";
  std::string pivot = "low";
  std::string output;
  bool swap_roles = false;
  bool debug_orientation = false;
  bool mutate_d = false;
  int criterion = 0;
  int p = 0;
  int q = 0;
  int random_per_lens = AcceptanceOptions{}.random_per_lens;
};

bool json_out(const Config& c) { return c.format == "json"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One token on the first content line means the square S^3 format.
bool looks_like_s3(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tok;
    int count = 0;
    while (ls >> tok) ++count;
    if (count) return count == 1;
  }
  return false;
}

GridDiagram load_lens(const Config& c) {
  const std::string text = read_file(c.input);
  if (looks_like_s3(text)) throw std::runtime_error("'" + c.input + "' is an S3 grid; expected a lens grid");
  return parse_grid(text);
}

void emit(const Config& c, const Json& j, const std::string& human) {
  if (json_out(c))
    std::cout << j.dump(2) << '\n';
  else
    std::cout << human;
}

int cmd_validate(const Config& c) {
  const std::string text = read_file(c.input);
  Json j;
  std::ostringstream os;
  bool ok;
  if (looks_like_s3(text)) {
    const auto d = parse_s3_grid(text);
    const auto v = validate_s3(d);
    ok = v.empty();
    j = {{"format", "s3"}, {"valid", ok}, {"violations", v}};
    for (const auto& s : v) os << "error: " << s << '\n';
  } else {
    const auto d = parse_grid(text);
    const auto v = validate(d);
    ok = v.empty();
    j = {{"format", "lens"}, {"valid", ok}, {"violations", violations_json(v)}};
    if (ok) j["hash"] = diagram_hash(d);
    for (const auto& x : v) os << "error [" << to_string(x.kind) << "]: " << x.message << '\n';
  }
  if (ok) os << "valid\n";
  emit(c, j, os.str());
  return ok ? kOk : kInvalid;
}

int cmd_info(const Config& c) {
  const GridDiagram d = load_lens(c);
  require_valid(d);
  const LinkStructure ls = reconstruct_link(d);
  const std::uint64_t gens = GeneratorSpace::count(d.lens.p, d.n);
  Json j = {{"diagram", diagram_json(d)}, {"link", link_json(ls)}, {"generators", gens}};
  std::ostringstream os;
  os << "L(" << d.lens.p << "," << d.lens.q << "), grid number " << d.n << ", hash " << diagram_hash(d) << '\n'
     << ls.component_count << " component(s); class " << ls.homology_class
     << " in Z_" << d.lens.p << " (up to the identification of H_1 with Z_p), order " << ls.order << '\n'
     << gens << " generators (n!*p^n)\n";
  emit(c, j, os.str());
  return kOk;
}

int cmd_gradings(const Config& c) {
  GridDiagram d = load_lens(c);
  if (c.swap_roles) d = d.swapped();
  const GradingContext ctx(d);
  const auto rows = grading_rows(ctx, c.cap);
  Json j = gradings_json(d, rows);
  j["swap_roles"] = c.swap_roles;
  emit(c, j, gradings_text(rows));
  return kOk;
}

HomologyOptions homology_options(const Config& c) {
  HomologyOptions h;
  h.pivot = c.pivot == "high" ? PivotOrder::HighestBit : PivotOrder::LowestBit;
  h.piece_cap = c.piece_cap;
  return h;
}

int run_symbolic(const Config& c, const GridDiagram& d, BoundaryVariant v) {
  BuildOptions bopt;
  bopt.cap = c.cap;
  bopt.debug_orientation = c.debug_orientation;
  const auto b = build_boundary(d, v, bopt);
  const auto sq = check_square_zero(b);
  std::ostringstream lines;
  export_boundary(b, lines);
  if (json_out(c)) {
    Json terms = Json::array();
    std::istringstream in(lines.str());
    for (std::string l; std::getline(in, l);) terms.push_back(l);
    Json j = {{"diagram", diagram_json(d)},
              {"variant", to_string(v)},
              {"terms", terms},
              {"d_squared_zero", sq.zero}};
    if (!sq.zero) j["d_squared_failure"] = sq.first_failure;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << lines.str() << "# d^2 = 0: " << (sq.zero ? "yes" : "NO (" + sq.first_failure + ")") << '\n';
  }
  return sq.zero ? kOk : kInvariant;
}

int cmd_homology(const Config& c) {
  const std::string text = read_file(c.input);
  if (looks_like_s3(text)) {
    const auto d = parse_s3_grid(text);
    const auto table = s3_tilde_homology(d, c.cap, homology_options(c));
    const auto simple = simplicity_report(table, 1);
    Json j = {{"s3_grid", format_s3_grid(d)},
              {"tilde", bigraded_json(table.tilde[0])},
              {"hfk_hat", bigraded_json(table.hfk_hat[0])},
              {"extraction_exact", table.extraction_exact}};
    emit(c, j, homology_text(table, simple));
    return kOk;
  }
  const GridDiagram d = parse_grid(text);
  require_valid(d);
  const BoundaryVariant v = parse_variant(c.variant);
  if (v == BoundaryVariant::Hat || v == BoundaryVariant::Minus) return run_symbolic(c, d, v);

  const GradingContext ctx(d);
  BuildOptions bopt;
  bopt.cap = c.cap;
  bopt.debug_orientation = c.debug_orientation;
  Json extra;
  if (v == BoundaryVariant::AssocGraded) {
    const auto assoc = build_boundary(d, v, bopt);
    const auto sq = check_square_zero(assoc);
    const auto drops = check_grading_drops(d, ctx, bopt);
    extra = {{"assoc_graded_terms", assoc.term_count()},
             {"d_squared_zero", sq.zero},
             {"grading_drops_ok", drops.ok()}};
    if (!sq.zero || !drops.ok()) {
      std::cerr << "invariant violation: " << (sq.zero ? drops.first_failure : sq.first_failure) << '\n';
      return kInvariant;
    }
  }
  const auto tilde = build_boundary(d, BoundaryVariant::Tilde, bopt);
  const auto sq = check_square_zero(tilde);
  if (!sq.zero) {
    std::cerr << "invariant violation: " << sq.first_failure << '\n';
    return kInvariant;
  }
  const GeneratorSpace space(d.lens.p, d.n);
  const auto grades = grade_all(ctx, space.all());
  const auto table = tilde_homology(tilde, grades, d.lens.p, d.n, homology_options(c));
  if (auto e = euler_characteristic_mismatch(table, grades); !e.empty()) {
    std::cerr << "invariant violation: " << e << '\n';
    return kInvariant;
  }
  const auto simple = simplicity_report(table, d.lens.p);
  if (table.extraction_exact && !simple.rank_at_least_p) {
    std::cerr << "invariant violation: HFK-hat rank " << simple.rank << " below p\n";
    return kInvariant;
  }
  Json j = homology_json(d, table, simple);
  j["variant"] = to_string(v);
  if (!extra.is_null()) j["assoc_graded"] = extra;
  std::string human = homology_text(table, simple);
  if (!extra.is_null())
    human = "assoc-graded boundary: " + std::to_string(extra["assoc_graded_terms"].get<std::uint64_t>()) +
            " terms, d^2 = 0, gradings compatible\n" + human;
  emit(c, j, human);
  return kOk;
}

int cmd_lift(const Config& c) {
  const GridDiagram d = load_lens(c);
  const S3GridDiagram s3 = lift_diagram(d);
  const std::string text = format_s3_grid(s3);
  if (!c.output.empty()) {
    std::ofstream out(c.output);
    if (!out) throw std::runtime_error("cannot write '" + c.output + "'");
    out << text;
  }
  if (json_out(c)) {
    const auto part = basepoint_partition(s3);
    std::cout << Json{{"diagram", diagram_json(d)}, {"N", s3.N}, {"O", s3.O_col}, {"X", s3.X_col},
                      {"components", part.components}}
                     .dump(2)
              << '\n';
  } else if (c.output.empty()) {
    std::cout << text;
  }
  return kOk;
}

int cmd_verify_cover(const Config& c) {
  const GridDiagram d = load_lens(c);
  const auto rep = verify_cover_relations(d, c.cap);
  emit(c, cover_json(d, rep), cover_text(rep));
  return rep.ok() ? kOk : kInvariant;
}

int cmd_enumerate(const Config& c) {
  const LensParams lens{c.p, c.q};
  const auto diagrams = enumerate_grid_number_one(lens);
  for (const auto& d : diagrams) require_valid(d);
  Json arr = Json::array();
  std::ostringstream os;
  for (std::size_t j = 0; j < diagrams.size(); ++j) {
    const auto& d = diagrams[j];
    const LinkStructure ls = reconstruct_link(d);
    arr.push_back({{"diagram", diagram_json(d)}, {"link", link_json(ls)}});
    os << "# X at s = " << j << ", order " << ls.order << '\n' << format_grid(d);
    if (!c.output.empty()) {
      std::filesystem::create_directories(c.output);
      std::ofstream out(std::filesystem::path(c.output) /
                        ("L" + std::to_string(c.p) + "_" + std::to_string(c.q) + "_gn1_" + std::to_string(j) +
                         ".grid"));
      out << format_grid(d);
    }
  }
  emit(c, arr, os.str());
  return kOk;
}

int cmd_boundary_export(const Config& c) {
  const GridDiagram d = load_lens(c);
  require_valid(d);
  return run_symbolic(c, d, parse_variant(c.variant));
}

int cmd_selftest(const Config& c) {
  testing_hooks::set_d_mutation(c.mutate_d);
  AcceptanceOptions opt;
  opt.seed = c.seed;
  opt.random_per_lens = c.random_per_lens;
  std::vector<CriterionResult> results;
  if (c.criterion)
    results.push_back(run_criterion(c.criterion, opt));
  else
    results = run_acceptance(opt);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    if (!json_out(c)) std::cout << format_result(r) << std::endl;
  }
  if (json_out(c))
    std::cout << Json{{"criteria", arr}, {"passed", all}}.dump(2) << '\n';
  else
    std::cout << (all ? "selftest: all criteria pass\n" : "selftest: FAILURES\n");
  return all ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lensgrid: knot Floer homology from twisted toroidal grid diagrams"};
  app.require_subcommand(1);
  Config c;

  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--cap", c.cap, "Generator cap (n!*p^n)")->check(CLI::PositiveNumber);
  app.add_option("--piece-cap", c.piece_cap, "Generators per graded piece")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed for randomized corpora");

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "Grid file")->required();
    return sub;
  };
  auto* validate_cmd = with_input(app.add_subcommand("validate", "Check grid diagram invariants"));
  auto* info_cmd = with_input(app.add_subcommand("info", "Link structure and sizes"));
  auto* gradings_cmd = with_input(app.add_subcommand("gradings", "S, M, A for every generator"));
  gradings_cmd->add_flag("--swap-roles", c.swap_roles, "Exchange O and X");
  auto* homology_cmd = with_input(app.add_subcommand("homology", "Bigraded homology and HFK-hat"));
  homology_cmd->add_option("--variant", c.variant)
      ->check(CLI::IsMember({"tilde", "assoc-graded", "hat", "minus-export"}));
  homology_cmd->add_option("--pivot", c.pivot, "Elimination pivot order")->check(CLI::IsMember({"low", "high"}));
  homology_cmd->add_flag("--debug-orientation", c.debug_orientation, "Use the opposite corner convention");
  auto* lift_cmd = with_input(app.add_subcommand("lift", "Lift to the universal cover S3 grid"));
  lift_cmd->add_option("-o,--output", c.output, "Write the S3 grid here");
  auto* cover_cmd = with_input(app.add_subcommand("verify-cover", "Check gradings against the S3 lift"));
  auto* enum_cmd = app.add_subcommand("enumerate-gn1", "Grid-number-one knots in L(p,q)");
  enum_cmd->add_option("p", c.p)->required();
  enum_cmd->add_option("q", c.q)->required();
  enum_cmd->add_option("-o,--output-dir", c.output, "Write one grid file per knot");
  auto* export_cmd = with_input(app.add_subcommand("boundary-export", "Symbolic boundary, one term per line"));
  export_cmd->add_option("--variant", c.variant)->check(CLI::IsMember({"tilde", "assoc-graded", "hat", "minus"}));
  export_cmd->add_flag("--debug-orientation", c.debug_orientation, "Use the opposite corner convention");
  auto* self_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
  self_cmd->add_option("--criterion", c.criterion, "Run a single criterion")->check(CLI::Range(1, kCriterionCount));
  self_cmd->add_option("--random-per-lens", c.random_per_lens, "Random n=2 knots per lens space");
  self_cmd->add_flag("--mutate-d", c.mutate_d)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return cmd_validate(c);
    if (*info_cmd) return cmd_info(c);
    if (*gradings_cmd) return cmd_gradings(c);
    if (*homology_cmd) return cmd_homology(c);
    if (*lift_cmd) return cmd_lift(c);
    if (*cover_cmd) return cmd_verify_cover(c);
    if (*enum_cmd) return cmd_enumerate(c);
    if (*export_cmd) return cmd_boundary_export(c);
    if (*self_cmd) return cmd_selftest(c);
  } catch (const SizeError& e) {
    std::cerr << "size refusal: " << e.what() << '\n';
    return kSize;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const ParseError& e) {
    std::cerr << c.input << ": " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
