#include "lensgrid/grid.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace lensgrid {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

void Torus::reduce(std::int64_t& s, std::int64_t& t) const {
  const std::int64_t wraps = floor_div(t, n);
  s -= wraps * n * q;
  t -= wraps * n;
  s = mod(s, width());
}

ShearedPoint cell_to_sheared(Cell cell, CellAnchor anchor) {
  ShearedPoint pt = ShearedPoint::lattice(cell.s, cell.t);
  if (anchor == CellAnchor::Center) {
    pt.s2 += 1;
    pt.t2 += 1;
  }
  return pt;
}

GridDiagram GridDiagram::from_columns(LensParams lens, const std::vector<int>& o_s,
                                      const std::vector<int>& x_s) {
  GridDiagram d;
  d.lens = lens;
  d.n = static_cast<int>(o_s.size());
  for (int t = 0; t < static_cast<int>(o_s.size()); ++t) d.O.push_back({o_s[t], t});
  for (int t = 0; t < static_cast<int>(x_s.size()); ++t) d.X.push_back({x_s[t], t});
  return d;
}

GridDiagram GridDiagram::canonical() const {
  GridDiagram d = *this;
  auto by_row = [](const Cell& a, const Cell& b) { return a.t < b.t; };
  std::stable_sort(d.O.begin(), d.O.end(), by_row);
  std::stable_sort(d.X.begin(), d.X.end(), by_row);
  return d;
}

GridDiagram GridDiagram::swapped() const {
  GridDiagram d = *this;
  std::swap(d.O, d.X);
  return d;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ParameterRange: return "parameter-range";
    case ViolationKind::GcdFailure: return "gcd-failure";
    case ViolationKind::SizeMismatch: return "size-mismatch";
    case ViolationKind::CellRange: return "range";
    case ViolationKind::RowCollision: return "row-collision";
    case ViolationKind::ColumnCollision: return "column-collision";
  }
  return "unknown";
}

namespace {

void check_markers(const GridDiagram& d, const std::vector<Cell>& cells, const char* name,
                   std::vector<Violation>& out) {
  const int n = d.n;
  const int width = d.lens.p * n;
  if (static_cast<int>(cells.size()) != n) {
    out.push_back({ViolationKind::SizeMismatch, std::string(name) + " has " +
                                                    std::to_string(cells.size()) +
                                                    " markers, expected n = " + std::to_string(n)});
    return;
  }
  bool in_range = true;
  for (int k = 0; k < n; ++k) {
    const Cell& c = cells[k];
    if (c.s < 0 || c.s >= width || c.t < 0 || c.t >= n) {
      in_range = false;
      out.push_back({ViolationKind::CellRange,
                     std::string(name) + "[" + std::to_string(k) + "] = (" + std::to_string(c.s) +
                         "," + std::to_string(c.t) + ") outside [0," + std::to_string(width) +
                         ") x [0," + std::to_string(n) + ")"});
    }
  }
  if (!in_range) return;

  std::vector<std::vector<int>> by_row(n), by_col(n);
  for (int k = 0; k < n; ++k) {
    by_row[cells[k].t].push_back(k);
    by_col[cells[k].s % n].push_back(k);
  }
  auto list = [](const std::vector<int>& idx) {
    std::string s;
    for (int i : idx) s += (s.empty() ? "" : ",") + std::to_string(i);
    return s;
  };
  for (int r = 0; r < n; ++r) {
    if (by_row[r].size() > 1)
      out.push_back({ViolationKind::RowCollision, std::string(name) + " markers " +
                                                      list(by_row[r]) + " share row " +
                                                      std::to_string(r)});
  }
  for (int c = 0; c < n; ++c) {
    if (by_col[c].size() > 1) {
      std::string rows;
      for (int k : by_col[c]) rows += (rows.empty() ? "" : ",") + std::to_string(cells[k].t);
      out.push_back({ViolationKind::ColumnCollision, std::string(name) + " markers in rows " +
                                                         rows + " share column " +
                                                         std::to_string(c)});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const GridDiagram& d) {
  std::vector<Violation> out;
  const int p = d.lens.p;
  const int q = d.lens.q;
  if (p < 2) {
    out.push_back({ViolationKind::ParameterRange, "p = " + std::to_string(p) + " must be >= 2"});
  }
  if (q == 0 || q <= -p || q >= p) {
    out.push_back({ViolationKind::ParameterRange,
                   "q = " + std::to_string(q) + " must satisfy -p < q < p, q != 0"});
  }
  if (p >= 1 && q != 0 && std::gcd(p, q < 0 ? -q : q) != 1) {
    out.push_back({ViolationKind::GcdFailure, "gcd(" + std::to_string(p) + "," +
                                                  std::to_string(q < 0 ? -q : q) + ") = " +
                                                  std::to_string(std::gcd(p, q < 0 ? -q : q))});
  }
  if (d.n < 1) {
    out.push_back({ViolationKind::ParameterRange, "grid number n must be positive"});
    return out;
  }
  if (p < 1) return out;
  check_markers(d, d.O, "O", out);
  check_markers(d, d.X, "X", out);
  return out;
}

namespace {

std::string summarize(const std::vector<Violation>& v) {
  std::string s = "invalid grid diagram:";
  for (const auto& x : v) s += " [" + to_string(x.kind) + "] " + x.message + ";";
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

void require_valid(const GridDiagram& diagram) {
  auto v = validate(diagram);
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::int64_t Generator::s_of(int row) const {
  const int n = size();
  return sigma[row] + static_cast<std::int64_t>(n) * a[row];
}

ShearedPoint Generator::component(int row) const { return ShearedPoint::lattice(s_of(row), row); }

std::vector<ShearedPoint> Generator::components() const {
  std::vector<ShearedPoint> pts;
  pts.reserve(sigma.size());
  for (int i = 0; i < size(); ++i) pts.push_back(component(i));
  return pts;
}

bool Generator::is_valid(int p) const {
  const int n = size();
  if (static_cast<int>(a.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (sigma[i] < 0 || sigma[i] >= n || seen[sigma[i]]) return false;
    seen[sigma[i]] = 1;
    if (a[i] < 0 || a[i] >= p) return false;
  }
  return true;
}

Generator Generator::from_s_coordinates(const std::vector<std::int64_t>& s_by_row, int n) {
  Generator g;
  g.sigma.resize(n);
  g.a.resize(n);
  for (int i = 0; i < n; ++i) {
    g.sigma[i] = static_cast<int>(s_by_row[i] % n);
    g.a[i] = static_cast<int>(s_by_row[i] / n);
  }
  return g;
}

std::string to_string(const Generator& x) {
  std::string s = "[";
  for (int i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x.sigma[i]);
  s += "|";
  for (int i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x.a[i]);
  return s + "]";
}

Generator canonical_generator_xO(const GridDiagram& diagram) {
  require_valid(diagram);
  const GridDiagram d = diagram.canonical();
  std::vector<std::int64_t> s(d.n);
  for (int t = 0; t < d.n; ++t) s[t] = d.O[t].s;
  return Generator::from_s_coordinates(s, d.n);
}

std::vector<int> link_components_by_row(const std::vector<int>& o_col,
                                        const std::vector<int>& x_col, int& component_count) {
  const int n = static_cast<int>(o_col.size());
  std::vector<int> row_of_o_col(n);
  for (int t = 0; t < n; ++t) row_of_o_col[o_col[t]] = t;
  std::vector<int> comp(n, -1);
  component_count = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    // X[t] -> O[t] along the row, then O -> X along the column; following X
    // to the O sharing its column walks the same cycle.
    int t = start;
    while (comp[t] < 0) {
      comp[t] = component_count;
      t = row_of_o_col[x_col[t]];
    }
    ++component_count;
  }
  return comp;
}

LinkStructure reconstruct_link(const GridDiagram& diagram) {
  require_valid(diagram);
  const GridDiagram d = diagram.canonical();
  const int n = d.n;
  const int p = d.lens.p;
  const std::int64_t q = d.lens.q_normalized();
  const std::int64_t np = static_cast<std::int64_t>(n) * p;

  std::vector<int> o_col(n), x_col(n);
  for (int t = 0; t < n; ++t) {
    o_col[t] = d.O[t].s % n;
    x_col[t] = d.X[t].s % n;
  }
  LinkStructure ls;
  ls.component_of_row = link_components_by_row(o_col, x_col, ls.component_count);

  std::vector<int> x_in_col(n);
  for (int t = 0; t < n; ++t) x_in_col[x_col[t]] = t;

  std::int64_t total = 0;
  for (int t = 0; t < n; ++t) {
    const Cell o = d.O[t];
    const Cell x = d.X[x_in_col[o.s % n]];
    int k = 0;
    for (; k < p; ++k) {
      if (mod(o.s - k * n * q - x.s, np) == 0) break;
    }
    total += mod(x.t + static_cast<std::int64_t>(k) * n - o.t, np);
  }
  ls.homology_class = static_cast<int>(mod(total / n, p));
  ls.order = p / std::gcd(ls.homology_class, p);
  return ls;
}

std::vector<GridDiagram> enumerate_grid_number_one(LensParams lens) {
  std::vector<GridDiagram> out;
  for (int j = 0; j < lens.p; ++j) out.push_back(GridDiagram::from_columns(lens, {0}, {j}));
  return out;
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

int to_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

std::vector<int> marker_line(const Line& line, const std::string& label, int expected) {
  if (line.tokens.empty() || line.tokens[0] != label)
    throw ParseError(line.number, "expected '" + label + "' line");
  std::vector<int> vals;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) vals.push_back(to_int(line.tokens[i], line.number));
  if (static_cast<int>(vals.size()) != expected)
    throw ParseError(line.number, label + " lists " + std::to_string(vals.size()) +
                                      " values, expected " + std::to_string(expected));
  return vals;
}

}  // namespace

GridDiagram parse_grid(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.size() < 3) throw ParseError(lines.empty() ? 1 : lines.back().number, "expected 3 lines");
  if (lines.size() > 3) throw ParseError(lines[3].number, "unexpected trailing content");
  const Line& head = lines[0];
  if (head.tokens.size() != 3) throw ParseError(head.number, "header must be 'p q n'");
  LensParams lens{to_int(head.tokens[0], head.number), to_int(head.tokens[1], head.number)};
  const int n = to_int(head.tokens[2], head.number);
  if (n < 1 || n > 64) throw ParseError(head.number, "grid number out of range");
  auto o = marker_line(lines[1], "O:", n);
  auto x = marker_line(lines[2], "X:", n);
  return GridDiagram::from_columns(lens, o, x);
}

GridDiagram parse_grid(const std::string& text) {
  std::istringstream ss(text);
  return parse_grid(ss);
}

std::string format_grid(const GridDiagram& diagram) {
  const GridDiagram d = diagram.canonical();
  std::ostringstream os;
  os << d.lens.p << ' ' << d.lens.q << ' ' << d.n << "\nO:";
  for (const auto& c : d.O) os << ' ' << c.s;
  os << "\nX:";
  for (const auto& c : d.X) os << ' ' << c.s;
  os << '\n';
  return os.str();
}

std::uint64_t content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex_hash(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

}  // namespace lensgrid
