#include "lensgrid/cover.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

namespace lensgrid {

bool S3Generator::is_bijection() const {
  std::vector<char> seen(col_of_row.size(), 0);
  for (int c : col_of_row) {
    if (c < 0 || c >= size() || seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

std::vector<std::string> validate_s3(const S3GridDiagram& d) {
  std::vector<std::string> out;
  if (d.N < 1) {
    out.push_back("grid size N must be positive");
    return out;
  }
  auto check = [&](const std::vector<int>& cols, const char* name) {
    if (static_cast<int>(cols.size()) != d.N) {
      out.push_back(std::string(name) + " has " + std::to_string(cols.size()) + " entries, expected " +
                    std::to_string(d.N));
      return;
    }
    std::vector<int> row_of(d.N, -1);
    for (int r = 0; r < d.N; ++r) {
      const int c = cols[r];
      if (c < 0 || c >= d.N) {
        out.push_back(std::string(name) + " in row " + std::to_string(r) + " has column " +
                      std::to_string(c) + " outside [0," + std::to_string(d.N) + ")");
      } else if (row_of[c] >= 0) {
        out.push_back(std::string(name) + " markers in rows " + std::to_string(row_of[c]) + "," +
                      std::to_string(r) + " share column " + std::to_string(c));
      } else {
        row_of[c] = r;
      }
    }
  };
  check(d.O_col, "O");
  check(d.X_col, "X");
  return out;
}

void require_valid_s3(const S3GridDiagram& diagram) {
  auto v = validate_s3(diagram);
  if (v.empty()) return;
  std::string msg = "invalid S3 grid diagram:";
  for (const auto& s : v) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

std::vector<ShearedPoint> lift_points(const std::vector<ShearedPoint>& points, const Torus& torus) {
  const std::int64_t n = torus.n;
  const std::int64_t width2 = 2 * n * torus.p;
  std::vector<ShearedPoint> out;
  out.reserve(points.size() * torus.p);
  for (const auto& pt : points) {
    if (pt.s2 < 0 || pt.s2 >= width2 || pt.t2 < 0 || pt.t2 >= 2 * n)
      throw std::out_of_range("lift input (" + to_string(pt.s()) + "," + to_string(pt.t()) +
                              ") outside the fundamental domain");
    for (std::int64_t k = 0; k < torus.p; ++k) {
      out.push_back({(pt.s2 + 2 * n * torus.q * k) % width2, pt.t2 + 2 * n * k});
    }
  }
  return out;
}

namespace {

std::vector<int> lift_cells(const std::vector<Cell>& cells, const Torus& torus) {
  std::vector<ShearedPoint> corners;
  for (const auto& c : cells) corners.push_back(cell_to_sheared(c, CellAnchor::Corner));
  std::vector<int> col_of_row(static_cast<std::size_t>(torus.width()), -1);
  for (const auto& pt : lift_points(corners, torus)) {
    col_of_row[pt.t2 / 2] = static_cast<int>(pt.s2 / 2);
  }
  return col_of_row;
}

}  // namespace

S3GridDiagram lift_diagram(const GridDiagram& diagram) {
  require_valid(diagram);
  const Torus torus = diagram.torus();
  S3GridDiagram out;
  out.N = torus.width();
  out.O_col = lift_cells(diagram.O, torus);
  out.X_col = lift_cells(diagram.X, torus);
  return out;
}

S3Generator lift_generator(const Generator& x, const GridDiagram& diagram) {
  const Torus torus = diagram.torus();
  S3Generator out;
  out.col_of_row.assign(static_cast<std::size_t>(torus.width()), -1);
  for (const auto& pt : lift_points(x.components(), torus)) {
    out.col_of_row[pt.t2 / 2] = static_cast<int>(pt.s2 / 2);
  }
  if (!out.is_bijection()) throw std::logic_error("lifted generator is not a bijection");
  return out;
}

std::vector<ShearedPoint> s3_points(const S3Generator& x) {
  std::vector<ShearedPoint> pts;
  pts.reserve(x.col_of_row.size());
  for (int r = 0; r < x.size(); ++r) pts.push_back(ShearedPoint::lattice(x.col_of_row[r], r));
  return pts;
}

std::vector<ShearedPoint> s3_centers(const std::vector<int>& col_of_row) {
  std::vector<ShearedPoint> pts;
  pts.reserve(col_of_row.size());
  for (int r = 0; r < static_cast<int>(col_of_row.size()); ++r)
    pts.push_back(cell_to_sheared({col_of_row[r], r}, CellAnchor::Center));
  return pts;
}

S3GridDiagram parse_s3_grid(std::istream& in) {
  std::string raw;
  int number = 0;
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (!toks.empty()) lines.emplace_back(number, std::move(toks));
  }
  if (lines.size() != 3)
    throw ParseError(lines.empty() ? 1 : lines.back().first, "expected 3 non-comment lines");
  auto to_int = [](const std::string& tok, int line) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  };
  S3GridDiagram d;
  if (lines[0].second.size() != 1) throw ParseError(lines[0].first, "header must be 'N'");
  d.N = to_int(lines[0].second[0], lines[0].first);
  if (d.N < 1 || d.N > 4096) throw ParseError(lines[0].first, "grid size out of range");
  auto read = [&](const auto& line, const char* label) {
    if (line.second[0] != label) throw ParseError(line.first, std::string("expected '") + label + "' line");
    std::vector<int> vals;
    for (std::size_t i = 1; i < line.second.size(); ++i) vals.push_back(to_int(line.second[i], line.first));
    if (static_cast<int>(vals.size()) != d.N)
      throw ParseError(line.first, std::string(label) + " lists " + std::to_string(vals.size()) +
                                       " values, expected " + std::to_string(d.N));
    return vals;
  };
  d.O_col = read(lines[1], "O:");
  d.X_col = read(lines[2], "X:");
  return d;
}

S3GridDiagram parse_s3_grid(const std::string& text) {
  std::istringstream ss(text);
  return parse_s3_grid(ss);
}

std::string format_s3_grid(const S3GridDiagram& d) {
  std::ostringstream os;
  os << d.N << "\nO:";
  for (int c : d.O_col) os << ' ' << c;
  os << "\nX:";
  for (int c : d.X_col) os << ' ' << c;
  os << '\n';
  return os.str();
}

}  // namespace lensgrid
