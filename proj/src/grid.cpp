#include "gridhfl/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace gridhfl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::ProductNotOne: return "ProductNotOne";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::ProjectionViolation: return "ProjectionViolation";
    case ErrorKind::DSquaredNonzero: return "DSquaredNonzero";
  }
  return "Unknown";
}

int LinkComponent::min_col() const { return *std::min_element(cols.begin(), cols.end()); }

long Domain::total() const {
  long sum = 0;
  for (int v : coeff) sum += v;
  return sum;
}

Domain& Domain::operator+=(const Domain& other) {
  for (size_t i = 0; i < coeff.size(); ++i) coeff[i] += other.coeff[i];
  return *this;
}

Domain& Domain::operator-=(const Domain& other) {
  for (size_t i = 0; i < coeff.size(); ++i) coeff[i] -= other.coeff[i];
  return *this;
}

namespace {

std::vector<int> inverse_of(const std::vector<int>& cols, char label) {
  const int n = static_cast<int>(cols.size());
  std::vector<int> inv(n, -1);
  for (int r = 0; r < n; ++r) {
    const int c = cols[r];
    if (c < 0 || c >= n) {
      throw Error(ErrorKind::BadIndex, std::string(1, label) + " column " + std::to_string(c + 1) +
                                           " outside 1.." + std::to_string(n));
    }
    if (inv[c] != -1) {
      throw Error(ErrorKind::NotAPermutation, "column " + std::to_string(c + 1) + " holds two " +
                                                  std::string(1, label) + " markings");
    }
    inv[c] = r;
  }
  return inv;
}

}  // namespace

GridDiagram::GridDiagram(std::vector<int> x_col, std::vector<int> o_col)
    : n_(static_cast<int>(x_col.size())), x_col_(std::move(x_col)), o_col_(std::move(o_col)) {
  if (n_ == 0) throw Error(ErrorKind::SyntaxError, "grid index must be positive");
  if (static_cast<int>(o_col_.size()) != n_) {
    throw Error(ErrorKind::SyntaxError, "X and O rows have different lengths");
  }
  x_row_ = inverse_of(x_col_, 'X');
  o_row_ = inverse_of(o_col_, 'O');
  derive_components();
}

// Row arcs join X to O inside a row, column arcs join O to X inside a column.
// Starting from the lowest unvisited row keeps component ids ordered by their
// smallest row.
void GridDiagram::derive_components() {
  row_component_.assign(n_, -1);
  for (int start = 0; start < n_; ++start) {
    if (row_component_[start] != -1) continue;
    LinkComponent comp;
    comp.id = static_cast<int>(components_.size()) + 1;
    int row = start;
    do {
      row_component_[row] = comp.id - 1;
      comp.rows.push_back(row);
      row = x_row_[o_col_[row]];
    } while (row != start);
    std::sort(comp.rows.begin(), comp.rows.end());
    for (int r : comp.rows) comp.cols.push_back(x_col_[r]);
    components_.push_back(std::move(comp));
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<long> parse_ints(std::string_view s, std::string_view what) {
  std::vector<long> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    if (i == s.size()) break;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, value);
    if (ec != std::errc() || ptr != s.data() + j) {
      throw Error(ErrorKind::SyntaxError,
                  "expected integer in " + std::string(what) + ", got '" + std::string(s.substr(i, j - i)) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

GridDiagram parse_grid(std::string_view text) {
  std::optional<long> n;
  std::optional<std::vector<long>> xs, os;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find_first_of("\n;", pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "expected 'KEY = values', got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view rhs = line.substr(eq + 1);
    if (key == "N" || key == "n") {
      if (n) throw Error(ErrorKind::SyntaxError, "duplicate N directive");
      auto v = parse_ints(rhs, "N");
      if (v.size() != 1) throw Error(ErrorKind::SyntaxError, "N takes exactly one integer");
      n = v[0];
    } else if (key == "X" || key == "x") {
      if (xs) throw Error(ErrorKind::SyntaxError, "duplicate X directive");
      xs = parse_ints(rhs, "X");
    } else if (key == "O" || key == "o") {
      if (os) throw Error(ErrorKind::SyntaxError, "duplicate O directive");
      os = parse_ints(rhs, "O");
    } else {
      throw Error(ErrorKind::SyntaxError, "unknown directive '" + std::string(key) + "'");
    }
  }

  if (!n || !xs || !os) throw Error(ErrorKind::SyntaxError, "grid needs N, X and O directives");
  if (*n <= 0) throw Error(ErrorKind::SyntaxError, "N must be positive");
  if (static_cast<long>(xs->size()) != *n || static_cast<long>(os->size()) != *n) {
    throw Error(ErrorKind::SyntaxError, "X and O must each list exactly N columns");
  }

  auto to_zero_based = [&](const std::vector<long>& v, char label) {
    std::vector<int> out;
    out.reserve(v.size());
    for (long c : v) {
      if (c < 1 || c > *n) {
        throw Error(ErrorKind::BadIndex, std::string(1, label) + " column " + std::to_string(c) +
                                             " outside 1.." + std::to_string(*n));
      }
      out.push_back(static_cast<int>(c - 1));
    }
    return out;
  };
  return GridDiagram(to_zero_based(*xs, 'X'), to_zero_based(*os, 'O'));
}

GridDiagram load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot open grid file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_grid(buf.str());
}

std::string to_grid_text(const GridDiagram& g) {
  std::ostringstream out;
  out << "N = " << g.n() << "\nX =";
  for (int c : g.x_cols()) out << ' ' << c + 1;
  out << "\nO =";
  for (int c : g.o_cols()) out << ' ' << c + 1;
  out << '\n';
  return out.str();
}

std::string to_grid_json(const GridDiagram& g) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = g.n();
  ordered_json xs = ordered_json::array(), os = ordered_json::array();
  for (int c : g.x_cols()) xs.push_back(c + 1);
  for (int c : g.o_cols()) os.push_back(c + 1);
  j["x"] = xs;
  j["o"] = os;
  ordered_json comps = ordered_json::array();
  for (const auto& comp : g.components()) {
    ordered_json cj;
    cj["id"] = comp.id;
    ordered_json rows = ordered_json::array(), cols = ordered_json::array();
    for (int r : comp.rows) rows.push_back(r + 1);
    for (int c : comp.cols) cols.push_back(c + 1);
    cj["rows"] = rows;
    cj["cols"] = cols;
    cj["m"] = comp.m();
    comps.push_back(cj);
  }
  j["components"] = comps;
  return j.dump();
}

std::string grid_hash(const GridDiagram& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_grid_json(g)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Domain annulus_region(const GridDiagram& g, Annulus kind, int i) {
  if (i < 1 || i > g.n()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "annulus index " + std::to_string(i) + " outside 1.." + std::to_string(g.n()));
  }
  Domain d(g.n());
  for (int k = 0; k < g.n(); ++k) {
    if (kind == Annulus::Horizontal) {
      d.at(i - 1, k) = 1;
    } else {
      d.at(k, i - 1) = 1;
    }
  }
  return d;
}

}  // namespace gridhfl
