#include "gridhfl/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace gridhfl {

Generator Generator::identity(int n) {
  Generator x;
  x.sigma.resize(n);
  std::iota(x.sigma.begin(), x.sigma.end(), 0);
  return x;
}

std::string Generator::word() const {
  std::string out;
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(sigma[i] + 1);
  }
  return out;
}

GeneratorRange::iterator& GeneratorRange::iterator::operator++() {
  if (!std::next_permutation(current_.sigma.begin(), current_.sigma.end())) done_ = true;
  return *this;
}

namespace {

void check_cap(int n, int cap) {
  if (n > cap) {
    throw Error(ErrorKind::SizeLimit,
                "grid index " + std::to_string(n) + " exceeds the configured cap " + std::to_string(cap));
  }
}

std::uint64_t cell_bit(int n, int r, int c) { return std::uint64_t{1} << (r * n + c); }

std::uint64_t marking_mask(const GridDiagram& g, bool x_markings, int component = -1) {
  std::uint64_t mask = 0;
  for (int r = 0; r < g.n(); ++r) {
    if (component >= 0 && g.component_of_row(r) != component) continue;
    mask |= cell_bit(g.n(), r, x_markings ? g.x_col(r) : g.o_col(r));
  }
  return mask;
}

// Fills geometry for the rectangle with bottom-left corner in row r1 and
// top-right corner in row r2. Returns false when a coordinate of the source
// lies in its interior.
template <class Perm>
bool rect_geometry(const Perm& sigma, int n, int r1, int r2, RectSlot& out) {
  const int c1 = sigma[r1], c2 = sigma[r2];
  const int w = (c2 - c1 + n) % n;
  const int h = (r2 - r1 + n) % n;
  for (int k = 0; k < n; ++k) {
    if (k == r1 || k == r2) continue;
    const int dr = (k - r1 + n) % n;
    const int dc = (static_cast<int>(sigma[k]) - c1 + n) % n;
    if (dr > 0 && dr < h && dc > 0 && dc < w) return false;
  }
  std::uint64_t cells = 0;
  for (int i = 0; i < h; ++i) {
    const int r = (r1 + i) % n;
    for (int j = 0; j < w; ++j) cells |= cell_bit(n, r, (c1 + j) % n);
  }
  out.cells = cells;
  out.row_bl = static_cast<std::uint8_t>(r1);
  out.row_tr = static_cast<std::uint8_t>(r2);
  out.wraps_cols = c2 < c1;
  out.wraps_rows = r2 < r1;
  out.valid = true;
  return true;
}

Rectangle make_rectangle(const GridDiagram& g, const Generator& from, const RectSlot& geo) {
  const int n = g.n();
  Rectangle r;
  r.from = from;
  r.to = from;
  std::swap(r.to.sigma[geo.row_bl], r.to.sigma[geo.row_tr]);
  r.row_bl = geo.row_bl;
  r.row_tr = geo.row_tr;
  r.col_bl = from.sigma[geo.row_bl];
  r.col_tr = from.sigma[geo.row_tr];
  r.width = (r.col_tr - r.col_bl + n) % n;
  r.height = (r.row_tr - r.row_bl + n) % n;
  r.wraps_cols = geo.wraps_cols;
  r.wraps_rows = geo.wraps_rows;
  r.cells = geo.cells;
  r.n_x = std::popcount(geo.cells & marking_mask(g, true));
  r.n_o = std::popcount(geo.cells & marking_mask(g, false));
  for (int i = 0; i < g.num_components(); ++i) {
    r.n_x_comp.push_back(std::popcount(geo.cells & marking_mask(g, true, i)));
    r.n_o_comp.push_back(std::popcount(geo.cells & marking_mask(g, false, i)));
  }
  return r;
}

Domain domain_from_mask(int n, std::uint64_t ones, std::uint64_t twos = 0) {
  Domain d(n);
  for (int b = 0; b < n * n; ++b) {
    const std::uint64_t bit = std::uint64_t{1} << b;
    d.coeff[b] = ((ones & bit) ? 1 : 0) + ((twos & bit) ? 1 : 0);
  }
  return d;
}

}  // namespace

GeneratorRange generators(const GridDiagram& g, int cap) {
  check_cap(g.n(), cap);
  return GeneratorRange(g.n());
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Domain Rectangle::domain() const {
  return domain_from_mask(from.n(), cells);
}

std::string Rectangle::key() const {
  std::ostringstream out;
  out << from.word() << '|' << row_bl + 1 << '.' << row_tr + 1 << '|' << (wraps_cols ? 1 : 0)
      << (wraps_rows ? 1 : 0);
  return out.str();
}

std::vector<Rectangle> rectangles_from(const GridDiagram& g, const Generator& x) {
  const int n = g.n();
  if (n > kMaxMaskedIndex) check_cap(n, kMaxMaskedIndex);
  std::vector<Rectangle> out;
  for (int r1 = 0; r1 < n; ++r1) {
    for (int r2 = 0; r2 < n; ++r2) {
      if (r1 == r2) continue;
      RectSlot geo;
      if (rect_geometry(x.sigma, n, r1, r2, geo)) out.push_back(make_rectangle(g, x, geo));
    }
  }
  return out;
}

std::vector<Rectangle> empty_rectangles_from(const GridDiagram& g, const Generator& x) {
  auto all = rectangles_from(g, x);
  std::erase_if(all, [](const Rectangle& r) { return !r.empty(); });
  return all;
}

namespace {

bool is_annulus(int n, std::uint64_t ones, std::uint64_t twos) {
  if (twos != 0) return false;
  for (int i = 0; i < n; ++i) {
    std::uint64_t row = 0, col = 0;
    for (int k = 0; k < n; ++k) {
      row |= cell_bit(n, i, k);
      col |= cell_bit(n, k, i);
    }
    if (ones == row || ones == col) return true;
  }
  return false;
}

void check_group(int n, bool closed, std::uint64_t ones, std::uint64_t twos, std::size_t size,
                 const std::string& where) {
  if (closed) {
    if (size != 1 || !is_annulus(n, ones, twos)) {
      throw Error(ErrorKind::StructureViolation,
                  "closed index-two domain from " + where + " is not a uniquely decomposed annulus");
    }
  } else if (size != 2) {
    throw Error(ErrorKind::StructureViolation, "index-two domain from " + where + " has " +
                                                   std::to_string(size) + " decompositions, expected 2");
  }
}

}  // namespace

std::vector<Maslov2Group> maslov2_decompositions(const GridDiagram& g, const Generator& x) {
  const int n = g.n();
  struct Entry {
    Generator end;
    std::uint64_t ones, twos;
    Decomposition dec;
  };
  std::vector<Entry> entries;
  for (auto& r1 : rectangles_from(g, x)) {
    for (auto& r2 : rectangles_from(g, r1.to)) {
      entries.push_back({r2.to, r1.cells | r2.cells, r1.cells & r2.cells, {r1, r2}});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.end, a.ones, a.twos) < std::tie(b.end, b.ones, b.twos);
  });
  std::vector<Maslov2Group> groups;
  for (size_t i = 0; i < entries.size();) {
    size_t j = i;
    Maslov2Group group;
    group.end = entries[i].end;
    group.domain = domain_from_mask(n, entries[i].ones, entries[i].twos);
    while (j < entries.size() && entries[j].end == entries[i].end && entries[j].ones == entries[i].ones &&
           entries[j].twos == entries[i].twos) {
      group.decompositions.push_back(entries[j].dec);
      ++j;
    }
    check_group(n, group.end == x, entries[i].ones, entries[i].twos, group.decompositions.size(), x.word());
    groups.push_back(std::move(group));
    i = j;
  }
  return groups;
}

std::vector<Generator> hasse_covers(const GridDiagram& g, const Generator& x) {
  const int n = g.n();
  std::vector<Generator> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int hi = x.sigma[i], lo = x.sigma[j];
      if (hi < lo) continue;
      bool cover = true;
      for (int k = i + 1; k < j && cover; ++k) {
        if (x.sigma[k] > lo && x.sigma[k] < hi) cover = false;
      }
      if (!cover) continue;
      Generator y = x;
      std::swap(y.sigma[i], y.sigma[j]);
      out.push_back(std::move(y));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

GeneratorIndex::GeneratorIndex(int n, int cap) : n_(n) {
  check_cap(n, cap);
  count_ = factorial(n);
  fact_.resize(n + 1);
  for (int i = 0; i <= n; ++i) fact_[i] = factorial(i);
  perms_.resize(count_ * n);
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::size_t k = 0;
  do {
    std::copy(p.begin(), p.end(), perms_.begin() + k * n);
    ++k;
  } while (std::next_permutation(p.begin(), p.end()));
}

Generator GeneratorIndex::generator(std::size_t index) const {
  Generator x;
  auto p = perm(index);
  x.sigma.assign(p.begin(), p.end());
  return x;
}

std::size_t GeneratorIndex::index_of(std::span<const int> sigma) const {
  std::size_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n_; ++j) smaller += sigma[j] < sigma[i];
    rank += smaller * fact_[n_ - 1 - i];
  }
  return rank;
}

RectangleTable::RectangleTable(const GridDiagram& g, int cap)
    : grid_(g), gens_(g.n(), std::min(cap, kMaxMaskedIndex)) {
  const int n = g.n();
  pairs_ = static_cast<std::size_t>(n) * (n - 1);
  slots_.resize(gens_.size() * pairs_);
  x_mask_ = marking_mask(g, true);
  o_mask_ = marking_mask(g, false);
  std::vector<int> sigma(n);
  for (std::size_t gen = 0; gen < gens_.size(); ++gen) {
    auto p = gens_.perm(gen);
    std::copy(p.begin(), p.end(), sigma.begin());
    for (int r1 = 0; r1 < n; ++r1) {
      for (int r2 = 0; r2 < n; ++r2) {
        if (r1 == r2) continue;
        RectSlot& s = slots_[slot_id(gen, r1, r2)];
        if (!rect_geometry(sigma, n, r1, r2, s)) continue;
        std::swap(sigma[r1], sigma[r2]);
        s.to = static_cast<std::uint32_t>(gens_.index_of(sigma));
        std::swap(sigma[r1], sigma[r2]);
        s.n_x = static_cast<std::uint8_t>(std::popcount(s.cells & x_mask_));
        s.n_o = static_cast<std::uint8_t>(std::popcount(s.cells & o_mask_));
        ++valid_count_;
      }
    }
  }
}

std::size_t RectangleTable::slot_id(std::size_t gen, int row_bl, int row_tr) const {
  const int n = grid_.n();
  return gen * pairs_ + static_cast<std::size_t>(row_bl) * (n - 1) + (row_tr < row_bl ? row_tr : row_tr - 1);
}

Rectangle RectangleTable::rectangle(std::size_t id) const {
  return make_rectangle(grid_, gens_.generator(source_of(id)), slots_[id]);
}

std::string RectangleTable::key(std::size_t id) const {
  const RectSlot& s = slots_[id];
  std::ostringstream out;
  out << gens_.generator(source_of(id)).word() << '|' << s.row_bl + 1 << '.' << s.row_tr + 1 << '|'
      << (s.wraps_cols ? 1 : 0) << (s.wraps_rows ? 1 : 0);
  return out.str();
}

std::vector<std::size_t> RectangleTable::between(std::size_t from, std::size_t to) const {
  std::vector<std::size_t> out;
  for (std::size_t id = from * pairs_; id < (from + 1) * pairs_; ++id) {
    if (slots_[id].valid && slots_[id].to == to) out.push_back(id);
  }
  return out;
}

std::uint64_t RectangleTable::row_mask(int r) const {
  std::uint64_t m = 0;
  for (int c = 0; c < n(); ++c) m |= cell_bit(n(), r, c);
  return m;
}

std::uint64_t RectangleTable::col_mask(int c) const {
  std::uint64_t m = 0;
  for (int r = 0; r < n(); ++r) m |= cell_bit(n(), r, c);
  return m;
}

std::vector<SlotGroup> slot_groups_from(const RectangleTable& table, std::size_t gen) {
  struct Entry {
    std::uint32_t end;
    std::uint64_t ones, twos;
    std::uint32_t a, b;
  };
  const std::size_t pairs = table.pairs_per_generator();
  std::vector<Entry> entries;
  entries.reserve(pairs * pairs);
  for (std::size_t a = gen * pairs; a < (gen + 1) * pairs; ++a) {
    const RectSlot& ra = table.slot(a);
    if (!ra.valid) continue;
    for (std::size_t b = ra.to * pairs; b < (ra.to + 1) * pairs; ++b) {
      const RectSlot& rb = table.slot(b);
      if (!rb.valid) continue;
      entries.push_back({rb.to, ra.cells | rb.cells, ra.cells & rb.cells, static_cast<std::uint32_t>(a),
                         static_cast<std::uint32_t>(b)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.end, x.ones, x.twos, x.a) < std::tie(y.end, y.ones, y.twos, y.a);
  });
  std::vector<SlotGroup> groups;
  for (size_t i = 0; i < entries.size();) {
    SlotGroup group{entries[i].end, entries[i].ones, entries[i].twos, {}};
    size_t j = i;
    while (j < entries.size() && entries[j].end == group.end && entries[j].ones == group.ones &&
           entries[j].twos == group.twos) {
      group.pairs.emplace_back(entries[j].a, entries[j].b);
      ++j;
    }
    check_group(table.n(), group.end == gen, group.ones, group.twos, group.pairs.size(),
                table.generators().generator(gen).word());
    groups.push_back(std::move(group));
    i = j;
  }
  return groups;
}

std::pair<std::size_t, std::size_t> annulus_slots(const RectangleTable& table, std::size_t gen,
                                                   Annulus kind, int i) {
  const int n = table.n();
  auto p = table.generators().perm(gen);
  int r1, r2;
  if (kind == Annulus::Horizontal) {
    // Width-one strip on row i, closed up by the complementary strip.
    r1 = i;
    r2 = (i + 1) % n;
  } else {
    r1 = -1;
    r2 = -1;
    for (int r = 0; r < n; ++r) {
      if (p[r] == i) r1 = r;
      if (p[r] == (i + 1) % n) r2 = r;
    }
  }
  const std::size_t first = table.slot_id(gen, r1, r2);
  const RectSlot& s = table.slot(first);
  const std::size_t second =
      kind == Annulus::Horizontal ? table.slot_id(s.to, r1, r2) : table.slot_id(s.to, r2, r1);
  return {first, second};
}

}  // namespace gridhfl
