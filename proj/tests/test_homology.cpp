#include <doctest.h>

#include "gridhfl/homology.hpp"
#include "support.hpp"

using namespace gridhfl;

namespace {

std::vector<long> divisors(const SmithForm& f) {
  std::vector<long> out;
  for (const auto& d : f.divisors) out.push_back(d.get_si());
  return out;
}

// Fraction-free determinant, independent of the Smith code.
mpz_class bareiss_det(const IntMatrix& m) {
  const std::size_t n = m.rows;
  std::vector<mpz_class> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = static_cast<long>(m.data[i]);
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

HomologyTable homology_of(const GridDiagram& g, const WeakClass& w) {
  return homology_z(build_complex(solve_signs(make_table(g), canonical_targets(g, w))));
}

using Key = std::pair<std::vector<int>, int>;

std::map<Key, std::pair<std::size_t, std::vector<long>>> as_map(const HomologyTable& t) {
  std::map<Key, std::pair<std::size_t, std::vector<long>>> out;
  for (const auto& g : t.groups) {
    std::vector<long> tors;
    for (const auto& d : g.torsion) tors.push_back(d.get_si());
    out[{g.a2, g.maslov}] = {g.free_rank, tors};
  }
  return out;
}

std::vector<GridDiagram> corpus() {
  std::vector<GridDiagram> out;
  for (const char* name : {"g1", "unknot2", "unlink2", "hopf", "trefoil", "figure8", "link6"}) {
    out.push_back(testing::bundled(name));
  }
  out.push_back(parse_grid("N=3; X=1 2 3; O=1 2 3"));  // three-component unlink
  out.push_back(parse_grid("N=4; X=2 1 4 3; O=1 2 3 4"));
  return out;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  CHECK(divisors(smith_normal_form(IntMatrix(1, 1, {2}))) == std::vector<long>{2});
  const auto f = smith_normal_form(IntMatrix(2, 2, {1, 0, 0, 0}));
  CHECK(divisors(f) == std::vector<long>{1});
  CHECK(f.rank == 1);
  const auto g = smith_normal_form(IntMatrix(2, 2, {2, 4, -2, 2}));
  CHECK(divisors(g) == std::vector<long>{2, 6});
  CHECK(g.rank == 2);
  CHECK(smith_normal_form(IntMatrix(3, 2)).rank == 0);
  CHECK(divisors(smith_normal_form(IntMatrix(2, 3, {2, 0, 0, 0, 3, 0}))) == std::vector<long>{1, 6});
}

TEST_CASE("Smith normal form on random matrices") {
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    IntMatrix m(n, n);
    for (auto& v : m.data) v = entry(rng) * (rng() % 3 == 0);
    const auto f = smith_normal_form(m);
    const auto big = smith_normal_form_big(m);
    CHECK(f.divisors == big.divisors);
    for (std::size_t k = 0; k + 1 < f.divisors.size(); ++k) CHECK(f.divisors[k + 1] % f.divisors[k] == 0);
    mpz_class prod = 1;
    for (const auto& d : f.divisors) prod *= d;
    const mpz_class det = abs(bareiss_det(m));
    if (f.rank == n) {
      CHECK(prod == det);
    } else {
      CHECK(det == 0);
    }
  }
}

TEST_CASE("Smith normal form survives 64-bit overflow") {
  const std::int64_t big = std::int64_t{1} << 61;
  IntMatrix m(3, 3, {big + 1, big - 1, 3, big - 3, big + 5, 7, 11, 13, big + 17});
  const auto f = smith_normal_form(m);
  const auto g = smith_normal_form_big(m);
  CHECK(f.divisors == g.divisors);
  mpz_class prod = 1;
  for (const auto& d : f.divisors) prod *= d;
  CHECK(prod == abs(bareiss_det(m)));
}

TEST_CASE("unlink complexes") {
  const auto u = testing::g2u();
  auto table = make_table(u);
  const auto plus = build_complex(solve_signs(table, canonical_targets(u, WeakClass{{1, 1}})));
  REQUIRE(plus.buckets.size() == 1);
  const auto& bucket = plus.buckets.at({0, 0});
  const auto d_plus = bucket.boundary.at(0).dense();
  CHECK(d_plus.rows == 1);
  CHECK(d_plus.cols == 1);
  CHECK(d_plus.at(0, 0) == 0);

  const auto minus = build_complex(solve_signs(table, canonical_targets(u, WeakClass{{-1, -1}})));
  const auto d_minus = minus.buckets.at({0, 0}).boundary.at(0).dense();
  CHECK(std::abs(d_minus.at(0, 0)) == 2);

  const auto hp = as_map(homology_z(plus));
  CHECK(hp.size() == 2);
  CHECK(hp.at({{0, 0}, 0}).first == 1);
  CHECK(hp.at({{0, 0}, -1}).first == 1);

  const auto hm = homology_z(minus);
  REQUIRE(hm.groups.size() == 1);
  CHECK(hm.groups[0].maslov == -1);
  CHECK(hm.groups[0].a2 == std::vector<int>{0, 0});
  CHECK(hm.groups[0].free_rank == 0);
  CHECK(hm.groups[0].torsion == std::vector<mpz_class>{2});

  const auto f2 = as_map(homology_f2(table));
  CHECK(f2.size() == 2);
  CHECK(f2.at({{0, 0}, 0}).first == 1);
  CHECK(f2.at({{0, 0}, -1}).first == 1);
}

TEST_CASE("one-box and two-box unknots") {
  const auto g1 = testing::g1();
  const auto c = build_complex(solve_signs(g1, HVProfile{{1}, {-1}}));
  REQUIRE(c.buckets.size() == 1);
  const auto h1 = homology_z(c);
  REQUIRE(h1.groups.size() == 1);
  CHECK(h1.groups[0].maslov == 0);
  CHECK(h1.groups[0].a2 == std::vector<int>{0});
  CHECK(h1.groups[0].free_rank == 1);
  CHECK(total_rank(poincare(homology_f2(make_table(g1)))) == 1);

  const auto k = testing::g2k();
  const auto hk = as_map(homology_of(k, WeakClass{{1}}));
  CHECK(hk.size() == 2);
  CHECK(hk.at({{0}, 0}).first == 1);
  CHECK(hk.at({{-2}, -1}).first == 1);
  const auto pk = poincare(homology_of(k, WeakClass{{1}}));
  CHECK(pk == PoincarePolynomial{{Monomial{0, {0}}, 1}, {Monomial{-1, {-2}}, 1}});
  const auto q = divide_q_factors(pk, k);
  REQUIRE(q.has_value());
  CHECK(*q == PoincarePolynomial{{Monomial{0, {0}}, 1}});
}

TEST_CASE("Poincare polynomials of the unlink classes") {
  const auto u = testing::g2u();
  CHECK(poincare(homology_of(u, WeakClass{{1, 1}})) ==
        PoincarePolynomial{{Monomial{0, {0, 0}}, 1}, {Monomial{-1, {0, 0}}, 1}});
  CHECK(poincare(homology_of(u, WeakClass{{-1, -1}})).empty());
}

TEST_CASE("Q division") {
  const PoincarePolynomial inexact{{Monomial{0, {0}}, 1}, {Monomial{-1, {-2}}, 1}, {Monomial{-2, {-4}}, 1}};
  CHECK_FALSE(divide_q_factor(inexact, 0).has_value());
  const PoincarePolynomial square{{Monomial{0, {0}}, 1}, {Monomial{-1, {-2}}, 2}, {Monomial{-2, {-4}}, 1}};
  const auto q = divide_q_factor(square, 0);
  REQUIRE(q.has_value());
  CHECK(*q == PoincarePolynomial{{Monomial{0, {0}}, 1}, {Monomial{-1, {-2}}, 1}});
  CHECK(divide_q_factor(PoincarePolynomial{}, 0) == PoincarePolynomial{});
}

TEST_CASE("trefoil") {
  const auto g = testing::g5t();
  const auto p = poincare(homology_f2(make_table(g)));
  CHECK(total_rank(p) == 48);
  const auto q = divide_q_factors(p, g);
  REQUIRE(q.has_value());
  CHECK(q->size() == 3);
  CHECK(total_rank(*q) == 3);
  CHECK(knot_symmetric(*q));
  const auto z = homology_of(g, WeakClass{{1}});
  for (const auto& grp : z.groups) CHECK(grp.torsion.empty());
  CHECK(poincare(z) == p);
}

TEST_CASE("figure eight") {
  const auto g = testing::bundled("figure8");
  const auto q = divide_q_factors(poincare(homology_f2(make_table(g))), g);
  REQUIRE(q.has_value());
  CHECK(*q == PoincarePolynomial{{Monomial{-1, {-2}}, 1}, {Monomial{0, {0}}, 3}, {Monomial{1, {2}}, 1}});
  CHECK(knot_symmetric(*q));
}

TEST_CASE("invariants over the corpus") {
  for (const auto& g : corpus()) {
    auto table = make_table(g);
    const auto unsigned_cx = build_unsigned_complex(table);
    CHECK(gradings_respected(unsigned_cx));
    const auto f2_unsigned = as_map(homology_f2(table));
    std::vector<HomologyTable> tables;
    for (const auto& w : all_weak_classes(g)) {
      const auto cx = build_complex(solve_signs(table, canonical_targets(g, w)));
      CHECK_NOTHROW(check_d_squared(cx));
      CHECK(same_mod2(cx, unsigned_cx));
      CHECK(gradings_respected(cx));
      const auto hz = homology_z(cx);
      CHECK(as_map(homology_f2(cx)) == f2_unsigned);

      std::map<Key, std::size_t> expect;
      for (const auto& grp : hz.groups) {
        std::size_t even = 0;
        for (const auto& d : grp.torsion) even += d % 2 == 0;
        expect[{grp.a2, grp.maslov}] += grp.free_rank + even;
        if (even) expect[{grp.a2, grp.maslov + 1}] += even;
        for (std::size_t k = 0; k + 1 < grp.torsion.size(); ++k) CHECK(grp.torsion[k + 1] % grp.torsion[k] == 0);
      }
      std::erase_if(expect, [](const auto& e) { return e.second == 0; });
      std::map<Key, std::size_t> got;
      for (const auto& [key, v] : f2_unsigned) got[key] = v.first;
      CHECK(expect == got);
      tables.push_back(hz);
    }
    const auto q = divide_q_factors(poincare(homology_f2(table)), g);
    CHECK(q.has_value());
    if (g.num_components() == 1) CHECK(knot_symmetric(*q));
  }
}

TEST_CASE("homology is unchanged by gauge transformations") {
  std::mt19937_64 rng(83);
  for (const auto& g : {testing::g4h(), testing::g5t()}) {
    auto table = make_table(g);
    for (const auto& w : all_weak_classes(g)) {
      const auto s = solve_signs(table, canonical_targets(g, w));
      std::vector<int> t(table->generators().size());
      for (auto& x : t) x = rng() & 1 ? 1 : -1;
      const auto moved = gauge_transform(s, t);
      const auto a = build_complex(s), b = build_complex(moved);
      CHECK(as_map(homology_z(a)) == as_map(homology_z(b)));
      // Boundaries are conjugate by diag(t).
      for (const auto& [a2, bucket] : a.buckets) {
        for (const auto& [m, block] : bucket.boundary) {
          const auto& other = b.buckets.at(a2).boundary.at(m);
          const auto& src = bucket.basis.at(m);
          auto below = bucket.basis.find(m - 1);
          for (std::size_t c = 0; c < block.cols; ++c) {
            REQUIRE(block.columns[c].size() == other.columns[c].size());
            for (std::size_t k = 0; k < block.columns[c].size(); ++k) {
              const auto [row, v] = block.columns[c][k];
              CHECK(other.columns[c][k].second == t[src[c]] * t[below->second[row]] * v);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("weak classes of the Hopf link give identical homology") {
  const auto g = testing::g4h();
  CHECK(as_map(homology_of(g, WeakClass{{1, 1}})) == as_map(homology_of(g, WeakClass{{-1, -1}})));
}

TEST_CASE("collapsed Alexander grading") {
  const auto g = testing::g4h();
  const auto t = homology_of(g, WeakClass{{1, 1}});
  const auto c = collapse_alexander(t);
  CHECK(c.total_free() == t.total_free());
  for (const auto& grp : c.groups) CHECK(grp.a2.size() == 1);

  HomologyTable two;
  two.groups.push_back({{0, 0}, 0, 0, {2}});
  two.groups.push_back({{1, -1}, 0, 0, {3}});
  const auto merged = collapse_alexander(two);
  REQUIRE(merged.groups.size() == 1);
  CHECK(merged.groups[0].torsion == std::vector<mpz_class>{6});
}

TEST_CASE("parallel homology matches the serial result") {
  const auto g = testing::bundled("link6");
  auto table = make_table(g);
  const auto cx = build_complex(solve_signs(table, canonical_targets(g, WeakClass{{-1, -1}})));
  CHECK(as_map(homology_z(cx, 1)) == as_map(homology_z(cx, 8)));
}

TEST_CASE("sparse and dense Smith forms agree") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> value(-4, 4);
  for (int trial = 0; trial < 300; ++trial) {
    BoundaryBlock b;
    b.rows = 1 + rng() % 12;
    b.cols = 1 + rng() % 12;
    b.columns.resize(b.cols);
    for (std::size_t c = 0; c < b.cols; ++c) {
      for (std::uint32_t r = 0; r < b.rows; ++r) {
        if (rng() % 3 == 0) b.columns[c].emplace_back(r, value(rng));
      }
    }
    const auto sparse = smith_normal_form(b);
    const auto dense = smith_normal_form(b.dense());
    CHECK(sparse.rank == dense.rank);
    CHECK(sparse.divisors == dense.divisors);
  }
  for (const auto& g : {testing::g4h(), testing::bundled("link6")}) {
    auto table = make_table(g);
    for (const auto& w : all_weak_classes(g)) {
      const auto cx = build_complex(solve_signs(table, canonical_targets(g, w)));
      for (const auto& [a2, bucket] : cx.buckets) {
        for (const auto& [m, block] : bucket.boundary) {
          if (block.rows == 0 || block.cols == 0) continue;
          CHECK(smith_normal_form(block).divisors == smith_normal_form(block.dense()).divisors);
        }
      }
    }
  }
}
