#include <doctest.h>

#include "gridhfl/oracles.hpp"
#include "gridhfl/signs.hpp"
#include "support.hpp"

using namespace gridhfl;

TEST_CASE("rectangle census on the named grids") {
  const auto u = oracles::exhaustive_rectangle_census(testing::g2u());
  CHECK(u.total == 4);
  CHECK(u.empty == 2);
  CHECK(u.max_per_pair == 2);

  const auto h = oracles::exhaustive_rectangle_census(testing::g4h());
  CHECK(h.empty == 16);
  CHECK(h.max_per_pair <= 2);

  const auto one = oracles::exhaustive_rectangle_census(testing::g1());
  CHECK(one.total == 0);
  CHECK(one.empty == 0);
  CHECK(one.max_per_pair == 0);

  CHECK_THROWS_AS(oracles::exhaustive_rectangle_census(testing::bundled("figure8")), Error);
}

TEST_CASE("rectangle census agrees with the rectangle table") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = testing::random_grid(2 + trial % 4, rng);
    const auto census = oracles::exhaustive_rectangle_census(g);
    RectangleTable table(g);
    std::uint64_t empty = 0;
    for (std::size_t id = 0; id < table.slot_count(); ++id) empty += table.slot(id).valid && table.slot(id).empty();
    CHECK(census.total == table.valid_count());
    CHECK(census.empty == empty);
    CHECK(census.max_per_pair <= 2);
  }
}

TEST_CASE("gauge class census") {
  const auto two = oracles::gauge_class_census(testing::g2u());
  CHECK(two.gauge_classes == 8);
  CHECK(two.log2_solutions == 4);
  CHECK(two.distinct_fingerprints == 8);

  for (const char* text : {"N=3; X=2 3 1; O=1 2 3", "N=3; X=1 2 3; O=1 2 3", "N=3; X=1 3 2; O=1 2 3"}) {
    const auto g = parse_grid(text);
    const auto census = oracles::gauge_class_census(g);
    CHECK(census.gauge_classes == 32);
    CHECK(census.distinct_fingerprints == 32);
    CHECK(enumerate_sign_assignments(g).gauge_classes() == census.gauge_classes);
  }
  CHECK_THROWS_AS(oracles::gauge_class_census(testing::g1()), Error);
  CHECK_THROWS_AS(oracles::gauge_class_census(testing::g4h()), Error);
}

TEST_CASE("grading cross-check") {
  CHECK(oracles::grading_cross_check(testing::g2u()).ok());
  CHECK(oracles::grading_cross_check(testing::g2k()).ok());
  const auto one = oracles::grading_cross_check(testing::g1());
  CHECK(one.ok());
  CHECK(one.pairs == 0);
  const auto hopf = oracles::grading_cross_check(testing::g4h());
  CHECK(hopf.ok());
  CHECK(hopf.pairs == 24 * 23);
  CHECK(hopf.paths == 3 * 24 * 23);
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 4; ++trial) CHECK(oracles::grading_cross_check(testing::random_grid(3 + trial % 2, rng), 3, trial).ok());
  CHECK_THROWS_AS(oracles::grading_cross_check(testing::g5t()), Error);
}
