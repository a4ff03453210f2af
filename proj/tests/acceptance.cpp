// One line per acceptance criterion; exit status is the number of failures.

#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>

#include "gridhfl/cli.hpp"
#include "gridhfl/homology.hpp"
#include "gridhfl/oracles.hpp"
#include "support.hpp"

using namespace gridhfl;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  testing::Stopwatch clock;
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = clock.seconds();
  const bool in_time = limit_seconds <= 0 || t < limit_seconds;
  const bool pass = o.ok && in_time;
  failures += !pass;
  std::printf("criterion %d %s  %s  (%.2f s", number, pass ? "PASS" : "FAIL", title, t);
  if (limit_seconds > 0) std::printf(", limit %.0f s", limit_seconds);
  std::printf(")  %s%s\n", o.detail.c_str(), in_time ? "" : " [too slow]");
  std::fflush(stdout);
}

std::string describe(const HomologyTable& t) {
  std::string s;
  for (const auto& g : t.groups) {
    s += "(" + std::to_string(g.maslov) + ";";
    for (int a : g.a2) s += std::to_string(a) + ",";
    s.back() = ')';
    s += ":Z^" + std::to_string(g.free_rank);
    for (const auto& d : g.torsion) s += "+Z/" + d.get_str();
    s += " ";
  }
  return s;
}

HomologyTable sorted(HomologyTable t) {
  std::sort(t.groups.begin(), t.groups.end(), [](const auto& a, const auto& b) {
    return std::tie(a.a2, a.maslov) < std::tie(b.a2, b.maslov);
  });
  return t;
}

bool same(const HomologyTable& a, const HomologyTable& b) {
  if (a.groups.size() != b.groups.size()) return false;
  for (std::size_t k = 0; k < a.groups.size(); ++k) {
    const auto &x = a.groups[k], &y = b.groups[k];
    if (x.a2 != y.a2 || x.maslov != y.maslov || x.free_rank != y.free_rank || x.torsion != y.torsion) return false;
  }
  return true;
}

int product(const HVProfile& p) {
  int out = 1;
  for (int x : p.h) out *= x;
  for (int x : p.v) out *= x;
  return out;
}

}  // namespace

int main() {
  criterion(1, "unlink: one class Z/2, the other Z+Z", 1, [] {
    std::ostringstream out, err;
    const int code = cli::run({"homology", testing::data_path("unlink2.grid"), "--class", "all", "--ring", "z"}, out, err);
    if (code != 0) return Outcome{false, "exit " + std::to_string(code) + ": " + err.str()};
    const auto j = nlohmann::json::parse(out.str());
    int torsion_only = 0, two_free = 0;
    std::string detail;
    for (const auto& c : j["classes"]) {
      std::size_t free = 0;
      std::vector<long> torsion;
      for (const auto& g : c["groups"]) {
        free += g["free"].get<std::size_t>();
        for (const auto& d : g["torsion"]) torsion.push_back(d.get<long>());
      }
      torsion_only += free == 0 && torsion == std::vector<long>{2};
      two_free += free == 2 && torsion.empty();
      detail += "r=" + c["class"]["r"].dump() + " free=" + std::to_string(free) + " torsion=" +
                std::to_string(torsion.size()) + "; ";
    }
    return Outcome{j["classes"].size() == 2 && torsion_only == 1 && two_free == 1, detail};
  });

  criterion(2, "Hopf: 24 generators, 16 empty rectangles, class independence", 5, [] {
    const auto g = testing::bundled("hopf");
    auto table = make_table(g);
    std::size_t empty = 0;
    for (std::size_t id = 0; id < table->slot_count(); ++id) empty += table->slot(id).valid && table->slot(id).empty();
    std::vector<HomologyTable> tables;
    for (const auto& w : all_weak_classes(g)) {
      tables.push_back(sorted(homology_z(build_complex(solve_signs(table, canonical_targets(g, w))))));
    }
    const bool ok = table->generators().size() == 24 && empty == 16 && tables.size() == 2 && same(tables[0], tables[1]);
    return Outcome{ok, "generators=" + std::to_string(table->generators().size()) + " empty=" + std::to_string(empty) +
                           " classes=" + std::to_string(tables.size()) + " H=" + describe(tables[0])};
  });

  criterion(3, "gauge classes 8 at N=2 and 32 at N=3, fingerprint injective", 30, [] {
    bool ok = true;
    std::string detail;
    for (const char* text : {"N=2; X=1 2; O=1 2", "N=2; X=2 1; O=1 2", "N=3; X=2 3 1; O=1 2 3",
                             "N=3; X=1 2 3; O=1 2 3", "N=3; X=1 3 2; O=1 2 3"}) {
      const auto g = parse_grid(text);
      const auto census = oracles::gauge_class_census(g);
      const std::uint64_t want = std::uint64_t{1} << (2 * g.n() - 1);
      ok = ok && census.gauge_classes == want && census.distinct_fingerprints == want &&
           enumerate_sign_assignments(g).gauge_classes() == want;
      detail += std::to_string(census.gauge_classes) + "/" + std::to_string(census.distinct_fingerprints) + " ";
    }
    return Outcome{ok, "classes/fingerprints per grid: " + detail};
  });

  criterion(4, "product of h and v equals (-1)^N for every solver output", 0, [] {
    std::mt19937_64 rng(2024);
    std::size_t checked = 0;
    bool ok = true;
    auto run_target = [&](const TablePtr& table, const HVProfile& t) {
      const auto p = hv_profile(solve_signs(table, t));
      ok = ok && p == t && product(p) == (table->n() % 2 ? -1 : 1);
      ++checked;
    };
    for (const char* text : {"N=2; X=1 2; O=1 2", "N=2; X=2 1; O=1 2", "N=3; X=2 3 1; O=1 2 3",
                             "N=3; X=1 2 3; O=1 2 3", "N=3; X=1 3 2; O=1 2 3"}) {
      const auto g = parse_grid(text);
      auto table = make_table(g);
      for (const auto& t : testing::legal_targets(g.n())) run_target(table, t);
    }
    for (const auto& g : {testing::g4h(), testing::random_grid(4, rng), testing::g5t(), testing::random_grid(5, rng)}) {
      auto table = make_table(g);
      for (int k = 0; k < 20; ++k) run_target(table, testing::random_target(g.n(), rng));
    }
    return Outcome{ok, std::to_string(checked) + " solver outputs checked"};
  });

  criterion(5, "d^2 = 0 and mod 2 agreement over the bundled corpus", 60, [] {
    bool ok = true;
    std::size_t complexes = 0;
    for (const char* name : {"g1", "unknot2", "unlink2", "hopf", "trefoil", "figure8", "link6"}) {
      const auto g = testing::bundled(name);
      auto table = make_table(g);
      const auto unsigned_cx = build_unsigned_complex(table);
      for (const auto& w : all_weak_classes(g)) {
        const auto cx = build_complex(solve_signs(table, canonical_targets(g, w)));
        check_d_squared(cx);
        ok = ok && same_mod2(cx, unsigned_cx);
        ++complexes;
      }
    }
    return Outcome{ok, std::to_string(complexes) + " signed complexes"};
  });

  criterion(6, "trefoil: rank 48, exact Q division to rank 3, symmetric, torsion free", 60, [] {
    const auto g = testing::bundled("trefoil");
    auto table = make_table(g);
    const auto p = poincare(homology_f2(table));
    const auto q = divide_q_factors(p, g);
    const auto z = homology_z(build_complex(solve_signs(table, canonical_targets(g, WeakClass{{1}}))));
    bool torsion_free = true;
    for (const auto& grp : z.groups) torsion_free = torsion_free && grp.torsion.empty();
    const bool ok = total_rank(p) == 48 && q && total_rank(*q) == 3 && knot_symmetric(*q) && torsion_free;
    std::string terms;
    if (q) {
      for (const auto& [m, c] : *q) terms += "(" + std::to_string(m.maslov) + "," + std::to_string(m.a2[0]) + ")x" +
                                             std::to_string(c) + " ";
    }
    return Outcome{ok, "rank=" + std::to_string(total_rank(p)) + " quotient=" + terms +
                           (torsion_free ? "torsion free" : "torsion present")};
  });

  criterion(7, "N=6 full pipeline, every weak class, integral homology", 300, [] {
    std::string detail;
    bool ok = true;
    for (const char* name : {"link6", "figure8"}) {
      const auto g = testing::bundled(name);
      auto table = make_table(g);
      for (const auto& w : all_weak_classes(g)) {
        SolveStats stats;
        const auto s = solve_signs(table, canonical_targets(g, w), &stats);
        const auto h = homology_z(build_complex(s));
        ok = ok && verify_sign_assignment(s).ok() && h.total_free() > 0;
        detail += std::string(name) + "[" + w.label() + "] vars=" + std::to_string(stats.variables) +
                  " residual=" + std::to_string(stats.residual) + " rank=" + std::to_string(h.total_free()) + "; ";
      }
    }
    return Outcome{ok, detail};
  });

  criterion(8, "grading anchors for the one- and two-box unknots", 0, [] {
    auto h = [](const GridDiagram& g) {
      return sorted(homology_z(build_complex(solve_signs(make_table(g), canonical_targets(g, WeakClass{{1}}))))); };
    const auto one = h(testing::g1());
    const auto two = h(testing::g2k());
    HomologyTable want_one, want_two;
    want_one.groups.push_back({{0}, 0, 1, {}});
    want_two.groups.push_back({{-2}, -1, 1, {}});
    want_two.groups.push_back({{0}, 0, 1, {}});
    return Outcome{same(one, want_one) && same(two, want_two), "G1: " + describe(one) + " G2K: " + describe(two)};
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
