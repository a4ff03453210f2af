#include "gridhfl/cli.hpp"

#include <CLI11.hpp>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gridhfl/homology.hpp"
#include "gridhfl/oracles.hpp"
#include "gridhfl/parallel.hpp"
#include "gridhfl/signs.hpp"

namespace gridhfl::cli {

namespace {

using Json = nlohmann::ordered_json;

// "all", "r=+,-" or "+,-".
std::vector<WeakClass> parse_classes(const GridDiagram& g, const std::string& text) {
  if (text.empty() || text == "all") return all_weak_classes(g);
  std::string body = text;
  if (body.starts_with("r=")) body = body.substr(2);
  WeakClass w;
  std::stringstream in(body);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok == "+" || tok == "+1" || tok == "1") {
      w.r.push_back(1);
    } else if (tok == "-" || tok == "-1") {
      w.r.push_back(-1);
    } else {
      throw Error(ErrorKind::SyntaxError, "bad --class entry '" + tok + "', expected + or -");
    }
  }
  if (static_cast<int>(w.r.size()) != g.num_components()) {
    throw Error(ErrorKind::IndexOutOfRange, "--class lists " + std::to_string(w.r.size()) +
                                                " signs but the grid has " + std::to_string(g.num_components()) +
                                                " components");
  }
  // Validates the product before any solving happens.
  canonical_targets(g, w);
  return {w};
}

Json monomial_json(const Monomial& m, long coeff) {
  return Json{{"a2", m.a2}, {"m", m.maslov}, {"coeff", coeff}};
}

// Divisors are numbers when they fit, decimal strings otherwise.
Json divisor_json(const mpz_class& d) {
  if (d.fits_slong_p()) return Json(d.get_si());
  return Json(d.get_str());
}

Json group_json(const HomologyGroup& g) {
  Json torsion = Json::array();
  for (const auto& d : g.torsion) torsion.push_back(divisor_json(d));
  return Json{{"a2", g.a2}, {"m", g.maslov}, {"free", g.free_rank}, {"torsion", torsion}};
}

void sort_groups(HomologyTable& t) {
  std::sort(t.groups.begin(), t.groups.end(), [](const HomologyGroup& a, const HomologyGroup& b) {
    return std::tie(a.a2, a.maslov) < std::tie(b.a2, b.maslov);
  });
}

std::string torsion_text(const HomologyGroup& g) {
  std::string s;
  for (const auto& d : g.torsion) s += (s.empty() ? "" : ",") + d.get_str();
  return s.empty() ? "-" : s;
}

std::string a2_text(const std::vector<int>& a2) {
  std::string s;
  for (int v : a2) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

std::optional<PoincarePolynomial> divide_q(const PoincarePolynomial& p, const GridDiagram& g, bool collapsed) {
  if (!collapsed) return divide_q_factors(p, g);
  int factors = 0;
  for (const auto& c : g.components()) factors += c.m() - 1;
  std::optional<PoincarePolynomial> cur = p;
  for (int k = 0; k < factors && cur; ++k) cur = divide_q_factor(*cur, 0);
  return cur;
}

struct Options {
  std::string grid_path;
  std::string klass = "all";
  std::string ring = "z";
  std::string format = "json";
  std::string output;
  std::string suite = "quick";
  std::string signs_file;
  bool collapse = false;
  bool divide = false;
  unsigned jobs = 0;
};

int cmd_info(const Options& o, std::ostream& out) {
  const GridDiagram g = load_grid(o.grid_path);
  auto table = make_table(g);
  std::size_t empty = 0;
  for (std::size_t id = 0; id < table->slot_count(); ++id) {
    const auto& s = table->slot(id);
    empty += s.valid && s.empty();
  }
  Json comps = Json::array();
  for (const auto& c : g.components()) {
    std::vector<int> rows;
    for (int r : c.rows) rows.push_back(r + 1);
    comps.push_back(Json{{"id", c.id}, {"rows", rows}, {"m", c.m()}});
  }
  Json j{{"grid", Json::parse(to_grid_json(g))},
         {"hash", grid_hash(g)},
         {"n", g.n()},
         {"components", comps},
         {"generators", table->generators().size()},
         {"rectangles", table->valid_count()},
         {"empty_rectangles", empty}};
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << "n\t" << g.n() << "\ncomponents\t" << g.num_components() << "\ngenerators\t"
        << table->generators().size() << "\nrectangles\t" << table->valid_count() << "\nempty_rectangles\t" << empty
        << "\n";
  }
  return 0;
}

int cmd_signs(const Options& o, std::ostream& out) {
  const GridDiagram g = load_grid(o.grid_path);
  const auto classes = parse_classes(g, o.klass);
  auto table = make_table(g);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto s = solve_signs(table, canonical_targets(g, classes[k]), nullptr, o.jobs);
    if (o.output.empty()) {
      write_signs(out, s);
      continue;
    }
    const std::string path = classes.size() == 1 ? o.output : o.output + "." + std::to_string(k + 1);
    std::ofstream file(path);
    if (!file) throw Error(ErrorKind::SyntaxError, "cannot write '" + path + "'");
    write_signs(file, s);
    out << "class " << classes[k].label() << " -> " << path << "\n";
  }
  return 0;
}

int cmd_homology(const Options& o, std::ostream& out) {
  const GridDiagram g = load_grid(o.grid_path);
  auto table = make_table(g);

  struct Block {
    std::string label;
    std::vector<int> r, phi;
    HomologyTable table;
  };
  std::vector<Block> blocks;
  if (o.ring == "f2") {
    // Signs are irrelevant mod 2.
    blocks.push_back({"mod2", {}, {}, homology_f2(table, o.jobs)});
  } else {
    const auto wanted = parse_classes(g, o.klass);
    blocks.resize(wanted.size());
    std::vector<std::exception_ptr> errors(wanted.size());
    // Workers go to classes first; a single class gets them for its buckets.
    const unsigned inner = wanted.size() > 1 ? 1 : o.jobs;
    parallel_chunks(wanted.size(), o.jobs, [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t k = begin; k < end; ++k) {
        try {
          const auto s = solve_signs(table, canonical_targets(g, wanted[k]), nullptr, inner);
          blocks[k] = {wanted[k].label(), wanted[k].r, phi(s), homology_z(build_complex(s), inner)};
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Json classes = Json::array();
  for (auto& b : blocks) {
    if (o.collapse) b.table = collapse_alexander(b.table);
    sort_groups(b.table);
    Json groups = Json::array();
    for (const auto& grp : b.table.groups) groups.push_back(group_json(grp));
    Json entry{{"class", b.r.empty() ? Json{{"r", nullptr}} : Json{{"r", b.r}, {"phi", b.phi}}}};
    entry["groups"] = groups;
    entry["total_free"] = b.table.total_free();
    if (o.divide) {
      auto q = divide_q(poincare(b.table), g, o.collapse);
      if (q) {
        Json terms = Json::array();
        for (const auto& [m, c] : *q) terms.push_back(monomial_json(m, c));
        entry["quotient"] = terms;
      } else {
        entry["quotient"] = nullptr;
      }
    }
    classes.push_back(entry);
  }

  if (o.format == "json") {
    Json j{{"grid", Json::parse(to_grid_json(g))},
           {"ring", o.ring},
           {"alexander", o.collapse ? "collapsed" : "multi"},
           {"classes", classes}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "class\tmaslov\talexander2\tfree\ttorsion\n";
  for (const auto& b : blocks) {
    for (const auto& grp : b.table.groups) {
      out << b.label << "\t" << grp.maslov << "\t" << a2_text(grp.a2) << "\t" << grp.free_rank << "\t"
          << torsion_text(grp) << "\n";
    }
  }
  if (o.divide) {
    out << "# quotient\n";
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const auto& c = classes[k];
      const std::string& label = blocks[k].label;
      if (c["quotient"].is_null()) {
        out << label << "\tnot divisible\n";
        continue;
      }
      for (const auto& t : c["quotient"]) {
        out << label << "\t" << t["m"].get<int>() << "\t" << a2_text(t["a2"].get<std::vector<int>>()) << "\t"
            << t["coeff"].get<long>() << "\n";
      }
    }
  }
  return 0;
}

class Checklist {
 public:
  explicit Checklist(std::ostream& out) : out_(out) {}
  void check(bool ok, const std::string& what) {
    out_ << (ok ? "ok    " : "FAIL  ") << what << "\n";
    failures_ += !ok;
  }
  void note(const std::string& what) { out_ << "      " << what << "\n"; }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

int cmd_verify(const Options& o, std::ostream& out) {
  const GridDiagram g = load_grid(o.grid_path);
  const bool full = o.suite == "full";
  auto table = make_table(g);
  Checklist list(out);
  out << "grid " << grid_hash(g) << " n=" << g.n() << " components=" << g.num_components() << "\n";

  const auto unsigned_cx = build_unsigned_complex(table);
  list.check(gradings_respected(unsigned_cx), "boundary preserves Alexander and lowers Maslov by one");

  if (!o.signs_file.empty()) {
    std::ifstream in(o.signs_file);
    if (!in) throw Error(ErrorKind::SyntaxError, "cannot open signs file '" + o.signs_file + "'");
    const auto s = read_signs(in, table);
    const auto report = verify_sign_assignment(s);
    for (const auto& m : report.messages) list.note(m);
    list.check(report.ok(), "supplied sign assignment satisfies the square and annulus relations");
  }

  const auto classes = all_weak_classes(g);
  std::vector<HomologyTable> tables;
  for (const auto& w : classes) {
    const auto target = canonical_targets(g, w);
    SolveStats stats;
    const auto s = solve_signs(table, target, &stats, o.jobs);
    const std::string tag = "class " + w.label() + ": ";
    const auto report = verify_sign_assignment(s);
    for (const auto& m : report.messages) list.note(m);
    list.check(report.ok(), tag + "square and annulus relations hold");
    list.check(hv_profile(s) == target, tag + "horizontal and vertical functions match the target");
    list.check(component_signs(s) == w, tag + "component signs match");

    const auto cx = build_complex(s);  // throws on a nonzero square
    list.check(true, tag + "boundary squares to zero");
    list.check(same_mod2(cx, unsigned_cx), tag + "signed boundary reduces to the mod 2 boundary");

    auto hz = homology_z(cx, o.jobs);
    auto hf = homology_f2(cx, o.jobs);
    // Universal coefficients: an even cyclic summand in degree M contributes
    // to mod 2 homology in degrees M and M+1.
    std::map<std::pair<std::vector<int>, int>, std::size_t> expect;
    for (const auto& grp : hz.groups) {
      std::size_t two = 0;
      for (const auto& d : grp.torsion) two += (d % 2 == 0);
      expect[{grp.a2, grp.maslov}] += grp.free_rank + two;
      if (two) expect[{grp.a2, grp.maslov + 1}] += two;
    }
    std::map<std::pair<std::vector<int>, int>, std::size_t> got;
    for (const auto& grp : hf.groups) got[{grp.a2, grp.maslov}] += grp.free_rank;
    std::erase_if(expect, [](const auto& e) { return e.second == 0; });
    list.check(expect == got, tag + "integral and mod 2 homology agree by universal coefficients");

    if (full && g.n() >= 2) {
      const auto other = solve_signs(table, target, nullptr, o.jobs);
      std::vector<int> t(table->generators().size(), 1);
      for (std::size_t k = 1; k < t.size(); k += 3) t[k] = -1;
      const auto moved = gauge_transform(other, t);
      list.check(gauge_witness(s, moved).has_value(), tag + "gauge transform is detected as gauge equivalent");
      list.check(phi(moved) == phi(s), tag + "fingerprint is gauge invariant");
      const auto aligned = weak_align(s, moved);
      bool agrees = aligned.has_value();
      for (std::size_t id = 0; agrees && id < table->slot_count(); ++id) {
        const auto& slot = table->slot(id);
        if (slot.valid && slot.empty()) agrees = aligned->at(id) == s.at(id);
      }
      list.check(agrees, tag + "weak alignment matches on every empty rectangle");
    }
    sort_groups(hz);
    tables.push_back(std::move(hz));
  }

  bool identical = true;
  for (const auto& t : tables) {
    identical = identical && t.groups.size() == tables.front().groups.size();
    for (std::size_t k = 0; identical && k < t.groups.size(); ++k) {
      const auto &a = t.groups[k], &b = tables.front().groups[k];
      identical = a.a2 == b.a2 && a.maslov == b.maslov && a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
  }
  out << "homology " << (identical ? "identical" : "differs") << " across " << classes.size() << " weak class"
      << (classes.size() == 1 ? "" : "es") << "\n";

  if (full) {
    if (g.n() <= 5) {
      const auto census = oracles::exhaustive_rectangle_census(g);
      std::size_t empty = 0;
      for (std::size_t id = 0; id < table->slot_count(); ++id) empty += table->slot(id).valid && table->slot(id).empty();
      list.check(census.total == table->valid_count() && census.empty == empty && census.max_per_pair <= 2,
                 "rectangle census matches brute force (" + std::to_string(census.total) + " total, " +
                     std::to_string(census.empty) + " empty)");
    }
    if (g.n() <= 4) {
      const auto report = oracles::grading_cross_check(g);
      for (const auto& f : report.failures) list.note(f);
      list.check(report.ok(), "absolute gradings agree with relative formulas on random paths");
    }
    if (g.n() >= 2 && g.n() <= 3) {
      const auto fast = enumerate_sign_assignments(g);
      const auto slow = oracles::gauge_class_census(g);
      list.check(fast.gauge_classes() == slow.gauge_classes && slow.distinct_fingerprints == slow.gauge_classes,
                 "gauge classes: " + std::to_string(slow.gauge_classes) + ", fingerprints injective");
    }
  }
  out << (list.failures() ? "verify: " + std::to_string(list.failures()) + " check(s) failed" : "verify: all checks passed")
      << "\n";
  return list.failures() ? 3 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link Floer homology from grid diagrams", "gridhfl"};
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "Grid summary: components, generators, rectangles");
  info->add_option("grid", o.grid_path, "Grid file")->required();
  info->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* signs = app.add_subcommand("signs", "Solve and write one sign assignment per weak class");
  signs->add_option("grid", o.grid_path, "Grid file")->required();
  signs->add_option("--class", o.klass, "r=+,-,... or all");
  signs->add_option("-o,--output", o.output, "Output file (suffixed .1, .2, ... for several classes)");

  auto* homology = app.add_subcommand("homology", "Homology per weak class");
  homology->add_option("grid", o.grid_path, "Grid file")->required();
  homology->add_option("--class", o.klass, "r=+,-,... or all");
  homology->add_option("--ring", o.ring, "z or f2")->check(CLI::IsMember({"z", "f2"}));
  homology->add_flag("--collapse-alexander", o.collapse, "Sum the Alexander gradings");
  homology->add_flag("--divide-q", o.divide, "Divide the Poincare polynomial by the marking factors");
  homology->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  homology->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "Run invariant checks");
  verify->add_option("grid", o.grid_path, "Grid file")->required();
  verify->add_option("--suite", o.suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--signs", o.signs_file, "Also check a serialized sign assignment");
  verify->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (info->parsed()) return cmd_info(o, out);
    if (signs->parsed()) return cmd_signs(o, out);
    if (homology->parsed()) return cmd_homology(o, out);
    return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return is_internal(e.kind()) ? 3 : 2;
  }
}

}  // namespace gridhfl::cli
