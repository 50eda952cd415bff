// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Census bounds and tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dotlab/canonical.hpp"
#include "dotlab/census.hpp"
#include "dotlab/dg_format.hpp"
#include "dotlab/extraction.hpp"
#include "dotlab/poly_format.hpp"
#include "dotlab/rewrite.hpp"

using namespace dotlab;

namespace {

// Exact integer checks throughout: no tolerance.
constexpr int kAllowedMismatches = 0;

const EnumSpec kLabelSpec{6, 6, 1, 2, 8, true};
const EnumSpec kLemmaSpec{7, 5, 1, 2, 8, true};
const EnumSpec kThm1Spec{7, 4, 2, 2, 8, true};
const SearchBudget kThm1Budget{32, 100'000};
const EnumSpec kChain3Spec{12, 5, 3, 3, 6, true};
const EnumSpec kChain4Spec{12, 5, 4, 4, 4, true};
const EnumSpec kRing3Spec{6, 6, 3, 3, 6, true};
// The criterion asks for 8 corners; this is the part of that census that can be
// scanned here. Any counterexample in it is a counterexample of the full census.
const EnumSpec kThm3Spec{8, 7, 3, 3, 4, true};
const EnumSpec kMoveSpec2{6, 5, 1, 2, 6, true};
const EnumSpec kMoveSpec3{7, 6, 3, 3, 4, true};
const EnumSpec kCensusSpec{6, 5, 1, 2, 6, true};
constexpr int kRelabelings = 1000;

int failures = 0;
int jobs = 1;

void line(int id, bool pass, const std::string& title, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << detail << std::endl;
}

std::string spec_text(const EnumSpec& s) {
  std::ostringstream o;
  o << s.width << "x" << s.height << ", " << s.min_components << ".." << s.max_components
    << " components, <=" << s.max_corners << " corners";
  return o.str();
}

long long count(const VerificationReport& r, const std::string& key) {
  const auto it = r.counts.find(key);
  return it == r.counts.end() ? 0 : it->second;
}

std::string fixtures_dir;

LatticePolytope load_fixture(const std::string& name) {
  std::ifstream in(fixtures_dir + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_poly(ss.str());
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(fixtures_dir)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() == ".poly" && name != "bad_alternation.poly") out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Same diagram with arcs, crossings and free circles renumbered and every
// crossing's slots turned by a random quarter.
DottedGraph relabel(const DottedGraph& g, std::mt19937& rng) {
  const auto& src = g.parts();
  std::vector<int> arc_perm(src.arcs.size()), cross_perm(src.crossings.size()), free_perm(src.free_circles.size());
  std::iota(arc_perm.begin(), arc_perm.end(), 0);
  std::iota(cross_perm.begin(), cross_perm.end(), 0);
  std::iota(free_perm.begin(), free_perm.end(), 0);
  std::shuffle(arc_perm.begin(), arc_perm.end(), rng);
  std::shuffle(cross_perm.begin(), cross_perm.end(), rng);
  std::shuffle(free_perm.begin(), free_perm.end(), rng);
  auto dart = [&](int d) { return 2 * arc_perm[dart_arc(d)] + (d & 1); };
  auto face = [&](FaceRef f) {
    if (f.kind == FaceRefKind::Dart) return FaceRef::dart(dart(f.index));
    if (f.kind == FaceRefKind::FreeInside) return FaceRef::free_inside(free_perm[f.index]);
    return f;
  };
  DiagramParts out;
  out.arcs.resize(src.arcs.size());
  for (std::size_t a = 0; a < src.arcs.size(); ++a) out.arcs[arc_perm[a]].dots = src.arcs[a].dots;
  out.crossings.resize(src.crossings.size());
  for (std::size_t c = 0; c < src.crossings.size(); ++c) {
    const int turn = static_cast<int>(rng() % 4);
    for (int k = 0; k < 4; ++k) {
      ArcEnd e = src.crossings[c].rotation[k];
      e.arc = arc_perm[e.arc];
      out.crossings[cross_perm[c]].rotation[(k + turn) % 4] = e;
    }
  }
  out.free_circles.resize(src.free_circles.size());
  for (std::size_t f = 0; f < src.free_circles.size(); ++f) {
    FreeCircle fc;
    fc.dots = src.free_circles[f].dots;
    fc.sign = src.free_circles[f].sign;
    fc.host = face(src.free_circles[f].host);
    out.free_circles[free_perm[f]] = fc;
  }
  for (const auto& p : src.pieces) out.pieces.push_back({dart(p.outer_dart), face(p.host)});
  std::shuffle(out.pieces.begin(), out.pieces.end(), rng);
  return DottedGraph(std::move(out));
}

LatticePolytope shuffled_polytope(const LatticePolytope& p, std::mt19937& rng) {
  std::vector<std::vector<Corner>> raw;
  for (const auto& c : p.components()) raw.emplace_back(c.corners().begin(), c.corners().end());
  std::shuffle(raw.begin(), raw.end(), rng);
  std::uniform_int_distribution<int> shift(-50, 50);
  const GridPoint off{shift(rng), shift(rng)};
  for (auto& c : raw) {
    std::rotate(c.begin(), c.begin() + 2 * (rng() % (c.size() / 2)), c.end());
    for (auto& k : c) k.point = k.point + off;
  }
  return validate_polytope(raw);
}

void criteria_1_2() {
  const auto r = verify_labels(kLabelSpec, jobs);
  const long long mism = count(r, "label_mismatches"), corner = count(r, "corner_violations");
  std::ostringstream d1, d2;
  d1 << mism << " mismatches (allowed " << kAllowedMismatches << ") over " << r.polytopes << " polytopes, "
     << count(r, "arc_sides_probed") << " arc sides probed [" << spec_text(kLabelSpec) << "]";
  line(1, r.polytopes > 0 && mism <= kAllowedMismatches, "label-oracle equivalence", d1.str());
  d2 << corner << " violations of n+ - n- = 4 over " << count(r, "simple_components") << " simple components";
  line(2, count(r, "simple_components") > 0 && corner == 0, "corner-angle audit", d2.str());
}

void criteria_3_4() {
  const auto r = verify_lemmas(kLemmaSpec, jobs);
  std::ostringstream d3, d4;
  d3 << count(r, "bigon_violations") << " dotless incoherent bigons among " << count(r, "incoherent_bigons")
     << " incoherent bigons, " << r.polytopes << " polytopes [" << spec_text(kLemmaSpec) << "]";
  line(3, r.polytopes > 0 && count(r, "bigon_violations") == 0, "incoherent bigons carry a dot", d3.str());
  d4 << count(r, "crossing_including_violations") << " with <= 1 dot among " << count(r, "crossing_including")
     << " crossing-including components";
  line(4, count(r, "crossing_including_violations") == 0, "crossing-including components carry two dots",
       d4.str());
}

void criterion_5() {
  const auto r = verify_theorem(*parse_theorem_target("thm1"), kThm1Spec, kThm1Budget, jobs);
  std::ostringstream d;
  d << r.instances << " instances, " << r.diagrams << " diagrams, " << count(r, "reduced_to_empty")
    << " reduced to empty, " << count(r, "counterexamples") << " counterexamples, " << r.budget_exhausted
    << " budget exhaustions [" << spec_text(kThm1Spec) << ", depth " << kThm1Budget.max_depth << ", "
    << kThm1Budget.max_nodes << " nodes]";
  line(5, r.pass() && r.diagrams > 0 && count(r, "reduced_to_empty") == r.diagrams, "Theorem 1", d.str());
}

void criterion_6() {
  bool pass = true;
  std::ostringstream d;
  const char* sep = "";
  for (const auto& [name, spec] : {std::pair{"chain3", kChain3Spec}, std::pair{"chain4", kChain4Spec},
                                   std::pair{"ring3", kRing3Spec}}) {
    const auto r = verify_theorem(*parse_theorem_target(name), spec, {}, jobs);
    pass = pass && r.pass() && r.diagrams > 0;
    d << sep << name << " [" << spec_text(spec) << "]: " << r.diagrams << " diagrams, " << count(r, "counterexamples")
      << " counterexamples";
    sep = "; ";
  }
  line(6, pass, "Theorem 2 (good move, bigon label sequence)", d.str());
}

void criterion_7() {
  const auto r = verify_theorem(*parse_theorem_target("thm3"), kThm3Spec, {}, jobs);
  std::ostringstream d;
  d << "scanned [" << spec_text(kThm3Spec) << "] inside the 8-corner census: " << r.diagrams << " diagrams, "
    << count(r, "counterexamples") << " counterexamples";
  if (!r.counterexamples.empty()) {
    std::string p = r.counterexamples.front().polytope;
    while (!p.empty() && p.back() == '\n') p.pop_back();
    std::replace(p.begin(), p.end(), '\n', '/');
    d << ", e.g. " << p;
  } else {
    d << "; the 8-corner census itself was not scanned";
  }
  // Passing needs the whole 8-corner census, which this run does not cover.
  line(7, false, "Theorem 3", d.str());
}

std::set<std::string> census_codes(const EnumSpec& spec, std::vector<DottedGraph>& graphs) {
  std::set<std::string> codes;
  for_each_polytope(spec, {}, 1, [&](std::size_t, const LatticePolytope& p) {
    auto g = extract(p).graph;
    if (codes.insert(canonical_code(g)).second) graphs.push_back(std::move(g));
    return true;
  });
  return codes;
}

void criterion_8() {
  std::vector<DottedGraph> graphs;
  census_codes(kMoveSpec2, graphs);
  census_codes(kMoveSpec3, graphs);
  long long applied = 0, invalid = 0, good_iv = 0, good_iv_bad = 0, certs = 0, bad_certs = 0;
  for (const auto& g : graphs) {
    for (const auto& s : applicable_moves(g)) {
      ++applied;
      try {
        const auto h = apply(g, s);
        const auto again = parse_dg(serialize_dg(h));
        if (canonical_code(again) != canonical_code(h)) ++invalid;
        if (s.kind == MoveKind::IV && is_good_site(g, s)) {
          ++good_iv;
          if (applicable_moves(h, {false, true, MoveKind::III}).empty()) ++good_iv_bad;
        }
      } catch (const std::exception&) {
        ++invalid;
      }
    }
    try {
      if (const auto c = reduce_to_empty(g, {32, 20'000})) {
        ++certs;
        if (!replay(g, *c)) ++bad_certs;
      }
    } catch (const BudgetExceeded&) {
    }
    const auto r = good_reduce(g, {32, 20'000});
    for (const auto& x : r.reduced) {
      ++certs;
      if (!replay(g, x.certificate)) ++bad_certs;
    }
  }
  std::ostringstream d;
  d << graphs.size() << " diagrams [" << spec_text(kMoveSpec2) << "; " << spec_text(kMoveSpec3) << "], "
    << applied << " moves applied, " << invalid << " invalid results, " << good_iv << " good IV with "
    << good_iv_bad << " lacking a III loop, " << certs << " certificates with " << bad_certs << " failed replays";
  line(8, applied > 0 && good_iv > 0 && certs > 0 && invalid + good_iv_bad + bad_certs == 0,
       "rewrite-engine soundness", d.str());
}

void criterion_9(unsigned seed) {
  std::mt19937 rng(seed);
  long long trials = 0, differing = 0, moved = 0;
  std::map<std::string, std::string> code_of;
  for (const auto& name : fixture_names()) {
    const auto p = load_fixture(name);
    const auto g = extract(p).graph;
    const auto code = canonical_code(g);
    code_of[name] = code;
    for (int k = 0; k < kRelabelings; ++k) {
      ++trials;
      const auto h = relabel(g, rng);
      if (h.parts().crossings != g.parts().crossings || h.parts().arcs != g.parts().arcs) ++moved;
      if (canonical_code(h) != code) ++differing;
      ++trials;
      if (canonical_code(extract(shuffled_polytope(p, rng)).graph) != code) ++differing;
    }
  }
  std::set<std::string> distinct;
  for (const auto& [name, code] : code_of) distinct.insert(code);
  std::ostringstream d;
  d << code_of.size() << " fixtures, " << trials << " relabelings/translations (seed " << seed << "), "
    << moved << " relabelings changed the numbering, " << differing << " changed the code; " << distinct.size() << " distinct codes";
  line(9, differing == 0 && moved > 0 && distinct.size() == code_of.size(), "canonical code", d.str());
}

void criterion_10() {
  // IVa with an overlapping region: the lens pair inside an enclosing
  // counterclockwise rectangle, and the same pair after moving the dot across.
  const auto before = parse_poly("D 0 0 X 4 0 D 4 3 X 0 3\nX 3 1 D 3 2 X 7 2 D 7 1\nD -2 -2 X 9 -2 D 9 5 X -2 5\n");
  const auto after = parse_poly("X 0 3 D 0 2 X 7 2 D 7 1 X 3 1 D 3 0 X 4 0 D 4 3\nD -2 -2 X 9 -2 D 9 5 X -2 5\n");
  const auto g = extract(before).graph;
  const auto target = canonical_code(extract(after).graph);
  int matched = 0;
  for (const auto& s : applicable_moves(g, {true, true, MoveKind::IV})) {
    if (!s.split.empty() && canonical_code(apply(g, s)) == target) ++matched;
  }
  const auto g2 = extract(load_fixture("thm1_case2.poly")).graph;
  const auto r = good_reduce(g2);
  std::string trace;
  bool replays = false;
  if (r.reduced.size() == 1 && r.reduced[0].graph.empty()) {
    for (const auto& st : r.reduced[0].certificate.steps) trace += std::string(trace.empty() ? "" : " ") + to_string(st.site.kind);
    replays = replay(g2, r.reduced[0].certificate);
  }
  std::ostringstream d;
  d << "overlapped IVa pair matched by " << matched << " good site(s); case-2 trace '" << trace << "'"
    << (replays ? " replays" : " does not replay");
  line(10, matched == 1 && trace == "IV III III II" && replays, "golden deformations", d.str());
}

void criterion_11() {
  long long polys = 0, poly_bad = 0, dg_bad = 0;
  std::set<std::string> codes;
  for_each_polytope(kLemmaSpec, {}, 1, [&](std::size_t, const LatticePolytope& p) {
    ++polys;
    const auto text = serialize_poly(p);
    const auto back = parse_poly(text);
    if (!(back == p) || serialize_poly(back) != text) ++poly_bad;
    const auto g = extract(p).graph;
    const auto code = canonical_code(g);
    if (codes.insert(code).second) {
      const auto dg = serialize_dg(g);
      const auto h = parse_dg(dg);
      if (serialize_dg(h) != dg || canonical_code(h) != code) ++dg_bad;
    }
    return true;
  });
  auto dump = [](const std::vector<CensusRecord>& rs) {
    std::string s;
    for (const auto& r : rs) s += to_json(r).dump() + "\n";
    return s;
  };
  const auto a = dump(run_census(kCensusSpec, {}, true, 1));
  const auto b = dump(run_census(kCensusSpec, {}, true, 1));
  const auto c = dump(run_census(kCensusSpec, {}, true, std::max(2, jobs)));
  std::ostringstream d;
  d << polys << " .poly and " << codes.size() << " .dg round trips with " << poly_bad + dg_bad
    << " differences; census runs " << (a == b && a == c ? "byte-identical" : "differ") << " (" << a.size()
    << " bytes)";
  line(11, poly_bad + dg_bad == 0 && a == b && a == c && !a.empty(), "round trip and determinism", d.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  unsigned seed = 20241018;
  int jobs_flag = 0;
  std::vector<int> only;
  fixtures_dir = DOTLAB_FIXTURES;
  app.add_option("--seed", seed, "Seed for the randomized relabelings");
  app.add_option("--jobs", jobs_flag, "Worker threads (default DOTLAB_JOBS or 1)");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--fixtures", fixtures_dir, "Fixture directory");
  CLI11_PARSE(app, argc, argv);
  jobs = resolve_jobs(jobs_flag);

  auto want = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  const auto t0 = std::chrono::steady_clock::now();
  if (want(1) || want(2)) criteria_1_2();
  if (want(3) || want(4)) criteria_3_4();
  if (want(5)) criterion_5();
  if (want(6)) criterion_6();
  if (want(7)) criterion_7();
  if (want(8)) criterion_8();
  if (want(9)) criterion_9(seed);
  if (want(10)) criterion_10();
  if (want(11)) criterion_11();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << failures << " criteria failed, " << secs << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
