#include <algorithm>
#include <random>

#include "doctest.h"
#include "dotlab/canonical.hpp"
#include "dotlab/extraction.hpp"
#include "dotlab/rewrite.hpp"
#include "support.hpp"

using namespace dotlab;
using dotlab::test::fixture;
using dotlab::test::rect;

namespace {

DottedGraph graph_of(const LatticePolytope& p) { return extract(p).graph; }

std::vector<std::string> kinds(const ReductionCertificate& c) {
  std::vector<std::string> out;
  for (const auto& s : c.steps) out.push_back(to_string(s.site.kind));
  return out;
}

// Small generic diagrams: fixtures plus random rectangle arrangements.
std::vector<DottedGraph> sample_diagrams(int count, unsigned seed) {
  std::vector<DottedGraph> out;
  for (const char* name : {"rectangle.poly", "thm1_case1.poly", "thm1_case2.poly", "venn.poly",
                           "chain3.poly", "figure_eight.poly", "l_hexagon.poly"}) {
    out.push_back(graph_of(fixture(name)));
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(0, 9);
  while (static_cast<int>(out.size()) < count) {
    std::vector<std::vector<Corner>> comps;
    const int n = 2 + static_cast<int>(rng() % 2);
    for (int k = 0; k < n; ++k) {
      int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
      if (x0 == x1 || y0 == y1) continue;
      comps.push_back(rect(std::min(x0, x1), std::min(y0, y1), std::max(x0, x1),
                           std::max(y0, y1), rng() % 2 == 0));
    }
    try {
      out.push_back(graph_of(validate_polytope(comps)));
    } catch (const PolytopeError&) {
    }
  }
  return out;
}

// Old arcs that start a strand of the result, in order.
std::vector<int> surviving_starts(const DottedGraph& g, const MoveSite& s) {
  std::vector<bool> gone_arc(g.arc_count(), false), gone_cross(g.crossing_count(), false);
  for (const auto& st : s.path) {
    gone_arc[st.arc] = true;
    gone_cross[g.arc(st.arc).tail.crossing] = gone_cross[g.arc(st.arc).head.crossing] = true;
  }
  std::vector<int> out;
  for (int a = 0; a < g.arc_count(); ++a) {
    if (!gone_arc[a] && !gone_cross[g.arc(a).tail.crossing]) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("rule table") {
  const auto rules = rule_table();
  REQUIRE(rules.size() == 4);
  CHECK(rules[0].kind == MoveKind::I);
  CHECK(rules[0].max_dots == 0);
  CHECK(rules[1].pattern == RulePattern::DeleteCircle);
  CHECK(rules[2].min_dots == 1);
  CHECK(rules[3].pattern == RulePattern::BandSurgery);
}

TEST_CASE("same-orientation lens reduces by two circle deletions") {
  const auto g = graph_of(fixture("thm1_case1.poly"));
  // The lens has label 2, so each circle deletion needs the other circle as overlap.
  CHECK(applicable_moves(g, {false, false, std::nullopt}).empty());
  const auto moves = applicable_moves(g);
  REQUIRE(moves.size() == 2);
  for (const auto& m : moves) {
    CHECK(m.kind == MoveKind::II);
    CHECK_FALSE(m.split.empty());
  }
  const auto r = good_reduce(g);
  REQUIRE(r.reduced.size() == 1);
  CHECK(r.reduced[0].graph.empty());
  CHECK(kinds(r.reduced[0].certificate) == std::vector<std::string>{"II", "II"});
  CHECK(replay(g, r.reduced[0].certificate));
}

TEST_CASE("opposite-orientation lens trace") {
  const auto g = graph_of(fixture("thm1_case2.poly"));
  const auto first = first_good_move(g);
  REQUIRE(first);
  CHECK(first->kind == MoveKind::IV);
  CHECK(first->corner >= 0);
  const auto r = good_reduce(g);
  REQUIRE(r.reduced.size() == 1);
  CHECK(r.reduced[0].graph.empty());
  CHECK(kinds(r.reduced[0].certificate) == std::vector<std::string>{"IV", "III", "III", "II"});
  std::string why;
  CHECK_MESSAGE(replay(g, r.reduced[0].certificate, &why), why);
  const auto back = certificate_from_json(to_json(r.reduced[0].certificate));
  CHECK(replay(g, back));
}

TEST_CASE("band surgery matches the lattice move") {
  // Moving the dot at (0,0) of the first rectangle to the far side of the second
  // rectangle's inner corner reconnects the two arcs across the crescent.
  const auto before = fixture("thm1_case2.poly");
  const auto after =
      parse_poly("X 0 3 D 0 2 X 7 2 D 7 1 X 3 1 D 3 0 X 4 0 D 4 3\n");
  const auto g = graph_of(before);
  const std::string target = canonical_code(graph_of(after));
  int hits = 0;
  for (const auto& s : applicable_moves(g, {false, true, MoveKind::IV})) {
    if (canonical_code(apply(g, s)) == target) ++hits;
  }
  CHECK(hits == 1);

  // Inside a larger counterclockwise rectangle the crescent has label 2 and the
  // same surgery needs the enclosing circle as overlap.
  auto comps = std::vector<std::vector<Corner>>{};
  for (const auto& c : before.components()) comps.emplace_back(c.corners().begin(), c.corners().end());
  comps.push_back(rect(-2, -2, 9, 5, true));
  const auto g2 = graph_of(validate_polytope(comps));
  auto comps_after = std::vector<std::vector<Corner>>{};
  for (const auto& c : after.components()) comps_after.emplace_back(c.corners().begin(), c.corners().end());
  comps_after.push_back(rect(-2, -2, 9, 5, true));
  const std::string target2 = canonical_code(graph_of(validate_polytope(comps_after)));
  CHECK(applicable_moves(g2, {false, false, MoveKind::IV}).empty());
  hits = 0;
  for (const auto& s : applicable_moves(g2, {false, true, MoveKind::IV})) {
    if (canonical_code(apply(g2, s)) != target2) continue;
    ++hits;
    CHECK_FALSE(s.split.empty());
  }
  CHECK(hits == 1);
}

TEST_CASE("stale sites are rejected") {
  const auto g = graph_of(fixture("thm1_case2.poly"));
  auto s = applicable_moves(g).front();
  s.i = 7;
  CHECK_THROWS_AS(apply(g, s), SiteStale);
  const auto h = graph_of(fixture("thm1_case1.poly"));
  CHECK_THROWS_AS(apply(h, applicable_moves(g).front()), SiteStale);
}

TEST_CASE("moves preserve invariants") {
  for (const auto& g : sample_diagrams(60, 5)) {
    const auto& lab = g.labels();
    for (const auto& s : applicable_moves(g)) {
      CHECK(s.epsilon * s.epsilon == 1);
      const DottedGraph h = apply(g, s);
      CHECK(canonical_code(canonical_form(h)) == canonical_code(h));
      if (s.kind == MoveKind::IV) {
        CHECK(h.dot_total() == g.dot_total());
        CHECK(h.crossing_count() == g.crossing_count());
        CHECK(h.arc(h.arc_count() - 2).dots == s.i);
        // Labels away from the band are untouched.
        int k = 0;
        for (int a = 0; a < g.arc_count(); ++a) {
          if (a == s.arc_a || a == s.arc_b) continue;
          for (int side = 0; side < 2; ++side) {
            CHECK(h.labels().total[h.region_of_dart(2 * k + side)] ==
                  lab.total[g.region_of_dart(2 * a + side)]);
          }
          ++k;
        }
        const int facing = s.epsilon > 0 ? 2 * (h.arc_count() - 2) : 2 * (h.arc_count() - 2) + 1;
        CHECK(h.labels().total[h.region_of_dart(facing)] == lab.total[s.region]);
        continue;
      }
      const int removed = s.kind == MoveKind::I ? 0 : s.i;
      CHECK(h.dot_total() == g.dot_total() - removed);
      if (s.free_circle >= 0) {
        CHECK(h.free_circle_count() == g.free_circle_count() - 1);
        continue;
      }
      CHECK(h.crossing_count() < g.crossing_count());
      // Surviving labels drop by the winding of the deleted path.
      const auto wind = path_region_winding(g, s.path);
      const auto starts = surviving_starts(g, s);
      for (std::size_t k = 0; k < starts.size(); ++k) {
        for (int side = 0; side < 2; ++side) {
          const int r = g.region_of_dart(2 * starts[k] + side);
          CHECK(h.labels().total[h.region_of_dart(2 * static_cast<int>(k) + side)] ==
                lab.total[r] - wind[r]);
        }
      }
    }
  }
}

TEST_CASE("good moves are a subset and reductions replay") {
  for (const auto& g : sample_diagrams(40, 9)) {
    const auto all = applicable_moves(g);
    for (const auto& s : applicable_moves(g, {true, true, std::nullopt})) {
      CHECK(s.good);
      CHECK(is_good_site(g, s));
      CHECK(std::count(all.begin(), all.end(), s) == 1);
    }
    const auto r = good_reduce(g, {32, 5000});
    for (const auto& t : r.reduced) {
      CHECK(replay(g, t.certificate));
      CHECK_FALSE(first_good_move(t.graph));
    }
  }
}

TEST_CASE("certificate json round trip") {
  const auto g = graph_of(fixture("venn.poly"));
  for (const auto& s : applicable_moves(g)) CHECK(site_from_json(to_json(s)) == s);
  const auto cert = reduce_to_empty(g);
  if (cert) {
    CHECK(replay(g, certificate_from_json(to_json(*cert))));
    auto broken = *cert;
    broken.steps.back().code = "x";
    std::string why;
    CHECK_FALSE(replay(g, broken, &why));
    CHECK(why.find("code mismatch") != std::string::npos);
  }
}
