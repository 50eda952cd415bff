#include <algorithm>
#include <random>

#include "doctest.h"
#include "dotlab/canonical.hpp"
#include "dotlab/components.hpp"
#include "dotlab/dg_format.hpp"
#include "dotlab/extraction.hpp"
#include "support.hpp"

using namespace dotlab;
using dotlab::test::fixture;
using dotlab::test::rect;

namespace {

DottedGraph extract_fixture(const char* name) { return extract(fixture(name)).graph; }

std::vector<int> sorted_totals(const DottedGraph& g) {
  std::vector<int> out(g.labels().total.begin() + 1, g.labels().total.end());
  std::sort(out.begin(), out.end());
  return out;
}

int arc_between(const Extraction& ex, int circle_component, int dots) {
  for (int a = 0; a < ex.graph.arc_count(); ++a) {
    if (ex.trace.arcs[a].component == circle_component && ex.graph.arc(a).dots == dots) return a;
  }
  return -1;
}

}  // namespace

TEST_CASE("rectangle extracts to a free circle") {
  const auto g = extract_fixture("rectangle.poly");
  CHECK(g.crossing_count() == 0);
  REQUIRE(g.free_circle_count() == 1);
  CHECK(g.free_circle(0).dots == 2);
  CHECK(g.free_circle(0).sign == 1);
  CHECK(g.region_count() == 2);
  CHECK(g.labels().total == std::vector<int>{0, 1});
}

TEST_CASE("two-rectangle fixture") {
  const auto p = fixture("thm1_case2.poly");
  const auto ex = extract(p);
  const auto& g = ex.graph;
  CHECK(g.crossing_count() == 2);
  CHECK(g.arc_count() == 4);
  CHECK(g.region_count() == 4);
  std::vector<int> dots;
  for (int a = 0; a < 4; ++a) dots.push_back(g.arc(a).dots);
  // C1 outside 2, C1 inside 0, C2 inside 1, C2 outside 1.
  std::vector<int> c1, c2;
  for (int a = 0; a < 4; ++a) (ex.trace.arcs[a].component == 0 ? c1 : c2).push_back(g.arc(a).dots);
  std::sort(c1.begin(), c1.end());
  std::sort(c2.begin(), c2.end());
  CHECK(c1 == std::vector<int>{0, 2});
  CHECK(c2 == std::vector<int>{1, 1});
  CHECK(sorted_totals(g) == std::vector<int>{-1, 0, 1});
  CHECK(test::label_mismatches(p, ex) == 0);
  CHECK(arc_between(ex, 0, 2) >= 0);
}

TEST_CASE("same-orientation lens labels") {
  const auto p = fixture("thm1_case1.poly");
  const auto ex = extract(p);
  CHECK(sorted_totals(ex.graph) == std::vector<int>{1, 1, 2});
  CHECK(test::label_mismatches(p, ex) == 0);
}

TEST_CASE("venn triple") {
  const auto p = fixture("venn.poly");
  const auto ex = extract(p);
  const auto& g = ex.graph;
  CHECK(g.crossing_count() == 6);
  CHECK(g.arc_count() == 12);
  CHECK(g.region_count() == 8);
  CHECK(test::label_mismatches(p, ex) == 0);
  CHECK(circle_components(g).size() == 3);
}

TEST_CASE("figure eight") {
  const auto p = fixture("figure_eight.poly");
  const auto ex = extract(p);
  const auto& g = ex.graph;
  CHECK(g.crossing_count() == 1);
  CHECK(g.arc_count() == 2);
  CHECK(g.region_count() == 3);
  CHECK(circle_components(g).empty());
  CHECK(loop_components(g).size() == 2);
  CHECK(test::label_mismatches(p, ex) == 0);
}

TEST_CASE("nested free circles") {
  const auto p = validate_polytope({rect(0, 0, 9, 9, true), rect(2, 2, 5, 5, false),
                                    rect(3, 3, 4, 4, true), rect(6, 1, 8, 8, true)});
  const auto ex = extract(p);
  const auto& g = ex.graph;
  CHECK(g.free_circle_count() == 4);
  CHECK(g.region_count() == 5);
  CHECK(test::label_mismatches(p, ex) == 0);
  const auto rel = overlapped_regions(g, {true, false, false, false});
  CHECK(rel.pairs.empty());
}

TEST_CASE("components of the lens diagram") {
  const auto g = extract_fixture("thm1_case2.poly");
  CHECK(circle_components(g).size() == 2);
  CHECK(loop_components(g).empty());
  // The lens and the two crescents each meet the bigon definition.
  const auto bigons = bigon_components(g);
  REQUIRE(bigons.size() == 3);
  const auto lens = std::find_if(bigons.begin(), bigons.end(), [&](const ComponentWitness& w) {
    return w.disk.size() == 1 && g.labels().total[w.disk[0]] == 0;
  });
  REQUIRE(lens != bigons.end());
  // Opposite rotations run parallel along the lens, so the bigon is not a coherent circle.
  CHECK_FALSE(lens->coherent);
  CHECK(lens->dots == 1);
  const auto ci = crossing_including_components(g);
  // Both circles and the outer boundary of their union.
  CHECK(ci.size() == 3);
  const auto outer = outermost_components(g);
  REQUIRE(outer.size() == 1);
  CHECK(outer[0].disk.size() == 3);
  CHECK(outer[0].dots == 3);

  const auto same = extract_fixture("thm1_case1.poly");
  for (const auto& w : bigon_components(same)) {
    if (same.labels().total[w.disk[0]] == 2) CHECK(w.coherent);
  }
}

TEST_CASE("overlap relation on the lens diagram") {
  const auto ex = extract(fixture("thm1_case2.poly"));
  const auto& g = ex.graph;
  const int c2 = g.arc(std::find_if(ex.trace.arcs.begin(), ex.trace.arcs.end(),
                                    [](const ArcTrace& t) { return t.component == 1; }) -
                       ex.trace.arcs.begin())
                     .circle;
  std::vector<bool> first(g.circle_count(), false);
  first[c2] = true;
  const auto rel = overlapped_regions(g, first);
  REQUIRE(rel.first.size() == 1);
  REQUIRE(rel.second.size() == 1);
  CHECK(rel.first[0].label == -1);
  CHECK(rel.second[0].label == 1);
  CHECK(rel.pairs.size() == 1);
}

TEST_CASE("canonical code invariance") {
  const auto p = fixture("venn.poly");
  const auto code = canonical_code(extract(p).graph);
  CHECK(code == canonical_code(extract(p.translated({5, -3})).graph));
  // Component order and starting corner do not matter.
  std::vector<std::vector<Corner>> raw;
  for (const auto& c : p.components()) raw.emplace_back(c.corners().begin(), c.corners().end());
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(raw.begin(), raw.end(), rng);
    for (auto& c : raw) std::rotate(c.begin(), c.begin() + 2 * (rng() % 2), c.end());
    CHECK(canonical_code(extract(validate_polytope(raw)).graph) == code);
  }
  CHECK(canonical_code(extract_fixture("thm1_case1.poly")) !=
        canonical_code(extract_fixture("thm1_case2.poly")));
  const auto two = extract(validate_polytope({rect(0, 0, 4, 3, true)})).graph;
  std::vector<Corner> three{{{0, 0}, Mark::Dot}, {{4, 0}, Mark::X}, {{4, 3}, Mark::Dot},
                            {{2, 3}, Mark::X}, {{2, 4}, Mark::Dot}, {{0, 4}, Mark::X}};
  CHECK(canonical_code(two) != canonical_code(extract(validate_polytope({three})).graph));
}

TEST_CASE("dg round trip") {
  for (const char* name : {"rectangle.poly", "thm1_case2.poly", "venn.poly", "chain3.poly",
                           "figure_eight.poly"}) {
    const auto g = extract_fixture(name);
    const auto text = serialize_dg(g);
    const auto back = parse_dg(text);
    CHECK(canonical_code(back) == canonical_code(g));
    CHECK(serialize_dg(back) == text);
  }
  const auto nested = extract(validate_polytope(
      {rect(0, 0, 9, 9, true), rect(2, 2, 5, 5, false), rect(3, 3, 4, 4, true)}));
  const auto text = serialize_dg(nested.graph);
  CHECK(serialize_dg(parse_dg(text)) == text);
}
