#include <random>

#include "doctest.h"
#include "dotlab/polytope.hpp"
#include "dotlab/poly_format.hpp"
#include "support.hpp"

using namespace dotlab;
using dotlab::test::fixture;
using dotlab::test::rect;

TEST_CASE("rectangle validates") {
  const auto p = validate_polytope({rect(0, 0, 4, 3, true)});
  CHECK(p.size() == 1);
  CHECK(p.components()[0].size() == 4);
  CHECK(p.components()[0].dot_count() == 2);
}

TEST_CASE("validation errors") {
  SUBCASE("axis") {
    std::vector<Corner> c{{{0, 0}, Mark::X}, {{4, 0}, Mark::Dot}, {{4, 3}, Mark::X}, {{0, 3}, Mark::Dot}};
    try {
      validate_polytope({c});
      FAIL("expected AxisError");
    } catch (const PolytopeError& e) {
      CHECK(e.kind() == PolytopeErrorKind::Axis);
    }
  }
  SUBCASE("shared edge") {
    try {
      validate_polytope({rect(0, 0, 4, 3, true), rect(0, -2, 4, 0, true)});
      FAIL("expected NonGenericError");
    } catch (const PolytopeError& e) {
      CHECK(e.kind() == PolytopeErrorKind::NonGeneric);
    }
  }
  SUBCASE("odd corner count") {
    std::vector<Corner> c{{{0, 0}, Mark::Dot}, {{4, 0}, Mark::X}, {{4, 3}, Mark::Dot}};
    CHECK_THROWS_AS(validate_polytope({c}), PolytopeError);
  }
  SUBCASE("corner on another segment") {
    CHECK_THROWS_AS(validate_polytope({rect(0, 0, 4, 3, true), rect(4, 1, 6, 2, true)}),
                    PolytopeError);
  }
  SUBCASE("alternation with location") {
    try {
      parse_poly(test::read_file(std::string(DOTLAB_FIXTURES) + "/bad_alternation.poly"));
      FAIL("expected AlternationError");
    } catch (const FormatError& e) {
      CHECK(e.kind() == "AlternationError");
      CHECK(e.line() == 1);
      CHECK(e.column() > 1);
    }
  }
}

TEST_CASE("crossings of the two-rectangle fixture") {
  const auto p = fixture("thm1_case2.poly");
  const auto cs = crossings(p);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].point == GridPoint{4, 1});
  CHECK(cs[1].point == GridPoint{4, 2});
  CHECK(crossings(fixture("rectangle.poly")).empty());
  CHECK(crossings(fixture("venn.poly")).size() == 6);
}

TEST_CASE("winding numbers") {
  const auto r = fixture("rectangle.poly");
  CHECK(winding_number(r, HalfPoint::cell_centre(1, 1)) == 1);
  CHECK(winding_number(r, HalfPoint::cell_centre(5, 1)) == 0);
  CHECK_THROWS_AS(winding_number(r, HalfPoint{0, 1}), ProbeOnCurve);
  const auto same = validate_polytope({rect(0, 0, 4, 3, true), rect(3, 1, 7, 2, true)});
  CHECK(winding_number(same, HalfPoint::cell_centre(3, 1)) == 2);
  const auto mixed = fixture("thm1_case2.poly");
  CHECK(winding_number(mixed, HalfPoint::cell_centre(3, 1)) == 0);
  CHECK(winding_number(mixed, HalfPoint::cell_centre(5, 1)) == -1);
}

TEST_CASE("winding is translation invariant and jumps by one across a segment") {
  const auto p = fixture("venn.poly");
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const GridPoint v{d(rng), d(rng)};
    const auto q = p.translated(v);
    for (int x = -2; x < 9; ++x) {
      for (int y = -2; y < 7; ++y) {
        CHECK(winding_number(p, HalfPoint::cell_centre(x, y)) ==
              winding_number(q, HalfPoint::cell_centre(x + v.x, y + v.y)));
      }
    }
  }
  for (const auto& s : p.segments()) {
    const int lo = s.horizontal() ? std::min(s.from.x, s.to.x) : std::min(s.from.y, s.to.y);
    HalfPoint a, b;
    if (s.horizontal()) {
      a = {2 * lo + 1, 2 * s.from.y + 1};
      b = {2 * lo + 1, 2 * s.from.y - 1};
    } else {
      a = {2 * s.from.x + 1, 2 * lo + 1};
      b = {2 * s.from.x - 1, 2 * lo + 1};
    }
    const int diff = winding_number(p, a) - winding_number(p, b);
    CHECK((diff == 1 || diff == -1));
  }
}

TEST_CASE("corner angle audit") {
  CHECK(corner_angle_audit(fixture("rectangle.poly").components()[0]) == CornerAudit{4, 0});
  const std::vector<GridPoint> l{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  CHECK(corner_angle_audit(l) == CornerAudit{5, 1});
  const std::vector<GridPoint> plus{{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}, {2, 2},
                                    {2, 3}, {1, 3}, {1, 2}, {0, 2}, {0, 1}, {1, 1}};
  // Reflex corners of the plus are the four inner corners.
  CHECK(corner_angle_audit(plus) == CornerAudit{8, 4});
  std::vector<GridPoint> reversed(plus.rbegin(), plus.rend());
  CHECK(corner_angle_audit(reversed) == CornerAudit{8, 4});
  CHECK_THROWS_AS(corner_angle_audit(fixture("figure_eight.poly").components()[0]), NotSimple);
}

TEST_CASE("poly round trip") {
  for (const char* name : {"rectangle.poly", "thm1_case2.poly", "venn.poly", "chain3.poly",
                           "l_hexagon.poly", "figure_eight.poly"}) {
    const auto p = fixture(name);
    const auto text = serialize_poly(p);
    CHECK(parse_poly(text) == p);
    CHECK(serialize_poly(parse_poly(text)) == text);
  }
}
