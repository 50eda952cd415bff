#include <string>

#include "doctest.h"
#include "dotlab/dg_format.hpp"
#include "dotlab/render.hpp"
#include "support.hpp"

using namespace dotlab;
using dotlab::test::fixture;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("empty diagram renders an empty canvas") {
  const auto r = render_diagram_svg(DottedGraph{});
  CHECK_FALSE(r.fallback);
  CHECK(count(r.svg, "<polygon") == 0);
  CHECK(count(r.svg, "<circle") == 0);
  CHECK(r.svg.find("</svg>") != std::string::npos);
}

TEST_CASE("rectangle renders one curve with two dots") {
  const auto r = render_diagram_svg(extract(fixture("rectangle.poly")).graph);
  CHECK_FALSE(r.fallback);
  CHECK(count(r.svg, "class=\"curve\"") == 1);
  CHECK(count(r.svg, "class=\"dot\"") == 2);
  CHECK(count(r.svg, "class=\"crossing\"") == 0);
}

TEST_CASE("venn triple renders three curves and six crossings") {
  const auto g = extract(fixture("venn.poly")).graph;
  const auto r = render_diagram_svg(g);
  CHECK_FALSE(r.fallback);
  CHECK(count(r.svg, "class=\"curve\"") == 3);
  CHECK(count(r.svg, "class=\"crossing\"") == 6);
  // Seven bounded regions, each labelled.
  CHECK(count(r.svg, "class=\"label\"") == 7);
  CHECK(render_diagram_svg(g).svg == r.svg);
}

TEST_CASE("unrealizable diagrams fall back to a schematic") {
  const auto lonely = parse_dg("freecircle 0: dots 1 sign + face plane\n");
  const auto r = render_diagram_svg(lonely);
  CHECK(r.fallback);
  CHECK(r.notice.rfind("LayoutFallbackNotice", 0) == 0);
  CHECK(count(r.svg, "class=\"dot\"") == 1);
}
