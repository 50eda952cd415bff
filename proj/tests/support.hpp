#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dotlab/poly_format.hpp"

namespace dotlab::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LatticePolytope fixture(const std::string& name) {
  return parse_poly(read_file(std::string(DOTLAB_FIXTURES) + "/" + name));
}

inline std::vector<Corner> rect(int x0, int y0, int x1, int y1, bool ccw) {
  if (ccw) return {{{x0, y0}, Mark::Dot}, {{x1, y0}, Mark::X}, {{x1, y1}, Mark::Dot}, {{x0, y1}, Mark::X}};
  return {{{x0, y0}, Mark::X}, {{x0, y1}, Mark::Dot}, {{x1, y1}, Mark::X}, {{x1, y0}, Mark::Dot}};
}

}  // namespace dotlab::test

#include "dotlab/extraction.hpp"

namespace dotlab::test {

// Probe at the centre of the unit cell beside the first unit step of a dart.
inline HalfPoint dart_probe(const Extraction& ex, const LatticePolytope& p, int dart) {
  const auto& g = ex.graph;
  const auto& tr = ex.trace.arcs[dart_arc(dart)];
  const auto& comp = p.components()[tr.component];
  const int seg = tr.segments.front();
  const GridPoint a = comp.corner(seg).point, b = comp.corner(seg + 1).point;
  const GridPoint start = ex.trace.crossings[g.arc(dart_arc(dart)).tail.crossing].point;
  const int dx = (b.x > a.x) - (b.x < a.x), dy = (b.y > a.y) - (b.y < a.y);
  const int side = dart_is_left(dart) ? 1 : -1;
  // Midpoint of the unit step, pushed half a unit sideways.
  return {2 * start.x + dx - dy * side, 2 * start.y + dy + dx * side};
}

// Number of regions whose combinatorial label differs from the geometric winding.
inline int label_mismatches(const LatticePolytope& p, const Extraction& ex) {
  const auto& g = ex.graph;
  int bad = 0;
  for (int d = 0; d < 2 * g.arc_count(); ++d) {
    if (winding_number(p, dart_probe(ex, p, d)) != g.labels().total[g.region_of_dart(d)]) ++bad;
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    const auto& comp = p.components()[ex.trace.free_circle_component[f]];
    const GridPoint a = comp.corner(0).point, b = comp.corner(1).point;
    const int dx = (b.x > a.x) - (b.x < a.x), dy = (b.y > a.y) - (b.y < a.y);
    const int side = comp.signed_area2() > 0 ? 1 : -1;  // interior is on the left when counterclockwise
    const HalfPoint in{2 * a.x + dx - dy * side, 2 * a.y + dy + dx * side};
    const HalfPoint out{2 * a.x + dx + dy * side, 2 * a.y + dy - dx * side};
    if (winding_number(p, in) != g.labels().total[g.inside_region(f)]) ++bad;
    const int host = g.faces().pieces[g.piece_of_free_circle(f)].host_region;
    if (winding_number(p, out) != g.labels().total[host]) ++bad;
  }
  return bad;
}

}  // namespace dotlab::test
