#include "dotlab/render.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace dotlab {

namespace {

constexpr int kScale = 40;
constexpr int kMargin = 30;

struct Canvas {
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  int px(double x) const { return kMargin + static_cast<int>((x - min_x) * kScale); }
  int py(double y) const { return kMargin + static_cast<int>((max_y - y) * kScale); }
  int width() const { return 2 * kMargin + (max_x - min_x) * kScale; }
  int height() const { return 2 * kMargin + (max_y - min_y) * kScale; }
};

void open_svg(std::ostringstream& out, int w, int h) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
      << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>\n";
}

std::string signed_label(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

HalfPoint beside(GridPoint from, GridPoint to, bool left) {
  const int dx = (to.x > from.x) - (to.x < from.x), dy = (to.y > from.y) - (to.y < from.y);
  const int side = left ? 1 : -1;
  return {2 * from.x + dx - dy * side, 2 * from.y + dy + dx * side};
}

}  // namespace

std::string render_polytope_svg(const LatticePolytope& p) {
  std::ostringstream out;
  if (p.empty()) {
    open_svg(out, 2 * kMargin, 2 * kMargin);
    out << "</svg>\n";
    return out.str();
  }
  Canvas cv{INT_MAX, INT_MAX, INT_MIN, INT_MIN};
  for (const auto& c : p.components()) {
    for (const auto& k : c.corners()) {
      cv.min_x = std::min(cv.min_x, k.point.x);
      cv.max_x = std::max(cv.max_x, k.point.x);
      cv.min_y = std::min(cv.min_y, k.point.y);
      cv.max_y = std::max(cv.max_y, k.point.y);
    }
  }
  open_svg(out, cv.width(), cv.height());

  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& c = p.components()[i];
    out << "<polygon class=\"curve\" data-component=\"" << i << "\" points=\"";
    for (std::size_t k = 0; k < c.size(); ++k) {
      out << (k ? " " : "") << cv.px(c.corner(k).point.x) << ',' << cv.py(c.corner(k).point.y);
    }
    out << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    // Orientation: an arrow at the middle of the first segment.
    const auto a = c.corner(0).point, b = c.corner(1).point;
    const double mx = (a.x + b.x) / 2.0, my = (a.y + b.y) / 2.0;
    const double ex = mx + 0.01 * ((b.x > a.x) - (b.x < a.x)), ey = my + 0.01 * ((b.y > a.y) - (b.y < a.y));
    out << "<line class=\"orientation\" x1=\"" << cv.px(mx) << "\" y1=\"" << cv.py(my) << "\" x2=\""
        << cv.px(ex) << "\" y2=\"" << cv.py(ey) << "\" stroke=\"black\" marker-end=\"url(#arrow)\"/>\n";
  }
  for (const auto& c : p.components()) {
    for (const auto& k : c.corners()) {
      const int x = cv.px(k.point.x), y = cv.py(k.point.y);
      if (k.mark == Mark::Dot) {
        out << "<circle class=\"dot\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"black\"/>\n";
      } else {
        out << "<path class=\"x-mark\" d=\"M" << x - 4 << ',' << y - 4 << " L" << x + 4 << ',' << y + 4
            << " M" << x - 4 << ',' << y + 4 << " L" << x + 4 << ',' << y - 4
            << "\" stroke=\"gray\" stroke-width=\"1.5\"/>\n";
      }
    }
  }
  for (const auto& x : crossings(p)) {
    out << "<circle class=\"crossing\" cx=\"" << cv.px(x.point.x) << "\" cy=\"" << cv.py(x.point.y)
        << "\" r=\"3\" fill=\"white\" stroke=\"black\"/>\n";
  }

  // One label per region, at a probe half a unit beside one of its arcs.
  const auto ex = extract(p);
  const auto& g = ex.graph;
  std::vector<bool> placed(g.region_count(), false);
  placed[0] = true;  // the plane
  auto label_at = [&](int region, HalfPoint h) {
    if (placed[region]) return;
    placed[region] = true;
    out << "<text class=\"label\" x=\"" << cv.px(h.x2 / 2.0) << "\" y=\"" << cv.py(h.y2 / 2.0)
        << "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
        << signed_label(g.labels().total[region]) << "</text>\n";
  };
  for (int a = 0; a < g.arc_count(); ++a) {
    const auto& tr = ex.trace.arcs[a];
    const auto& comp = p.components()[tr.component];
    const GridPoint start = ex.trace.crossings[g.arc(a).tail.crossing].point;
    const GridPoint toward = comp.corner(tr.segments.front() + 1).point;
    label_at(g.region_of_dart(left_dart(a)), beside(start, toward, true));
    label_at(g.region_of_dart(right_dart(a)), beside(start, toward, false));
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    const auto& comp = p.components()[ex.trace.free_circle_component[f]];
    label_at(g.inside_region(f), beside(comp.corner(0).point, comp.corner(1).point, comp.signed_area2() > 0));
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

std::string schematic_svg(const DottedGraph& g) {
  const int n = g.crossing_count();
  const int m = g.arc_count();
  const int spacing = 60;
  const int base_y = kMargin + 30 * (m + 1);
  const int free_top = 2 * base_y;
  const int width = 2 * kMargin + std::max(1, std::max(n, g.free_circle_count())) * spacing;
  const int height = free_top + (g.free_circle_count() ? 60 : 0) + kMargin;
  std::ostringstream out;
  open_svg(out, width, height);
  auto cx = [&](int c) { return kMargin + spacing / 2 + c * spacing; };
  for (int a = 0; a < m; ++a) {
    const auto& arc = g.arc(a);
    // Alternate sides so parallel arcs between the same crossings stay apart.
    const int lift = 30 * (a / 2 + 1) * (a % 2 ? 1 : -1);
    const int x1 = cx(arc.tail.crossing) + 4 * (arc.tail.index - 1);
    const int x2 = cx(arc.head.crossing) + 4 * (arc.head.index - 1);
    const int y = base_y + lift;
    out << "<polyline class=\"arc\" data-arc=\"" << a << "\" points=\"" << x1 << ',' << base_y << ' ' << x1 << ','
        << y << ' ' << x2 << ',' << y << ' ' << x2 << ',' << base_y
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" marker-mid=\"url(#arrow)\"/>\n";
    for (int d = 0; d < arc.dots; ++d) {
      const int x = x1 + (x2 - x1) * (d + 1) / (arc.dots + 1);
      out << "<circle class=\"dot\" cx=\"" << (x1 == x2 ? x1 : x) << "\" cy=\"" << y << "\" r=\"5\" fill=\"black\"/>\n";
    }
  }
  for (int c = 0; c < n; ++c) {
    out << "<circle class=\"crossing\" cx=\"" << cx(c) << "\" cy=\"" << base_y
        << "\" r=\"8\" fill=\"white\" stroke=\"black\"/>\n";
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    const auto& fc = g.free_circle(f);
    const int x = cx(f) - 20;
    out << "<rect class=\"free-circle\" x=\"" << x << "\" y=\"" << free_top << "\" width=\"40\" height=\"40\" "
        << "fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (int d = 0; d < fc.dots; ++d) {
      out << "<circle class=\"dot\" cx=\"" << x + 40 * (d + 1) / (fc.dots + 1) << "\" cy=\"" << free_top
          << "\" r=\"5\" fill=\"black\"/>\n";
    }
    out << "<text class=\"label\" x=\"" << x + 20 << "\" y=\"" << free_top + 24
        << "\" font-size=\"12\" text-anchor=\"middle\">" << signed_label(fc.sign) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

RenderedDiagram render_diagram_svg(const DottedGraph& g, const RealizationBounds& bounds) {
  RenderedDiagram r;
  std::string why;
  try {
    if (auto p = find_realization(g, bounds)) {
      r.svg = render_polytope_svg(*p);
      return r;
    }
    why = "no lattice realization within bounds";
  } catch (const BudgetExceeded& e) {
    why = e.what();
  }
  r.fallback = true;
  r.notice = "LayoutFallbackNotice: " + why + "; drawing a schematic layout";
  r.svg = schematic_svg(g);
  return r;
}

}  // namespace dotlab
