#include "dotlab/extraction.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dotlab {

namespace {

struct Passage {
  int crossing;
  bool horizontal;
  int direction;
  int along;  // coordinate along the segment, for ordering
};

int head_slot(const Passage& p) {
  if (p.horizontal) return p.direction > 0 ? 2 : 0;
  return p.direction > 0 ? 3 : 1;
}

int tail_slot(const Passage& p) { return (head_slot(p) + 2) % 4; }

// Connected regions of the plane minus the polytope, on unit cells of a box one
// cell larger than the polytope on every side. Cell 0 is unbounded.
class CellRegions {
 public:
  explicit CellRegions(const LatticePolytope& polytope) {
    int minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool first = true;
    for (const auto& c : polytope.components()) {
      for (const auto& k : c.corners()) {
        if (first) {
          minx = maxx = k.point.x;
          miny = maxy = k.point.y;
          first = false;
        }
        minx = std::min(minx, k.point.x);
        maxx = std::max(maxx, k.point.x);
        miny = std::min(miny, k.point.y);
        maxy = std::max(maxy, k.point.y);
      }
    }
    ox_ = minx - 1;
    oy_ = miny - 1;
    w_ = maxx - minx + 2;
    h_ = maxy - miny + 2;
    // wall_x_[i][j]: wall on the vertical line x = ox+i between y = oy+j and oy+j+1.
    std::vector<char> wall_x((w_ + 1) * h_, 0), wall_y(w_ * (h_ + 1), 0);
    for (const auto& s : polytope.segments()) {
      if (s.horizontal()) {
        const int j = s.from.y - oy_;
        for (int x = std::min(s.from.x, s.to.x); x < std::max(s.from.x, s.to.x); ++x) {
          wall_y[j * w_ + (x - ox_)] = 1;
        }
      } else {
        const int i = s.from.x - ox_;
        for (int y = std::min(s.from.y, s.to.y); y < std::max(s.from.y, s.to.y); ++y) {
          wall_x[(y - oy_) * (w_ + 1) + i] = 1;
        }
      }
    }
    region_.assign(w_ * h_, -1);
    int next = 0;
    std::vector<int> stack;
    for (int start = 0; start < w_ * h_; ++start) {
      if (region_[start] >= 0) continue;
      region_[start] = next;
      stack.push_back(start);
      while (!stack.empty()) {
        const int cell = stack.back();
        stack.pop_back();
        const int i = cell % w_, j = cell / w_;
        auto visit = [&](int ni, int nj) {
          const int n = nj * w_ + ni;
          if (region_[n] < 0) {
            region_[n] = next;
            stack.push_back(n);
          }
        };
        if (i + 1 < w_ && !wall_x[j * (w_ + 1) + i + 1]) visit(i + 1, j);
        if (i > 0 && !wall_x[j * (w_ + 1) + i]) visit(i - 1, j);
        if (j + 1 < h_ && !wall_y[(j + 1) * w_ + i]) visit(i, j + 1);
        if (j > 0 && !wall_y[j * w_ + i]) visit(i, j - 1);
      }
      ++next;
    }
  }

  // Region of the unit cell with lower-left corner (x, y).
  int at(int x, int y) const { return region_[(y - oy_) * w_ + (x - ox_)]; }

  // Region on the left (side = +1) or right (side = -1) of the unit step from p.
  int beside_step(GridPoint p, int dx, int dy, int side) const {
    const int lx = -dy * side, ly = dx * side;
    if (dx != 0) return at(std::min(p.x, p.x + dx), ly > 0 ? p.y : p.y - 1);
    return at(lx > 0 ? p.x : p.x - 1, std::min(p.y, p.y + dy));
  }

 private:
  int ox_ = 0, oy_ = 0, w_ = 0, h_ = 0;
  std::vector<int> region_;
};

GridPoint unit_step(const Segment& s) {
  if (s.horizontal()) return {s.direction(), 0};
  return {0, s.direction()};
}

}  // namespace

Extraction extract(const LatticePolytope& polytope) {
  Extraction out;
  const auto cps = crossings(polytope);
  out.trace.crossings = cps;
  const int n_comp = static_cast<int>(polytope.size());

  std::vector<std::vector<std::vector<Passage>>> on_segment(n_comp);
  for (int c = 0; c < n_comp; ++c) on_segment[c].resize(polytope.components()[c].size());
  for (int id = 0; id < static_cast<int>(cps.size()); ++id) {
    const auto& cp = cps[id];
    const int hd = cp.horizontal.direction(), vd = cp.vertical.direction();
    on_segment[cp.horizontal.component][cp.horizontal.index].push_back(
        {id, true, hd, cp.point.x * hd});
    on_segment[cp.vertical.component][cp.vertical.index].push_back(
        {id, false, vd, cp.point.y * vd});
  }

  DiagramParts parts;
  parts.crossings.resize(cps.size());
  std::vector<std::vector<int>> seg_first_arc(n_comp);
  std::vector<int> comp_free(n_comp, -1);

  for (int c = 0; c < n_comp; ++c) {
    const auto& comp = polytope.components()[c];
    const int n = static_cast<int>(comp.size());
    seg_first_arc[c].assign(n, -1);
    // Event list: passages on segment i in travel order, then corner i+1.
    struct Event {
      bool is_passage;
      Passage passage;
      int segment;
      Mark mark;
    };
    std::vector<Event> events;
    for (int i = 0; i < n; ++i) {
      auto& ps = on_segment[c][i];
      std::sort(ps.begin(), ps.end(),
                [](const Passage& a, const Passage& b) { return a.along < b.along; });
      for (const auto& p : ps) events.push_back({true, p, i, Mark::X});
      events.push_back({false, {}, (i + 1) % n, comp.corner(i + 1).mark});
    }
    const auto first = std::find_if(events.begin(), events.end(),
                                    [](const Event& e) { return e.is_passage; });
    if (first == events.end()) {
      comp_free[c] = static_cast<int>(parts.free_circles.size());
      FreeCircle fc;
      fc.dots = comp.dot_count();
      fc.sign = comp.signed_area2() > 0 ? 1 : -1;
      parts.free_circles.push_back(fc);
      out.trace.free_circle_component.push_back(c);
      continue;
    }
    std::rotate(events.begin(), first, events.end());
    int current = -1;
    for (std::size_t k = 0; k <= events.size(); ++k) {
      const bool closing = k == events.size();
      const Event& e = closing ? events.front() : events[k];
      if (!e.is_passage) {
        if (e.mark == Mark::Dot) ++parts.arcs[current].dots;
        out.trace.arcs[current].segments.push_back(e.segment);
        seg_first_arc[c][e.segment] = current;
        continue;
      }
      if (current >= 0) {
        parts.crossings[e.passage.crossing].rotation[head_slot(e.passage)] = {current, End::Head};
      }
      if (closing) break;
      current = static_cast<int>(parts.arcs.size());
      parts.arcs.push_back({});
      out.trace.arcs.push_back({c, {e.segment}});
      parts.crossings[e.passage.crossing].rotation[tail_slot(e.passage)] = {current, End::Tail};
    }
  }

  const CellRegions cells(polytope);
  // Leftmost vertical segment of each component; the cell to its left lies outside.
  auto leftmost = [&](int c) {
    const auto segs = polytope.components()[c].corners();
    int best = -1;
    const int n = static_cast<int>(segs.size());
    for (int i = 0; i < n; ++i) {
      const GridPoint a = segs[i].point, b = segs[(i + 1) % n].point;
      if (a.x != b.x) continue;
      if (best < 0 || a.x < segs[best].point.x) best = i;
    }
    return best;
  };
  auto segment_of = [&](int c, int i) {
    const auto& comp = polytope.components()[c];
    return Segment{comp.corner(i).point, comp.corner(i + 1).point, c, i};
  };

  // Components grouped into map pieces: arcs of one piece share crossings.
  std::vector<int> comp_parent(n_comp);
  std::iota(comp_parent.begin(), comp_parent.end(), 0);
  auto root = [&](int x) {
    while (comp_parent[x] != x) x = comp_parent[x] = comp_parent[comp_parent[x]];
    return x;
  };
  for (const auto& cp : cps) {
    const int a = root(cp.horizontal.component), b = root(cp.vertical.component);
    comp_parent[std::max(a, b)] = std::min(a, b);
  }
  // For each map piece (keyed by root component): the outer dart and the outside cell region.
  std::map<int, std::pair<int, int>> piece_outer;  // root -> (dart, region)
  for (int c = 0; c < n_comp; ++c) {
    if (comp_free[c] >= 0) continue;
    const int i = leftmost(c);
    const Segment s = segment_of(c, i);
    auto it = piece_outer.find(root(c));
    const int arc = seg_first_arc[c][i];
    const int dart = s.direction() > 0 ? left_dart(arc) : right_dart(arc);
    const GridPoint st = unit_step(s);
    const int region = cells.beside_step(s.from, st.x, st.y, s.direction() > 0 ? 1 : -1);
    if (it == piece_outer.end()) {
      piece_outer[root(c)] = {dart, region};
    } else {
      // Keep the component reaching furthest left.
      const int old_arc = dart_arc(it->second.first);
      const auto& tr = out.trace.arcs[old_arc];
      const int old_i = leftmost(tr.component);
      if (s.from.x < segment_of(tr.component, old_i).from.x) it->second = {dart, region};
    }
  }
  for (const auto& [r, outer] : piece_outer) {
    parts.pieces.push_back({outer.first, FaceRef::plane()});
  }
  DiagramParts provisional = parts;
  const DottedGraph g0(provisional);

  // Owner of every bounded cell region: a bounded face of a map piece or a free circle inside.
  std::map<int, FaceRef> owner;
  for (const auto& face : g0.faces().faces) {
    if (face.outer) continue;
    const int d = face.darts.front();
    const auto& tr = out.trace.arcs[dart_arc(d)];
    const Segment s = segment_of(tr.component, tr.segments.front());
    const Slot start = g0.arc(dart_arc(d)).tail;
    const GridPoint p = cps[start.crossing].point;
    const GridPoint st = unit_step(s);
    owner[cells.beside_step(p, st.x, st.y, dart_is_left(d) ? 1 : -1)] = FaceRef::dart(d);
  }
  std::vector<int> free_outside(parts.free_circles.size());
  for (int c = 0; c < n_comp; ++c) {
    if (comp_free[c] < 0) continue;
    const Segment s = segment_of(c, leftmost(c));
    const GridPoint st = unit_step(s);
    const int side = s.direction() > 0 ? 1 : -1;
    owner[cells.beside_step(s.from, st.x, st.y, -side)] = FaceRef::free_inside(comp_free[c]);
    free_outside[comp_free[c]] = cells.beside_step(s.from, st.x, st.y, side);
  }
  auto host_of = [&](int region) {
    auto it = owner.find(region);
    return it == owner.end() ? FaceRef::plane() : it->second;
  };
  {
    int k = 0;
    for (const auto& [r, outer] : piece_outer) parts.pieces[k++].host = host_of(outer.second);
  }
  for (std::size_t f = 0; f < parts.free_circles.size(); ++f) {
    parts.free_circles[f].host = host_of(free_outside[f]);
  }
  out.graph = DottedGraph(std::move(parts));
  return out;
}

}  // namespace dotlab
