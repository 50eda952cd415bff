#include "dotlab/components.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dotlab {

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Circle: return "circle";
    case ComponentKind::Loop: return "loop";
    case ComponentKind::Bigon: return "bigon";
    case ComponentKind::CrossingIncluding: return "crossing-including";
    case ComponentKind::Outermost: return "outermost";
  }
  return "?";
}

namespace {

// Leaving a crossing through `slot`: the arc taken, its travel direction and the
// slot where the walk arrives.
struct Hop {
  PathStep step;
  Slot arrive;
};

Hop hop(const DottedGraph& g, Slot slot) {
  const ArcEnd e = g.crossing(slot.crossing).rotation[slot.index];
  const bool forward = e.end == End::Tail;
  const Arc& a = g.arc(e.arc);
  return {{e.arc, forward}, forward ? a.head : a.tail};
}

int path_dots(const DottedGraph& g, const std::vector<PathStep>& path) {
  int d = 0;
  for (const auto& s : path) d += g.arc(s.arc).dots;
  return d;
}

// Fills disk and winding from the path; returns false unless the path bounds a
// disk with winding +1 or -1.
bool fill_disk(const DottedGraph& g, ComponentWitness& w) {
  const auto wind = path_region_winding(g, w.path);
  int sign = 0;
  for (int r = 0; r < g.region_count(); ++r) {
    if (wind[r] == 0) continue;
    if (wind[r] != 1 && wind[r] != -1) return false;
    if (sign != 0 && wind[r] != sign) return false;
    sign = wind[r];
    w.disk.push_back(r);
  }
  if (sign == 0) return false;
  w.winding = sign;
  return true;
}

ComponentWitness free_circle_witness(const DottedGraph& g, int fc, ComponentKind kind) {
  ComponentWitness w;
  w.kind = kind;
  w.free_circle = fc;
  w.dots = g.free_circle(fc).dots;
  w.winding = g.free_circle(fc).sign;
  w.circle = g.free_circle(fc).circle;
  w.disk = g.regions_within(g.inside_region(fc));
  return w;
}

}  // namespace

std::vector<ComponentWitness> circle_components(const DottedGraph& g) {
  std::vector<ComponentWitness> out;
  for (int c = 0; c < g.circle_count(); ++c) {
    if (!g.circle_is_embedded(c)) continue;
    if (g.circle_free_circle(c) >= 0) {
      out.push_back(free_circle_witness(g, g.circle_free_circle(c), ComponentKind::Circle));
      continue;
    }
    ComponentWitness w;
    w.kind = ComponentKind::Circle;
    w.circle = c;
    for (int a : g.circle_arcs(c)) {
      w.path.push_back({a, true});
      w.crossings.push_back(g.arc(a).head.crossing);
    }
    w.dots = path_dots(g, w.path);
    fill_disk(g, w);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<ComponentWitness> loop_components(const DottedGraph& g) {
  std::vector<ComponentWitness> out;
  const int n = g.crossing_count();
  std::vector<int> seen(n, -1);
  int stamp = 0;
  for (int c = 0; c < n; ++c) {
    for (int e = 0; e < 4; ++e) {
      if (g.crossing(c).rotation[e].end != End::Tail) continue;
      ++stamp;
      seen[c] = stamp;
      ComponentWitness w;
      w.kind = ComponentKind::Loop;
      w.crossings.push_back(c);
      Slot at{c, e};
      bool ok = true;
      while (true) {
        const Hop h = hop(g, at);
        w.path.push_back(h.step);
        if (h.arrive.crossing == c) {
          // Back at the base through the same strand: the circle does not cross itself here.
          ok = h.arrive.index != (e + 2) % 4;
          break;
        }
        if (seen[h.arrive.crossing] == stamp) {
          ok = false;
          break;
        }
        seen[h.arrive.crossing] = stamp;
        w.crossings.push_back(h.arrive.crossing);
        at = {h.arrive.crossing, (h.arrive.index + 2) % 4};
      }
      if (!ok || !fill_disk(g, w)) continue;
      w.circle = g.arc(w.path.front().arc).circle;
      w.dots = path_dots(g, w.path);
      w.turning = {c};
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<ComponentWitness> bigon_components(const DottedGraph& g) {
  std::vector<ComponentWitness> out;
  std::set<std::vector<int>> found;
  const int n = g.crossing_count();
  auto contains = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (int c1 = 0; c1 < n; ++c1) {
    for (int k = 0; k < 4; ++k) {
      // Side one leaves c1 through slot k; the disk is the quadrant (k, k+1) on its left.
      std::vector<PathStep> side1;
      std::vector<int> side1_cross{c1};
      Slot at{c1, k};
      for (int guard = 0; guard <= n; ++guard) {
        const Hop h = hop(g, at);
        side1.push_back(h.step);
        const int c2 = h.arrive.crossing;
        if (contains(side1_cross, c2)) break;
        // Turn left at c2 and run straight back to c1.
        std::vector<PathStep> side2;
        std::vector<int> side2_cross{c2};
        Slot at2{c2, (h.arrive.index + 3) % 4};
        bool closed = false;
        for (int guard2 = 0; guard2 <= n; ++guard2) {
          const Hop h2 = hop(g, at2);
          side2.push_back(h2.step);
          const int c = h2.arrive.crossing;
          if (c == c1) {
            closed = h2.arrive.index == (k + 1) % 4;
            break;
          }
          if (contains(side1_cross, c) || contains(side2_cross, c)) break;
          side2_cross.push_back(c);
          at2 = {c, (h2.arrive.index + 2) % 4};
        }
        if (closed) {
          ComponentWitness w;
          w.kind = ComponentKind::Bigon;
          w.path = side1;
          w.path.insert(w.path.end(), side2.begin(), side2.end());
          std::vector<int> key;
          for (const auto& s : w.path) key.push_back(s.arc);
          std::sort(key.begin(), key.end());
          if (!found.count(key) && fill_disk(g, w) && w.winding == 1) {
            found.insert(key);
            w.crossings = side1_cross;
            w.crossings.insert(w.crossings.end(), side2_cross.begin(), side2_cross.end());
            w.sides = {side1, side2};
            w.side_dots = {path_dots(g, side1), path_dots(g, side2)};
            w.corners = {c1, c2};
            w.turning = {c1, c2};
            w.dots = w.side_dots[0] + w.side_dots[1];
            w.coherent = side1.front().forward == side2.front().forward;
            out.push_back(std::move(w));
          }
        }
        side1_cross.push_back(c2);
        at = {c2, (h.arrive.index + 2) % 4};
      }
    }
  }
  return out;
}

std::vector<ComponentWitness> crossing_including_components(const DottedGraph& g) {
  std::vector<ComponentWitness> out;
  const int n = g.crossing_count();
  std::vector<bool> on_path(n, false);
  std::vector<PathStep> path;
  std::vector<int> cross;
  std::vector<int> turning;

  // Depth-first search over simple cycles whose lowest crossing is c0, moving
  // straight or turning right so the disk on the left holds all four arcs.
  auto dfs = [&](auto&& self, int c0, int e0, Slot at) -> void {
    const Hop h = hop(g, at);
    path.push_back(h.step);
    const int c = h.arrive.crossing;
    const int s = h.arrive.index;
    if (c == c0) {
      const bool straight = e0 == (s + 2) % 4;
      if (straight || e0 == (s + 1) % 4) {
        ComponentWitness w;
        w.kind = ComponentKind::CrossingIncluding;
        w.path = path;
        if (fill_disk(g, w) && w.winding == 1) {
          w.crossings = cross;
          w.turning = turning;
          if (!straight) w.turning.insert(w.turning.begin(), c0);
          w.dots = path_dots(g, w.path);
          out.push_back(std::move(w));
        }
      }
    } else if (c > c0 && !on_path[c]) {
      on_path[c] = true;
      cross.push_back(c);
      self(self, c0, e0, Slot{c, (s + 2) % 4});
      turning.push_back(c);
      self(self, c0, e0, Slot{c, (s + 1) % 4});
      turning.pop_back();
      cross.pop_back();
      on_path[c] = false;
    }
    path.pop_back();
  };
  for (int c0 = 0; c0 < n; ++c0) {
    on_path[c0] = true;
    cross.assign(1, c0);
    for (int e0 = 0; e0 < 4; ++e0) dfs(dfs, c0, e0, Slot{c0, e0});
    on_path[c0] = false;
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    out.push_back(free_circle_witness(g, f, ComponentKind::CrossingIncluding));
  }
  return out;
}

std::vector<ComponentWitness> outermost_components(const DottedGraph& g) {
  std::vector<ComponentWitness> out;
  for (auto& w : crossing_including_components(g)) {
    // Every crossing must be a turn: a straight passage lets the other strand leave the disk.
    if (w.free_circle < 0 && w.turning.size() != w.crossings.size()) continue;
    w.kind = ComponentKind::Outermost;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<int> sub_diagram_classes(const DottedGraph& g, const std::vector<bool>& keep) {
  const int R = g.region_count();
  std::vector<int> parent(R);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (int a = 0; a < g.arc_count(); ++a) {
    if (!keep[g.arc(a).circle]) unite(g.region_of_dart(left_dart(a)), g.region_of_dart(right_dart(a)));
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    if (!keep[g.free_circle(f).circle]) {
      unite(g.inside_region(f), g.faces().pieces[g.piece_of_free_circle(f)].host_region);
    }
  }
  std::vector<int> cls(R);
  for (int r = 0; r < R; ++r) cls[r] = root(r);
  return cls;
}

OverlapRelation overlapped_regions(const DottedGraph& g, const std::vector<bool>& in_first) {
  const int R = g.region_count();
  const int K = g.circle_count();
  std::vector<bool> in_second(K);
  for (int k = 0; k < K; ++k) in_second[k] = !in_first[k];
  auto label_in = [&](int r, const std::vector<bool>& part) {
    int total = 0;
    for (int k = 0; k < K; ++k) {
      if (part[k]) total += g.labels().at(r, k);
    }
    return total;
  };
  auto collect = [&](const std::vector<bool>& part, std::vector<int>* label_of_region) {
    const auto cls = sub_diagram_classes(g, part);
    std::vector<SubRegion> subs;
    std::vector<int> index(R, -1);
    label_of_region->assign(R, 0);
    for (int r = 0; r < R; ++r) {
      const int lab = label_in(r, part);
      (*label_of_region)[r] = lab;
      if (lab == 0) continue;
      if (index[cls[r]] < 0) {
        index[cls[r]] = static_cast<int>(subs.size());
        subs.push_back({lab, {}});
      }
      subs[index[cls[r]]].regions.push_back(r);
    }
    return subs;
  };
  OverlapRelation rel;
  std::vector<int> first_label, second_label;
  rel.first = collect(in_first, &first_label);
  rel.second = collect(in_second, &second_label);
  for (std::size_t i = 0; i < rel.first.size(); ++i) {
    const auto& r1 = rel.first[i].regions;
    for (std::size_t j = 0; j < rel.second.size(); ++j) {
      const auto& r2 = rel.second[j].regions;
      bool meet = false;
      bool rest = false;
      bool rest_zero = true;
      for (int r : r2) {
        if (std::binary_search(r1.begin(), r1.end(), r)) {
          meet = true;
        } else {
          rest = true;
          if (first_label[r] != 0) rest_zero = false;
        }
      }
      if (meet && rest && rest_zero) rel.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return rel;
}

}  // namespace dotlab
