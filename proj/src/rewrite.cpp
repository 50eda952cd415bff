#include "dotlab/rewrite.hpp"

#include <algorithm>
#include <limits>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "dotlab/canonical.hpp"

namespace dotlab {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::I: return "I";
    case MoveKind::II: return "II";
    case MoveKind::III: return "III";
    case MoveKind::IV: return "IV";
  }
  return "?";
}

namespace {

constexpr std::array<Rule, 4> kRules{{
    {MoveKind::I, RulePattern::DeleteLoop, 0, 0, "loop without dots bounding a disk of label e",
     "the strand without the loop"},
    {MoveKind::II, RulePattern::DeleteCircle, 1, -1,
     "circle component with i dots bounding a disk of label e", "nothing"},
    {MoveKind::III, RulePattern::DeleteLoop, 1, -1, "loop with i dots bounding a disk of label e",
     "the strand without the loop"},
    {MoveKind::IV, RulePattern::BandSurgery, 1, -1,
     "arcs A, B with dots facing a region of label e, both oriented with it on the same side",
     "arcs A1B2 with i dots and B1A2 with the rest"},
}};

bool in_range(const Rule& r, int dots) {
  return dots >= r.min_dots && (r.max_dots < 0 || dots <= r.max_dots);
}

MoveKind parse_kind(const std::string& s) {
  for (MoveKind k : {MoveKind::I, MoveKind::II, MoveKind::III, MoveKind::IV}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown move kind: " + s);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Dart orbits of a bare rotation system.
struct RawMap {
  std::vector<Slot> tail, head;
  std::vector<int> orbit;
  std::vector<std::vector<int>> orbits;
};

RawMap raw_map(const std::vector<Crossing>& crossings, int n_arcs) {
  RawMap m;
  m.tail.resize(n_arcs);
  m.head.resize(n_arcs);
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    for (int s = 0; s < 4; ++s) {
      const ArcEnd e = crossings[c].rotation[s];
      (e.end == End::Tail ? m.tail : m.head)[e.arc] = {c, s};
    }
  }
  auto next = [&](int d) {
    const Slot s = dart_is_left(d) ? m.head[dart_arc(d)] : m.tail[dart_arc(d)];
    const ArcEnd e = crossings[s.crossing].rotation[(s.index + 3) % 4];
    return e.end == End::Tail ? left_dart(e.arc) : right_dart(e.arc);
  };
  m.orbit.assign(2 * n_arcs, -1);
  for (int d0 = 0; d0 < 2 * n_arcs; ++d0) {
    if (m.orbit[d0] >= 0) continue;
    const int id = static_cast<int>(m.orbits.size());
    m.orbits.emplace_back();
    int d = d0;
    do {
      m.orbit[d] = id;
      m.orbits[id].push_back(d);
      d = next(d);
    } while (d != d0);
  }
  return m;
}

// A diagram under reconstruction. Every dart and free circle side carries a
// fragment of the old plane; fragments merged by the move share a class, and each
// class becomes one region of the result.
struct Rebuild {
  struct Loose {
    int dots = 0;
    int left = 0;
    int right = 0;
  };

  std::vector<Crossing> crossings;
  std::vector<int> dots;
  std::vector<int> dart_frag;
  std::vector<Loose> frees;
  UnionFind frags;
  int plane_frag = 0;

  DottedGraph finish();
};

DottedGraph Rebuild::finish() {
  const int n_arcs = static_cast<int>(dots.size());
  const RawMap m = raw_map(crossings, n_arcs);

  UnionFind pu(n_arcs);
  for (const auto& c : crossings) {
    for (int s = 1; s < 4; ++s) pu.unite(c.rotation[0].arc, c.rotation[s].arc);
  }
  std::vector<int> piece_of(n_arcs);
  std::map<int, int> piece_id;
  for (int a = 0; a < n_arcs; ++a) {
    piece_of[a] = piece_id.emplace(pu.find(a), static_cast<int>(piece_id.size())).first->second;
  }
  const int n_pieces = static_cast<int>(piece_id.size());
  std::vector<std::vector<int>> piece_orbits(n_pieces);
  for (int o = 0; o < static_cast<int>(m.orbits.size()); ++o) {
    piece_orbits[piece_of[dart_arc(m.orbits[o][0])]].push_back(o);
  }

  std::vector<int> orbit_class(m.orbits.size());
  std::map<int, std::vector<int>> class_orbits, class_frees;
  for (int o = 0; o < static_cast<int>(m.orbits.size()); ++o) {
    const int c = frags.find(dart_frag[m.orbits[o][0]]);
    for (int d : m.orbits[o]) {
      if (frags.find(dart_frag[d]) != c) throw std::logic_error("rebuild: face split across regions");
    }
    orbit_class[o] = c;
    class_orbits[c].push_back(o);
  }
  const int n_free = static_cast<int>(frees.size());
  for (int f = 0; f < n_free; ++f) {
    class_frees[frags.find(frees[f].left)].push_back(f);
    class_frees[frags.find(frees[f].right)].push_back(f);
  }

  DiagramParts parts;
  parts.crossings = crossings;
  for (int d : dots) parts.arcs.push_back({d, -1, {}, {}});
  parts.free_circles.resize(n_free);
  std::vector<bool> piece_done(n_pieces, false), free_done(n_free, false);
  std::map<int, FaceRef> owner;
  const int root = frags.find(plane_frag);
  owner[root] = FaceRef::plane();
  std::deque<int> queue{root};
  auto open = [&](int cls, FaceRef ref) {
    if (!owner.emplace(cls, ref).second) throw std::logic_error("rebuild: cyclic nesting");
    queue.push_back(cls);
  };
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int o : class_orbits[c]) {
      const int p = piece_of[dart_arc(m.orbits[o][0])];
      if (piece_done[p]) continue;
      piece_done[p] = true;
      parts.pieces.push_back({m.orbits[o][0], owner[c]});
      for (int o2 : piece_orbits[p]) {
        if (o2 == o) continue;
        if (orbit_class[o2] == c) throw std::logic_error("rebuild: region meets a piece twice");
        open(orbit_class[o2], FaceRef::dart(m.orbits[o2][0]));
      }
    }
    for (int f : class_frees[c]) {
      if (free_done[f]) continue;
      free_done[f] = true;
      const int l = frags.find(frees[f].left), r = frags.find(frees[f].right);
      if (l == r) throw std::logic_error("rebuild: free circle with one region on both sides");
      const int inside = l == c ? r : l;
      parts.free_circles[f] = {frees[f].dots, l == inside ? 1 : -1, owner[c], -1};
      open(inside, FaceRef::free_inside(f));
    }
  }
  if (std::count(piece_done.begin(), piece_done.end(), false) ||
      std::count(free_done.begin(), free_done.end(), false)) {
    throw std::logic_error("rebuild: unreachable piece");
  }
  return DottedGraph(std::move(parts));
}

int host_region_of_free(const DottedGraph& g, int f) {
  return g.faces().pieces[g.piece_of_free_circle(f)].host_region;
}

void keep_free_circles(const DottedGraph& g, Rebuild& b, int skip,
                       const std::function<int(int, int)>& remap) {
  for (int f = 0; f < g.free_circle_count(); ++f) {
    if (f == skip) continue;
    const int inside = remap(g.inside_region(f), f);
    const int outside = remap(host_region_of_free(g, f), f);
    const bool ccw = g.free_circle(f).sign > 0;
    b.frees.push_back({g.free_circle(f).dots, ccw ? inside : outside, ccw ? outside : inside});
  }
}

// Removes a closed path (or a free circle): its arcs and the crossings it passes;
// the other strands at those crossings join up.
DottedGraph delete_component(const DottedGraph& g, const std::vector<PathStep>& path, int free) {
  const int n_arcs = g.arc_count();
  std::vector<bool> arc_gone(n_arcs, false), cross_gone(g.crossing_count(), false);
  Rebuild b;
  b.frags = UnionFind(g.region_count());
  for (const auto& s : path) {
    arc_gone[s.arc] = true;
    cross_gone[g.arc(s.arc).tail.crossing] = true;
    cross_gone[g.arc(s.arc).head.crossing] = true;
    b.frags.unite(g.region_of_dart(left_dart(s.arc)), g.region_of_dart(right_dart(s.arc)));
  }
  if (free >= 0) b.frags.unite(g.inside_region(free), host_region_of_free(g, free));

  std::vector<int> succ(n_arcs, -1);
  for (int a = 0; a < n_arcs; ++a) {
    if (arc_gone[a]) continue;
    const int c = g.arc(a).head.crossing;
    if (!cross_gone[c]) continue;
    for (const ArcEnd& e : g.crossing(c).rotation) {
      if (e.end == End::Tail && !arc_gone[e.arc]) succ[a] = e.arc;
    }
  }
  std::vector<int> tail_map(n_arcs, -1), head_map(n_arcs, -1);
  std::vector<bool> used(n_arcs, false);
  for (int a = 0; a < n_arcs; ++a) {
    if (arc_gone[a] || cross_gone[g.arc(a).tail.crossing]) continue;
    const int id = static_cast<int>(b.dots.size());
    int d = 0, cur = a;
    while (true) {
      used[cur] = true;
      d += g.arc(cur).dots;
      if (!cross_gone[g.arc(cur).head.crossing]) break;
      cur = succ[cur];
    }
    tail_map[a] = id;
    head_map[cur] = id;
    b.dots.push_back(d);
    b.dart_frag.push_back(g.region_of_dart(left_dart(a)));
    b.dart_frag.push_back(g.region_of_dart(right_dart(a)));
  }
  for (int c = 0; c < g.crossing_count(); ++c) {
    if (cross_gone[c]) continue;
    Crossing x = g.crossing(c);
    for (ArcEnd& e : x.rotation) e.arc = (e.end == End::Tail ? tail_map : head_map)[e.arc];
    b.crossings.push_back(x);
  }
  keep_free_circles(g, b, free, [](int r, int) { return r; });
  // Strands running only through removed crossings close up into free circles.
  for (int a = 0; a < n_arcs; ++a) {
    if (arc_gone[a] || used[a]) continue;
    int d = 0, cur = a;
    do {
      used[cur] = true;
      d += g.arc(cur).dots;
      cur = succ[cur];
    } while (cur != a);
    b.frees.push_back({d, g.region_of_dart(left_dart(a)), g.region_of_dart(right_dart(a))});
  }
  return b.finish();
}

int facing_dart(int arc, int epsilon) { return epsilon > 0 ? left_dart(arc) : right_dart(arc); }

// Pieces on the boundary of region r other than p; -1 stands for the unbounded end.
std::vector<int> boundary_items(const DottedGraph& g, int r, int p) {
  std::vector<int> items;
  const Region& reg = g.faces().regions[r];
  if (reg.kind == RegionKind::Plane) {
    items.push_back(-1);
  } else if (reg.owner != p) {
    items.push_back(reg.owner);
  }
  for (int c : reg.children) {
    if (c != p) items.push_back(c);
  }
  return items;
}

DottedGraph band_surgery(const DottedGraph& g, const MoveSite& s, int* loop_arc) {
  const int A = s.arc_a, B = s.arc_b, R = s.region;
  const int dA = facing_dart(A, s.epsilon), dB = facing_dart(B, s.epsilon);
  const bool split = g.face_of_dart(dA) == g.face_of_dart(dB);
  const int R2 = g.region_count();

  Rebuild b;
  b.frags = UnionFind(g.region_count() + 1);
  std::vector<int> new_id(g.arc_count(), -1);
  for (int a = 0; a < g.arc_count(); ++a) {
    if (a == A || a == B) continue;
    new_id[a] = static_cast<int>(b.dots.size());
    b.dots.push_back(g.arc(a).dots);
  }
  const int n1 = static_cast<int>(b.dots.size()), n2 = n1 + 1;
  b.dots.push_back(s.i);
  b.dots.push_back(g.arc(A).dots + g.arc(B).dots - s.i);
  for (int c = 0; c < g.crossing_count(); ++c) {
    Crossing x = g.crossing(c);
    for (ArcEnd& e : x.rotation) {
      if (e.arc == A) {
        e.arc = e.end == End::Tail ? n1 : n2;
      } else if (e.arc == B) {
        e.arc = e.end == End::Tail ? n2 : n1;
      } else {
        e.arc = new_id[e.arc];
      }
    }
    b.crossings.push_back(x);
  }
  const int SA = g.region_of_dart(dA ^ 1), SB = g.region_of_dart(dB ^ 1);
  b.frags.unite(SA, SB);

  const auto items = boundary_items(g, R, g.piece_of_arc(A));
  auto item_side = [&](int piece) {
    const auto it = std::find(items.begin(), items.end(), piece);
    if (it == items.end()) throw std::logic_error("band surgery: unknown boundary item");
    return s.mask[it - items.begin()] ? R2 : R;
  };
  RawMap m;
  int o1 = -1, o2 = -1;
  if (split) {
    m = raw_map(b.crossings, static_cast<int>(b.dots.size()));
    o1 = m.orbit[facing_dart(n1, s.epsilon)];
    o2 = m.orbit[facing_dart(n2, s.epsilon)];
  }
  b.dart_frag.assign(2 * b.dots.size(), -1);
  for (int a = 0; a < g.arc_count(); ++a) {
    if (new_id[a] < 0) continue;
    for (int side = 0; side < 2; ++side) {
      const int r = g.region_of_dart(2 * a + side);
      const int nd = 2 * new_id[a] + side;
      int f = r;
      if (split && r == R) {
        if (m.orbit[nd] == o1) {
          f = R;
        } else if (m.orbit[nd] == o2) {
          f = R2;
        } else {
          f = item_side(g.piece_of_arc(a));
        }
      }
      b.dart_frag[nd] = f;
    }
  }
  b.dart_frag[facing_dart(n1, s.epsilon)] = R;
  b.dart_frag[facing_dart(n1, s.epsilon) ^ 1] = SA;
  b.dart_frag[facing_dart(n2, s.epsilon)] = split ? R2 : R;
  b.dart_frag[facing_dart(n2, s.epsilon) ^ 1] = SB;
  keep_free_circles(g, b, -1, [&](int r, int f) {
    return split && r == R ? item_side(g.piece_of_free_circle(f)) : r;
  });
  if (split && R == 0) b.plane_frag = item_side(-1);
  if (loop_arc) {
    *loop_arc = -1;
    if (g.arc(A).tail.crossing == g.arc(B).head.crossing) *loop_arc = n1;
    if (g.arc(B).tail.crossing == g.arc(A).head.crossing) *loop_arc = n2;
  }
  return b.finish();
}

DottedGraph apply_unchecked(const DottedGraph& g, const MoveSite& s, int* loop_arc = nullptr) {
  if (s.kind == MoveKind::IV) return band_surgery(g, s, loop_arc);
  return delete_component(g, s.path, s.free_circle);
}

// Label condition on the disk (or the facing region): circles outside the split
// sum to epsilon there, and the overlapping part does not work against it.
// Lists the splits that work, "no overlap" (an empty vector) first, at most `limit`.
std::vector<std::vector<bool>> splits_for(const DottedGraph& g, const std::vector<int>& disk, int epsilon,
                                          const std::vector<int>& site_circles, bool overlap,
                                          std::size_t limit) {
  const int n = g.circle_count();
  std::vector<int> others;
  for (int c = 0; c < n; ++c) {
    if (std::find(site_circles.begin(), site_circles.end(), c) == site_circles.end()) {
      others.push_back(c);
    }
  }
  const int k = overlap ? static_cast<int>(others.size()) : 0;
  if (k > 20) throw std::length_error("too many circles for overlap split enumeration");
  const auto& lab = g.labels();
  std::vector<std::vector<bool>> out;
  for (long long bits = 0; bits < (1LL << k) && out.size() < limit; ++bits) {
    std::vector<bool> first(n, false);
    for (int j = 0; j < k; ++j) first[others[j]] = (bits >> j) & 1;
    bool ok = true;
    for (int r : disk) {
      int s1 = 0, s2 = 0;
      for (int c = 0; c < n; ++c) (first[c] ? s1 : s2) += lab.at(r, c);
      if (s2 != epsilon || epsilon * s1 < 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(bits == 0 ? std::vector<bool>{} : first);
  }
  return out;
}

std::optional<std::vector<bool>> find_split(const DottedGraph& g, const std::vector<int>& disk,
                                            int epsilon, const std::vector<int>& site_circles,
                                            bool overlap) {
  auto all = splits_for(g, disk, epsilon, site_circles, overlap, 1);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

// Dots on the arc as seen with the overlapping circles ignored: the strand is
// followed through crossings with them. Counts the dots before and after `arc`.
struct RunDots {
  int before = 0;
  int after = 0;
  bool cyclic = false;
};

RunDots run_dots(const DottedGraph& g, int arc, const std::vector<bool>& first) {
  RunDots r;
  if (first.empty()) return r;
  auto through = [&](Slot at) {
    const int other = g.crossing(at.crossing).rotation[(at.index + 1) % 4].arc;
    return first[g.arc(other).circle];
  };
  for (int a = arc; through(g.arc(a).tail);) {
    const Slot t = g.arc(a).tail;
    a = g.crossing(t.crossing).rotation[(t.index + 2) % 4].arc;
    if (a == arc) {
      r.cyclic = true;
      return r;
    }
    r.before += g.arc(a).dots;
  }
  for (int a = arc; through(g.arc(a).head);) {
    const Slot h = g.arc(a).head;
    a = g.crossing(h.crossing).rotation[(h.index + 2) % 4].arc;
    r.after += g.arc(a).dots;
  }
  return r;
}

void deletion_sites(const DottedGraph& g, const Rule& rule, bool overlap, std::vector<MoveSite>& out) {
  const auto witnesses =
      rule.pattern == RulePattern::DeleteLoop ? loop_components(g) : circle_components(g);
  for (const auto& w : witnesses) {
    if (!in_range(rule, w.dots)) continue;
    auto split = find_split(g, w.disk, w.winding, {w.circle}, overlap);
    if (!split) continue;
    MoveSite s;
    s.kind = rule.kind;
    s.epsilon = w.winding;
    s.i = std::max(w.dots, 1);
    s.path = w.path;
    s.free_circle = w.free_circle;
    s.base = rule.pattern == RulePattern::DeleteLoop ? w.crossings.front() : -1;
    s.disk = w.disk;
    s.split = std::move(*split);
    out.push_back(std::move(s));
  }
}

bool creates_removable_loop(const DottedGraph& g, const MoveSite& s) {
  if (s.corner < 0) return false;
  int loop_arc = -1;
  const DottedGraph h = band_surgery(g, s, &loop_arc);
  if (loop_arc < 0) return false;
  std::vector<MoveSite> loops;
  deletion_sites(h, kRules[2], true, loops);
  return std::any_of(loops.begin(), loops.end(), [&](const MoveSite& l) {
    return l.path.size() == 1 && l.path[0].arc == loop_arc;
  });
}

void band_sites(const DottedGraph& g, const Rule& rule, bool overlap, bool good_only,
                bool want_good, std::vector<MoveSite>& out) {
  std::vector<std::vector<int>> facing(g.region_count());
  for (int d = 0; d < 2 * g.arc_count(); ++d) facing[g.region_of_dart(d)].push_back(d);
  for (int R = 0; R < g.region_count(); ++R) {
    const auto& ds = facing[R];
    for (std::size_t x = 0; x < ds.size(); ++x) {
      for (std::size_t y = x + 1; y < ds.size(); ++y) {
        const int d1 = ds[x], d2 = ds[y];
        const int A = dart_arc(d1), B = dart_arc(d2);
        if (A == B || dart_is_left(d1) != dart_is_left(d2)) continue;
        if (g.region_of_dart(d1 ^ 1) == R || g.region_of_dart(d2 ^ 1) == R) continue;
        const int eps = dart_is_left(d1) ? 1 : -1;
        int corner = -1;
        if (g.next_dart(d1) == d2) corner = g.dart_end(d1).crossing;
        if (g.next_dart(d2) == d1) corner = g.dart_end(d2).crossing;
        if (good_only && corner < 0) continue;
        const auto splits = splits_for(g, {R}, eps, {g.arc(A).circle, g.arc(B).circle}, overlap,
                                       std::numeric_limits<std::size_t>::max());
        if (splits.empty()) continue;
        const bool same_face = g.face_of_dart(d1) == g.face_of_dart(d2);
        const int m = same_face ? static_cast<int>(boundary_items(g, R, g.piece_of_arc(A)).size()) : 0;
        if (m > 16) throw std::length_error("too many pieces around a region");
        const int local = g.arc(A).dots + g.arc(B).dots;
        // Dot counts are taken on the arcs with the overlapping circles ignored; the
        // first split that admits a given surgery is recorded.
        std::vector<const std::vector<bool>*> split_of_i(local + 1, nullptr);
        for (const auto& split : splits) {
          const RunDots ra = run_dots(g, A, split), rb = run_dots(g, B, split);
          if (ra.cyclic || rb.cyclic) continue;
          if (!in_range(rule, ra.before + g.arc(A).dots + ra.after) ||
              !in_range(rule, rb.before + g.arc(B).dots + rb.after)) {
            continue;
          }
          for (int i = 0; i <= local; ++i) {
            if (split_of_i[i]) continue;
            if (in_range(rule, ra.before + i + rb.after) && in_range(rule, rb.before + local - i + ra.after)) {
              split_of_i[i] = &split;
            }
          }
        }
        for (int bits = 0; bits < (1 << m); ++bits) {
          for (int i = 0; i <= local; ++i) {
            if (!split_of_i[i]) continue;
            MoveSite s;
            s.kind = rule.kind;
            s.epsilon = eps;
            s.i = i;
            s.arc_a = A;
            s.arc_b = B;
            s.region = R;
            for (int j = 0; j < m; ++j) s.mask.push_back((bits >> j) & 1);
            s.corner = corner;
            s.split = *split_of_i[i];
            s.good = (want_good || good_only) && creates_removable_loop(g, s);
            if (good_only && !s.good) continue;
            out.push_back(std::move(s));
          }
        }
      }
    }
  }
}

std::vector<MoveSite> collect(const DottedGraph& g, const MoveOptions& options, bool want_good) {
  std::vector<MoveSite> out;
  for (const Rule& rule : kRules) {
    if (options.only_kind && *options.only_kind != rule.kind) continue;
    if (rule.pattern == RulePattern::BandSurgery) {
      band_sites(g, rule, options.overlap_mode, options.good_only, want_good, out);
    } else {
      deletion_sites(g, rule, options.overlap_mode, out);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MoveSite& a, const MoveSite& b) {
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return out;
}

bool same_site(MoveSite a, const MoveSite& b) {
  a.good = b.good;
  return a == b;
}

// The III that removes the loop a good IV leaves behind.
std::optional<MoveSite> loop_cleanup(const DottedGraph& h, int loop_arc) {
  std::vector<MoveSite> loops;
  deletion_sites(h, kRules[2], true, loops);
  for (auto& l : loops) {
    if (l.path.size() == 1 && l.path[0].arc == loop_arc) return l;
  }
  return std::nullopt;
}

struct Step {
  DottedGraph graph;
  std::vector<CertificateStep> steps;
};

// Successors under good moves; a good IV and the III on its loop count as one step.
std::vector<Step> good_successors(const DottedGraph& g) {
  std::vector<Step> out;
  for (const auto& s : collect(g, {true, true, std::nullopt}, true)) {
    int loop_arc = -1;
    DottedGraph h = apply_unchecked(g, s, &loop_arc);
    Step st{h, {{s, canonical_code(h)}}};
    if (s.kind == MoveKind::IV) {
      const auto l = loop_cleanup(h, loop_arc);
      if (!l) continue;
      st.graph = apply_unchecked(h, *l);
      st.steps.push_back({*l, canonical_code(st.graph)});
    }
    out.push_back(std::move(st));
  }
  return out;
}

nlohmann::json bools(const std::vector<bool>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (bool b : v) j.push_back(b);
  return j;
}

std::vector<bool> bools_from(const nlohmann::json& j) {
  std::vector<bool> v;
  for (const auto& x : j) v.push_back(x.get<bool>());
  return v;
}

}  // namespace

std::span<const Rule> rule_table() { return kRules; }

std::vector<MoveSite> applicable_moves(const DottedGraph& g, const MoveOptions& options) {
  return collect(g, options, true);
}

DottedGraph apply(const DottedGraph& g, const MoveSite& site) {
  const auto sites = collect(g, {false, true, site.kind}, false);
  if (std::none_of(sites.begin(), sites.end(),
                   [&](const MoveSite& s) { return same_site(s, site); })) {
    throw SiteStale(std::string("move ") + to_string(site.kind) + " does not apply here");
  }
  return apply_unchecked(g, site);
}

bool is_good_site(const DottedGraph& g, const MoveSite& site) {
  return site.kind != MoveKind::IV || creates_removable_loop(g, site);
}

std::optional<MoveSite> first_good_move(const DottedGraph& g) {
  const auto sites = collect(g, {true, true, std::nullopt}, true);
  if (sites.empty()) return std::nullopt;
  return sites.front();
}

GoodReduceResult good_reduce(const DottedGraph& g, const SearchBudget& budget) {
  GoodReduceResult res;
  struct Node {
    DottedGraph graph;
    std::vector<CertificateStep> path;
  };
  const DottedGraph start = canonical_form(g);
  const std::string start_code = canonical_code(start);
  std::unordered_map<std::string, bool> seen{{start_code, true}};
  std::deque<Node> queue{{start, {}}};
  std::map<std::string, ReducedGraph> terminals;
  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    if (++res.nodes > budget.max_nodes) {
      res.budget_exceeded = true;
      break;
    }
    const auto next = good_successors(n.graph);
    if (next.empty()) {
      const std::string code = n.path.empty() ? start_code : n.path.back().code;
      terminals.emplace(code, ReducedGraph{canonical_form(n.graph), {start_code, n.path}});
      continue;
    }
    if (static_cast<int>(n.path.size()) >= budget.max_depth) {
      res.budget_exceeded = true;
      continue;
    }
    for (const auto& st : next) {
      if (!seen.emplace(st.steps.back().code, true).second) continue;
      Node child{st.graph, n.path};
      child.path.insert(child.path.end(), st.steps.begin(), st.steps.end());
      queue.push_back(std::move(child));
    }
  }
  for (auto& [code, r] : terminals) res.reduced.push_back(std::move(r));
  return res;
}

bool is_reducible(const DottedGraph& g) { return reduce_to_empty(g).has_value(); }

std::optional<ReductionCertificate> reduce_to_empty(const DottedGraph& g,
                                                    const SearchBudget& budget) {
  const DottedGraph start = canonical_form(g);
  ReductionCertificate cert{canonical_code(start), {}};
  if (start.empty()) return cert;
  struct Frame {
    DottedGraph graph;
    std::vector<MoveSite> sites;
    std::size_t next = 0;
  };
  std::unordered_map<std::string, bool> seen{{cert.start_code, true}};
  std::vector<Frame> stack;
  stack.push_back({start, collect(start, {}, false)});
  long long nodes = 0;
  bool exhausted_cleanly = true;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.sites.size()) {
      stack.pop_back();
      if (!cert.steps.empty()) cert.steps.pop_back();
      continue;
    }
    const MoveSite s = f.sites[f.next++];
    DottedGraph h = apply_unchecked(f.graph, s);
    std::string code = canonical_code(h);
    if (!seen.emplace(code, true).second) continue;
    if (++nodes > budget.max_nodes) throw BudgetExceeded("reduction search budget exhausted");
    cert.steps.push_back({s, code});
    if (h.empty()) return cert;
    if (static_cast<int>(stack.size()) >= budget.max_depth) {
      exhausted_cleanly = false;
      cert.steps.pop_back();
      continue;
    }
    auto sites = collect(h, {}, false);
    stack.push_back({std::move(h), std::move(sites)});
  }
  if (!exhausted_cleanly) throw BudgetExceeded("reduction search hit the depth limit");
  return std::nullopt;
}

nlohmann::json to_json(const MoveSite& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind);
  j["epsilon"] = s.epsilon;
  j["i"] = s.i;
  j["good"] = s.good;
  if (s.kind == MoveKind::IV) {
    j["arc_a"] = s.arc_a;
    j["arc_b"] = s.arc_b;
    j["region"] = s.region;
    j["mask"] = bools(s.mask);
    j["corner"] = s.corner;
  } else {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& p : s.path) path.push_back({{"arc", p.arc}, {"forward", p.forward}});
    j["path"] = path;
    j["free_circle"] = s.free_circle;
    j["base"] = s.base;
    j["disk"] = s.disk;
  }
  j["split"] = bools(s.split);
  return j;
}

MoveSite site_from_json(const nlohmann::json& j) {
  MoveSite s;
  s.kind = parse_kind(j.at("kind").get<std::string>());
  s.epsilon = j.at("epsilon").get<int>();
  s.i = j.at("i").get<int>();
  s.good = j.value("good", true);
  if (s.kind == MoveKind::IV) {
    s.arc_a = j.at("arc_a").get<int>();
    s.arc_b = j.at("arc_b").get<int>();
    s.region = j.at("region").get<int>();
    s.mask = bools_from(j.at("mask"));
    s.corner = j.at("corner").get<int>();
  } else {
    for (const auto& p : j.at("path")) {
      s.path.push_back({p.at("arc").get<int>(), p.at("forward").get<bool>()});
    }
    s.free_circle = j.at("free_circle").get<int>();
    s.base = j.at("base").get<int>();
    s.disk = j.at("disk").get<std::vector<int>>();
  }
  s.split = bools_from(j.value("split", nlohmann::json::array()));
  return s;
}

nlohmann::json to_json(const ReductionCertificate& cert) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : cert.steps) steps.push_back({{"site", to_json(st.site)}, {"code", st.code}});
  return {{"start_code", cert.start_code}, {"steps", steps}};
}

ReductionCertificate certificate_from_json(const nlohmann::json& j) {
  ReductionCertificate cert;
  cert.start_code = j.at("start_code").get<std::string>();
  for (const auto& st : j.at("steps")) {
    cert.steps.push_back({site_from_json(st.at("site")), st.at("code").get<std::string>()});
  }
  return cert;
}

bool replay(const DottedGraph& g, const ReductionCertificate& cert, std::string* failure) {
  auto fail = [&](const std::string& why) {
    if (failure) *failure = why;
    return false;
  };
  DottedGraph cur = canonical_form(g);
  if (canonical_code(cur) != cert.start_code) return fail("start code mismatch");
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    try {
      cur = apply(cur, cert.steps[k].site);
    } catch (const SiteStale& e) {
      return fail("step " + std::to_string(k) + ": " + e.what());
    }
    if (canonical_code(cur) != cert.steps[k].code) {
      return fail("step " + std::to_string(k) + ": code mismatch");
    }
  }
  return true;
}

}  // namespace dotlab
