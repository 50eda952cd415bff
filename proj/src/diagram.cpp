#include "dotlab/diagram.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace dotlab {

namespace {

[[noreturn]] void fail(DiagramErrorKind kind, const std::string& what) {
  throw DiagramError(kind, what);
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

DottedGraph::DottedGraph() { derive(); }

DottedGraph::DottedGraph(DiagramParts parts) : parts_(std::move(parts)) { derive(); }

int DottedGraph::dot_total() const {
  int total = 0;
  for (const auto& a : parts_.arcs) total += a.dots;
  for (const auto& f : parts_.free_circles) total += f.dots;
  return total;
}

Slot DottedGraph::dart_start(int dart) const {
  const Arc& a = parts_.arcs[dart_arc(dart)];
  return dart_is_left(dart) ? a.tail : a.head;
}

Slot DottedGraph::dart_end(int dart) const {
  const Arc& a = parts_.arcs[dart_arc(dart)];
  return dart_is_left(dart) ? a.head : a.tail;
}

int DottedGraph::next_dart(int dart) const {
  const Slot s = dart_end(dart);
  return dart_leaving({s.crossing, (s.index + 3) % 4});
}

int DottedGraph::dart_leaving(Slot slot) const {
  const ArcEnd e = parts_.crossings[slot.crossing].rotation[slot.index];
  return e.end == End::Tail ? left_dart(e.arc) : right_dart(e.arc);
}

bool DottedGraph::circle_is_embedded(int circle) const {
  if (circle_free_[circle] >= 0) return true;
  for (int a : circle_arcs_[circle]) {
    const Slot h = parts_.arcs[a].head;
    // The crossing strand through the other slots belongs to another circle
    // unless the circle crosses itself.
    const ArcEnd side = parts_.crossings[h.crossing].rotation[(h.index + 1) % 4];
    if (parts_.arcs[side.arc].circle == circle) return false;
  }
  return true;
}

int DottedGraph::circle_dots(int circle) const {
  if (circle_free_[circle] >= 0) return parts_.free_circles[circle_free_[circle]].dots;
  int total = 0;
  for (int a : circle_arcs_[circle]) total += parts_.arcs[a].dots;
  return total;
}

std::vector<int> DottedGraph::regions_within(int region) const {
  std::vector<int> out{region};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int p : faces_.regions[out[i]].children) {
      for (int r : faces_.pieces[p].bounded_regions) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void DottedGraph::derive() {
  const int n_arcs = arc_count();
  const int n_cross = crossing_count();
  const int n_free = free_circle_count();

  // Arc endpoints from the rotations.
  for (auto& a : parts_.arcs) {
    if (a.dots < 0) fail(DiagramErrorKind::InconsistentRotation, "negative dot count");
    a.tail = {};
    a.head = {};
  }
  for (int c = 0; c < n_cross; ++c) {
    const auto& rot = parts_.crossings[c].rotation;
    for (int k = 0; k < 4; ++k) {
      const ArcEnd e = rot[k];
      if (e.arc < 0 || e.arc >= n_arcs) {
        fail(DiagramErrorKind::InconsistentRotation,
             "crossing " + std::to_string(c) + " refers to unknown arc");
      }
      Slot& s = e.end == End::Head ? parts_.arcs[e.arc].head : parts_.arcs[e.arc].tail;
      if (s.crossing >= 0) {
        fail(DiagramErrorKind::InconsistentRotation,
             "arc " + std::to_string(e.arc) + " end used twice");
      }
      s = {c, k};
    }
    for (int k = 0; k < 2; ++k) {
      if (rot[k].end == rot[k + 2].end) {
        fail(DiagramErrorKind::InconsistentRotation,
             "crossing " + std::to_string(c) + ": a strand must enter and leave");
      }
    }
  }
  for (int a = 0; a < n_arcs; ++a) {
    if (parts_.arcs[a].tail.crossing < 0 || parts_.arcs[a].head.crossing < 0) {
      fail(DiagramErrorKind::InconsistentRotation,
           "arc " + std::to_string(a) + " is not attached at both ends");
    }
  }

  // Immersed circles follow strands straight through crossings.
  circle_arcs_.clear();
  circle_free_.clear();
  for (auto& a : parts_.arcs) a.circle = -1;
  for (int a0 = 0; a0 < n_arcs; ++a0) {
    if (parts_.arcs[a0].circle >= 0) continue;
    const int id = static_cast<int>(circle_arcs_.size());
    circle_arcs_.emplace_back();
    int a = a0;
    do {
      parts_.arcs[a].circle = id;
      circle_arcs_.back().push_back(a);
      const Slot h = parts_.arcs[a].head;
      a = parts_.crossings[h.crossing].rotation[(h.index + 2) % 4].arc;
    } while (a != a0);
    circle_free_.push_back(-1);
  }
  for (int f = 0; f < n_free; ++f) {
    if (parts_.free_circles[f].dots < 0) {
      fail(DiagramErrorKind::InconsistentRotation, "negative dot count");
    }
    if (parts_.free_circles[f].sign != 1 && parts_.free_circles[f].sign != -1) {
      fail(DiagramErrorKind::InvalidEmbedding, "free circle sign must be +1 or -1");
    }
    parts_.free_circles[f].circle = static_cast<int>(circle_arcs_.size());
    circle_arcs_.emplace_back();
    circle_free_.push_back(f);
  }
  circle_count_ = static_cast<int>(circle_arcs_.size());

  // Connected map pieces.
  std::vector<int> parent(n_arcs);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& c : parts_.crossings) {
    for (int k = 1; k < 4; ++k) {
      const int x = find_root(parent, c.rotation[0].arc);
      const int y = find_root(parent, c.rotation[k].arc);
      parent[std::max(x, y)] = std::min(x, y);
    }
  }
  faces_ = FaceSet{};
  arc_piece_.assign(n_arcs, -1);
  std::vector<int> root_piece(n_arcs, -1);
  for (int a = 0; a < n_arcs; ++a) {
    const int r = find_root(parent, a);
    if (root_piece[r] < 0) {
      root_piece[r] = static_cast<int>(faces_.pieces.size());
      faces_.pieces.emplace_back();
    }
    arc_piece_[a] = root_piece[r];
    faces_.pieces[arc_piece_[a]].arcs.push_back(a);
  }
  for (int c = 0; c < n_cross; ++c) {
    faces_.pieces[arc_piece_[parts_.crossings[c].rotation[0].arc]].crossings.push_back(c);
  }
  const int n_map = static_cast<int>(faces_.pieces.size());
  free_piece_.assign(n_free, -1);
  for (int f = 0; f < n_free; ++f) {
    free_piece_[f] = static_cast<int>(faces_.pieces.size());
    Piece p;
    p.is_free = true;
    p.free_circle = f;
    p.host = parts_.free_circles[f].host;
    faces_.pieces.push_back(std::move(p));
  }

  // Faces as dart orbits.
  faces_.dart_face.assign(2 * n_arcs, -1);
  for (int d0 = 0; d0 < 2 * n_arcs; ++d0) {
    if (faces_.dart_face[d0] >= 0) continue;
    const int id = static_cast<int>(faces_.faces.size());
    Face face;
    face.piece = arc_piece_[dart_arc(d0)];
    int d = d0;
    do {
      faces_.dart_face[d] = id;
      face.darts.push_back(d);
      d = next_dart(d);
    } while (d != d0);
    faces_.pieces[face.piece].faces.push_back(id);
    faces_.faces.push_back(std::move(face));
  }
  for (int p = 0; p < n_map; ++p) {
    const Piece& piece = faces_.pieces[p];
    const int euler = static_cast<int>(piece.crossings.size()) -
                      static_cast<int>(piece.arcs.size()) + static_cast<int>(piece.faces.size());
    if (euler != 2) {
      fail(DiagramErrorKind::InconsistentRotation,
           "rotation system is not planar (piece " + std::to_string(p) + ")");
    }
  }

  // Embedding records: one per map piece, matched by the outer dart.
  if (static_cast<int>(parts_.pieces.size()) != n_map) {
    fail(DiagramErrorKind::InvalidEmbedding, "expected one embedding record per map piece (" +
                                                 std::to_string(n_map) + ")");
  }
  {
    std::vector<PieceEmbedding> ordered(n_map);
    std::vector<bool> seen(n_map, false);
    for (const auto& e : parts_.pieces) {
      if (e.outer_dart < 0 || e.outer_dart >= 2 * n_arcs) {
        fail(DiagramErrorKind::InvalidEmbedding, "outer dart out of range");
      }
      const int p = arc_piece_[dart_arc(e.outer_dart)];
      if (seen[p]) fail(DiagramErrorKind::InvalidEmbedding, "two embedding records for one piece");
      seen[p] = true;
      ordered[p] = e;
    }
    parts_.pieces = std::move(ordered);
  }
  for (int p = 0; p < n_map; ++p) {
    Piece& piece = faces_.pieces[p];
    piece.host = parts_.pieces[p].host;
    piece.outer_face = faces_.dart_face[parts_.pieces[p].outer_dart];
    faces_.faces[piece.outer_face].outer = true;
  }

  // Host of each piece; must be another piece's bounded face and acyclic.
  const int n_pieces = static_cast<int>(faces_.pieces.size());
  std::vector<int> host_piece(n_pieces, -1);
  for (int p = 0; p < n_pieces; ++p) {
    const FaceRef h = faces_.pieces[p].host;
    switch (h.kind) {
      case FaceRefKind::Plane: break;
      case FaceRefKind::Dart: {
        if (h.index < 0 || h.index >= 2 * n_arcs) {
          fail(DiagramErrorKind::InvalidEmbedding, "host dart out of range");
        }
        const int q = arc_piece_[dart_arc(h.index)];
        if (q == p) fail(DiagramErrorKind::InvalidEmbedding, "piece hosted by itself");
        if (faces_.faces[faces_.dart_face[h.index]].outer) {
          fail(DiagramErrorKind::InvalidEmbedding, "host face must be bounded");
        }
        host_piece[p] = q;
        break;
      }
      case FaceRefKind::FreeInside: {
        if (h.index < 0 || h.index >= n_free) {
          fail(DiagramErrorKind::InvalidEmbedding, "host free circle out of range");
        }
        const int q = free_piece_[h.index];
        if (q == p) fail(DiagramErrorKind::InvalidEmbedding, "free circle hosted by itself");
        host_piece[p] = q;
        break;
      }
    }
  }
  std::vector<int> order;
  {
    std::vector<int> depth(n_pieces, -1);
    for (int p = 0; p < n_pieces; ++p) {
      int steps = 0;
      int q = p;
      while (host_piece[q] >= 0 && depth[q] < 0) {
        q = host_piece[q];
        if (++steps > n_pieces) fail(DiagramErrorKind::InvalidEmbedding, "cyclic nesting");
      }
      // Fill depths along the chain.
      std::vector<int> chain;
      for (int r = p; r != q; r = host_piece[r]) chain.push_back(r);
      int d = depth[q] >= 0 ? depth[q] : 0;
      depth[q] = d;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
    }
    order.resize(n_pieces);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return depth[a] < depth[b]; });
    for (int p = 0; p < n_pieces; ++p) faces_.pieces[p].depth = depth[p];
  }

  // Regions: the plane, bounded map faces, free circle insides.
  faces_.regions.assign(1, Region{});
  faces_.face_region.assign(faces_.faces.size(), -1);
  for (int p = 0; p < n_map; ++p) {
    for (int f : faces_.pieces[p].faces) {
      if (faces_.faces[f].outer) continue;
      Region r;
      r.kind = RegionKind::Face;
      r.face = f;
      r.owner = p;
      faces_.face_region[f] = static_cast<int>(faces_.regions.size());
      faces_.pieces[p].bounded_regions.push_back(faces_.face_region[f]);
      faces_.regions.push_back(std::move(r));
    }
  }
  free_inside_region_.assign(n_free, -1);
  for (int f = 0; f < n_free; ++f) {
    Region r;
    r.kind = RegionKind::FreeInside;
    r.free_circle = f;
    r.owner = free_piece_[f];
    free_inside_region_[f] = static_cast<int>(faces_.regions.size());
    faces_.pieces[free_piece_[f]].bounded_regions.push_back(free_inside_region_[f]);
    faces_.regions.push_back(std::move(r));
  }
  for (int p : order) {
    Piece& piece = faces_.pieces[p];
    const FaceRef h = piece.host;
    int hr = 0;
    if (h.kind == FaceRefKind::Dart) hr = faces_.face_region[faces_.dart_face[h.index]];
    if (h.kind == FaceRefKind::FreeInside) hr = free_inside_region_[h.index];
    piece.host_region = hr;
    faces_.regions[hr].children.push_back(p);
    if (!piece.is_free) faces_.face_region[piece.outer_face] = hr;
  }
  for (auto& r : faces_.regions) std::sort(r.children.begin(), r.children.end());

  // Labels: winding per circle, accumulated from the host inward.
  const int K = circle_count_;
  const int R = region_count();
  labels_ = FaceLabeling{};
  labels_.circle_count = K;
  labels_.total.assign(R, 0);
  labels_.winding.assign(static_cast<std::size_t>(R) * K, 0);
  std::vector<int> face_local(faces_.faces.size() * static_cast<std::size_t>(K), 0);
  std::vector<bool> visited(faces_.faces.size(), false);
  for (int p : order) {
    const Piece& piece = faces_.pieces[p];
    const int hr = piece.host_region;
    if (piece.is_free) {
      const int r = free_inside_region_[piece.free_circle];
      const FreeCircle& fc = parts_.free_circles[piece.free_circle];
      for (int k = 0; k < K; ++k) labels_.winding[r * K + k] = labels_.winding[hr * K + k];
      labels_.winding[r * K + fc.circle] += fc.sign;
      continue;
    }
    std::deque<int> queue{piece.outer_face};
    visited[piece.outer_face] = true;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (int d : faces_.faces[f].darts) {
        const int a = dart_arc(d);
        const int other = faces_.dart_face[d ^ 1];
        const int circle = parts_.arcs[a].circle;
        // Left side of an arc winds once more than its right side.
        const int delta = dart_is_left(d) ? -1 : 1;
        std::vector<int> want(face_local.begin() + f * K, face_local.begin() + (f + 1) * K);
        want[circle] += delta;
        if (visited[other]) {
          if (!std::equal(want.begin(), want.end(), face_local.begin() + other * K)) {
            fail(DiagramErrorKind::ContradictoryLabels,
                 "face labels are inconsistent around arc " + std::to_string(a));
          }
          continue;
        }
        visited[other] = true;
        std::copy(want.begin(), want.end(), face_local.begin() + other * K);
        queue.push_back(other);
      }
    }
    for (int k = 0; k < K; ++k) {
      if (face_local[piece.outer_face * K + k] != 0) {
        fail(DiagramErrorKind::ContradictoryLabels, "outer face must have label 0");
      }
    }
    for (int f : piece.faces) {
      if (faces_.faces[f].outer) continue;
      const int r = faces_.face_region[f];
      for (int k = 0; k < K; ++k) {
        labels_.winding[r * K + k] = labels_.winding[hr * K + k] + face_local[f * K + k];
      }
    }
  }
  for (int r = 0; r < R; ++r) {
    for (int k = 0; k < K; ++k) labels_.total[r] += labels_.winding[r * K + k];
  }
}

FaceSet build_faces(const DottedGraph& g) { return g.faces(); }

FaceLabeling label_regions(const DottedGraph& g) { return g.labels(); }

std::vector<int> path_region_winding(const DottedGraph& g, std::span<const PathStep> steps) {
  std::vector<int> out(g.region_count(), 0);
  if (steps.empty()) return out;
  const int piece = g.piece_of_arc(steps.front().arc);
  const auto& fs = g.faces();
  // Winding change across each arc of the path: left side of travel is +1.
  std::vector<int> cross(g.arc_count(), 0);
  for (const auto& s : steps) cross[s.arc] += s.forward ? 1 : -1;
  std::vector<int> local(fs.faces.size(), 0);
  std::vector<bool> seen(fs.faces.size(), false);
  const int outer = fs.pieces[piece].outer_face;
  std::deque<int> queue{outer};
  seen[outer] = true;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int d : fs.faces[f].darts) {
      const int other = fs.dart_face[d ^ 1];
      if (seen[other]) continue;
      seen[other] = true;
      const int c = cross[dart_arc(d)];
      local[other] = local[f] + (dart_is_left(d) ? -c : c);
      queue.push_back(other);
    }
  }
  for (int f : fs.pieces[piece].faces) {
    if (fs.faces[f].outer || local[f] == 0) continue;
    for (int r : g.regions_within(fs.face_region[f])) out[r] = local[f];
  }
  return out;
}

}  // namespace dotlab
