#include "dotlab/canonical.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace dotlab {

namespace {

struct Traversal {
  std::string code;
  std::vector<int> crossings;  // original ids in visiting order
  std::vector<int> ref;        // reference slot of each visited crossing (original id indexed)
  std::vector<int> arcs;       // original arc ids in first-seen order
  std::vector<int> faces;      // original face ids in first-seen order
};

class Coder {
 public:
  explicit Coder(const DottedGraph& g) : g_(g), piece_code_(g.faces().pieces.size()) {
    best_.resize(g.faces().pieces.size());
  }

  const std::string& piece(int p) {
    if (!piece_code_[p].empty()) return piece_code_[p];
    const Piece& piece = g_.faces().pieces[p];
    if (piece.is_free) {
      const FreeCircle& fc = g_.free_circle(piece.free_circle);
      piece_code_[p] = std::string("F") + (fc.sign > 0 ? '+' : '-') + std::to_string(fc.dots) +
                       children(g_.inside_region(piece.free_circle));
      return piece_code_[p];
    }
    bool first = true;
    for (int c : piece.crossings) {
      for (int r = 0; r < 4; ++r) {
        Traversal t = traverse(c, r);
        if (first || t.code < best_[p].code) best_[p] = std::move(t);
        first = false;
      }
    }
    piece_code_[p] = best_[p].code;
    return piece_code_[p];
  }

  std::vector<int> sorted_children(int region) {
    std::vector<int> kids = g_.faces().regions[region].children;
    std::stable_sort(kids.begin(), kids.end(),
                     [&](int a, int b) { return piece(a) < piece(b); });
    return kids;
  }

  std::string children(int region) {
    std::string out = "[";
    bool first = true;
    for (int p : sorted_children(region)) {
      if (!first) out += ',';
      first = false;
      out += piece(p);
    }
    return out + "]";
  }

  const Traversal& best(int p) {
    piece(p);
    return best_[p];
  }

 private:
  Traversal traverse(int root, int ref) {
    Traversal t;
    std::map<int, int> num;
    std::map<int, int> refs;
    std::map<int, int> arc_seen;
    num[root] = 0;
    refs[root] = ref;
    std::deque<int> queue{root};
    std::string& s = t.code;
    s = "M";
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      t.crossings.push_back(c);
      for (int j = 0; j < 4; ++j) {
        const int k = (refs[c] + j) % 4;
        const ArcEnd e = g_.crossing(c).rotation[k];
        const Arc& a = g_.arc(e.arc);
        const Slot other = e.end == End::Tail ? a.head : a.tail;
        if (!num.count(other.crossing)) {
          num[other.crossing] = static_cast<int>(num.size());
          refs[other.crossing] = other.index;
          queue.push_back(other.crossing);
        }
        if (!arc_seen.count(e.arc)) {
          arc_seen[e.arc] = static_cast<int>(t.arcs.size());
          t.arcs.push_back(e.arc);
        }
        s += e.end == End::Head ? 'h' : 't';
        s += std::to_string(num[other.crossing]);
        s += '.';
        s += std::to_string((other.index - refs[other.crossing] + 4) % 4);
        s += '.';
        s += std::to_string(a.dots);
        s += ';';
      }
    }
    // Faces in first-seen order of their corners.
    std::vector<bool> seen(g_.faces().faces.size(), false);
    for (int c : t.crossings) {
      for (int j = 0; j < 4; ++j) {
        const int f = g_.face_of_dart(g_.dart_leaving({c, (refs[c] + j) % 4}));
        if (seen[f]) continue;
        seen[f] = true;
        t.faces.push_back(f);
        const Face& face = g_.faces().faces[f];
        s += face.outer ? "(o" : "(";
        if (!face.outer) s += children(g_.region_of_face(f));
        s += ')';
      }
    }
    t.ref.assign(g_.crossing_count(), 0);
    for (const auto& [c, r] : refs) t.ref[c] = r;
    return t;
  }

  const DottedGraph& g_;
  std::vector<std::string> piece_code_;
  std::vector<Traversal> best_;
};

// Emits pieces in canonical order with fresh ids.
class Relabeler {
 public:
  Relabeler(const DottedGraph& g, Coder& coder) : g_(g), coder_(coder) {
    new_arc_.assign(g.arc_count(), -1);
  }

  void emit_region_children(int region, FaceRef host) {
    for (int p : coder_.sorted_children(region)) emit(p, host);
  }

  DiagramParts take() { return std::move(out_); }

 private:
  void emit(int p, FaceRef host) {
    const Piece& piece = g_.faces().pieces[p];
    if (piece.is_free) {
      FreeCircle fc = g_.free_circle(piece.free_circle);
      fc.host = host;
      const int id = static_cast<int>(out_.free_circles.size());
      out_.free_circles.push_back(fc);
      emit_region_children(g_.inside_region(piece.free_circle), FaceRef::free_inside(id));
      return;
    }
    const Traversal& t = coder_.best(p);
    for (int a : t.arcs) {
      new_arc_[a] = static_cast<int>(out_.arcs.size());
      Arc arc;
      arc.dots = g_.arc(a).dots;
      out_.arcs.push_back(arc);
    }
    for (int c : t.crossings) {
      Crossing x;
      for (int j = 0; j < 4; ++j) {
        const ArcEnd e = g_.crossing(c).rotation[(t.ref[c] + j) % 4];
        x.rotation[j] = {new_arc_[e.arc], e.end};
      }
      out_.crossings.push_back(x);
    }
    auto new_dart = [&](int d) { return 2 * new_arc_[dart_arc(d)] + (d & 1); };
    auto min_dart = [&](int f) {
      int best = -1;
      for (int d : g_.faces().faces[f].darts) {
        const int nd = new_dart(d);
        if (best < 0 || nd < best) best = nd;
      }
      return best;
    };
    out_.pieces.push_back({min_dart(piece.outer_face), host});
    for (int f : t.faces) {
      if (g_.faces().faces[f].outer) continue;
      emit_region_children(g_.region_of_face(f), FaceRef::dart(min_dart(f)));
    }
  }

  const DottedGraph& g_;
  Coder& coder_;
  std::vector<int> new_arc_;
  DiagramParts out_;
};

}  // namespace

std::string canonical_code(const DottedGraph& g) {
  Coder coder(g);
  return "{" + coder.children(0) + "}";
}

DottedGraph canonical_form(const DottedGraph& g) {
  Coder coder(g);
  Relabeler r(g, coder);
  r.emit_region_children(0, FaceRef::plane());
  return DottedGraph(r.take());
}

}  // namespace dotlab
