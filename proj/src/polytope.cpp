#include "dotlab/polytope.hpp"

#include <algorithm>
#include <sstream>

namespace dotlab {

const char* to_string(PolytopeErrorKind kind) {
  switch (kind) {
    case PolytopeErrorKind::Alternation: return "AlternationError";
    case PolytopeErrorKind::Axis: return "AxisError";
    case PolytopeErrorKind::Degenerate: return "DegenerateError";
    case PolytopeErrorKind::NonGeneric: return "NonGenericError";
  }
  return "PolytopeError";
}

PolytopeError::PolytopeError(PolytopeErrorKind kind, int component, int corner,
                             const std::string& what)
    : std::runtime_error(what), kind_(kind), component_(component), corner_(corner) {}

int Segment::direction() const {
  if (horizontal()) return to.x > from.x ? 1 : -1;
  return to.y > from.y ? 1 : -1;
}

int PolytopeComponent::dot_count() const {
  return static_cast<int>(std::count_if(corners_.begin(), corners_.end(),
                                        [](const Corner& c) { return c.mark == Mark::Dot; }));
}

long long PolytopeComponent::signed_area2() const {
  long long area = 0;
  const std::size_t n = corners_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GridPoint a = corners_[i].point;
    const GridPoint b = corners_[(i + 1) % n].point;
    area += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
  }
  return area;
}

std::vector<Segment> LatticePolytope::segments() const {
  std::vector<Segment> out;
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const auto corners = components_[c].corners();
    for (std::size_t i = 0; i < corners.size(); ++i) {
      out.push_back({corners[i].point, corners[(i + 1) % corners.size()].point,
                     static_cast<int>(c), static_cast<int>(i)});
    }
  }
  return out;
}

int LatticePolytope::dot_count() const {
  int total = 0;
  for (const auto& c : components_) total += c.dot_count();
  return total;
}

LatticePolytope LatticePolytope::translated(GridPoint offset) const {
  LatticePolytope out;
  for (const auto& component : components_) {
    std::vector<Corner> corners(component.corners().begin(), component.corners().end());
    for (auto& c : corners) c.point = c.point + offset;
    out.components_.emplace_back(std::move(corners));
  }
  return out;
}

namespace {

std::string describe(const char* what, int component, int corner) {
  std::ostringstream os;
  os << what << " (component " << component << ", corner " << corner << ")";
  return os.str();
}

bool adjacent(const Segment& s, const Segment& t, const std::vector<std::size_t>& sizes) {
  if (s.component != t.component) return false;
  const int n = static_cast<int>(sizes[s.component]);
  return (s.index + 1) % n == t.index || (t.index + 1) % n == s.index;
}

struct Interval {
  int lo;
  int hi;
};

Interval span_x(const Segment& s) { return {std::min(s.from.x, s.to.x), std::max(s.from.x, s.to.x)}; }
Interval span_y(const Segment& s) { return {std::min(s.from.y, s.to.y), std::max(s.from.y, s.to.y)}; }

enum class Contact { None, Crossing, Touch };

// Classifies how two distinct segments meet. Touch covers every non-transversal
// contact that is not the shared corner of two consecutive segments.
Contact contact(const Segment& s, const Segment& t, bool consecutive, GridPoint* where) {
  if (s.horizontal() == t.horizontal()) {
    if (s.horizontal()) {
      if (s.from.y != t.from.y) return Contact::None;
      const Interval a = span_x(s), b = span_x(t);
      return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi) ? Contact::Touch : Contact::None;
    }
    if (s.from.x != t.from.x) return Contact::None;
    const Interval a = span_y(s), b = span_y(t);
    return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi) ? Contact::Touch : Contact::None;
  }
  const Segment& h = s.horizontal() ? s : t;
  const Segment& v = s.horizontal() ? t : s;
  const Interval hx = span_x(h), vy = span_y(v);
  const int x = v.from.x, y = h.from.y;
  if (x < hx.lo || x > hx.hi || y < vy.lo || y > vy.hi) return Contact::None;
  if (where) *where = {x, y};
  const bool h_interior = x > hx.lo && x < hx.hi;
  const bool v_interior = y > vy.lo && y < vy.hi;
  if (h_interior && v_interior) return Contact::Crossing;
  if (consecutive && !h_interior && !v_interior) return Contact::None;
  return Contact::Touch;
}

void check_component(const std::vector<Corner>& corners, int index) {
  const int n = static_cast<int>(corners.size());
  if (n < 4 || n % 2 != 0) {
    throw PolytopeError(PolytopeErrorKind::Degenerate, index, 0,
                        describe("component needs an even number (>= 4) of corners", index, 0));
  }
  for (int i = 0; i < n; ++i) {
    const Corner& a = corners[i];
    const Corner& b = corners[(i + 1) % n];
    if (a.mark == b.mark) {
      throw PolytopeError(PolytopeErrorKind::Alternation, index, (i + 1) % n,
                          describe("dots and X marks must alternate", index, (i + 1) % n));
    }
  }
  for (int i = 0; i < n; ++i) {
    const Corner& a = corners[i];
    const Corner& b = corners[(i + 1) % n];
    if (a.point == b.point) {
      throw PolytopeError(PolytopeErrorKind::Degenerate, index, i,
                          describe("zero-length segment", index, i));
    }
    const bool wants_horizontal = a.mark == Mark::Dot;
    const bool is_horizontal = a.point.y == b.point.y;
    const bool is_vertical = a.point.x == b.point.x;
    if ((wants_horizontal && !is_horizontal) || (!wants_horizontal && !is_vertical)) {
      throw PolytopeError(
          PolytopeErrorKind::Axis, index, i,
          describe(wants_horizontal ? "segment from a dot to an X mark must be x-parallel"
                                    : "segment from an X mark to a dot must be y-parallel",
                   index, i));
    }
  }
}

void check_generic(const std::vector<Segment>& segs, const std::vector<std::size_t>& sizes) {
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Segment& s = segs[i];
      const Segment& t = segs[j];
      if (contact(s, t, adjacent(s, t, sizes), nullptr) == Contact::Touch) {
        throw PolytopeError(PolytopeErrorKind::NonGeneric, t.component, t.index,
                            describe("segments overlap or meet at a corner", t.component,
                                     t.index));
      }
    }
  }
}

}  // namespace

LatticePolytope validate_polytope(std::vector<std::vector<Corner>> raw) {
  for (std::size_t c = 0; c < raw.size(); ++c) check_component(raw[c], static_cast<int>(c));
  LatticePolytope out;
  std::vector<std::size_t> sizes;
  for (auto& corners : raw) {
    sizes.push_back(corners.size());
    out.components_.emplace_back(std::move(corners));
  }
  check_generic(out.segments(), sizes);
  return out;
}

LatticePolytope make_polytope_unchecked(std::vector<PolytopeComponent> components) {
  LatticePolytope out;
  out.components_ = std::move(components);
  return out;
}

std::vector<CrossingPoint> crossings(const LatticePolytope& polytope) {
  const auto segs = polytope.segments();
  std::vector<CrossingPoint> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!segs[i].horizontal()) continue;
    for (std::size_t j = 0; j < segs.size(); ++j) {
      if (segs[j].horizontal()) continue;
      GridPoint p;
      if (contact(segs[i], segs[j], false, &p) == Contact::Crossing) {
        out.push_back({p, segs[i], segs[j], segs[i].direction() * segs[j].direction()});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CrossingPoint& a, const CrossingPoint& b) { return a.point < b.point; });
  return out;
}

namespace {

int winding_of(std::span<const Corner> corners, HalfPoint probe, bool* on_curve) {
  int w = 0;
  const std::size_t n = corners.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GridPoint a = corners[i].point;
    const GridPoint b = corners[(i + 1) % n].point;
    const int ax = 2 * a.x, ay = 2 * a.y, bx = 2 * b.x, by = 2 * b.y;
    if (ay == by) {
      if (probe.y2 == ay && probe.x2 >= std::min(ax, bx) && probe.x2 <= std::max(ax, bx)) {
        *on_curve = true;
      }
      continue;
    }
    const int lo = std::min(ay, by), hi = std::max(ay, by);
    if (probe.x2 == ax && probe.y2 >= lo && probe.y2 <= hi) *on_curve = true;
    // Half-open rule on y so that rays through corners count once.
    if (ax > probe.x2 && probe.y2 >= lo && probe.y2 < hi) w += by > ay ? 1 : -1;
  }
  return w;
}

}  // namespace

int winding_number(const PolytopeComponent& component, HalfPoint probe) {
  bool on_curve = false;
  const int w = winding_of(component.corners(), probe, &on_curve);
  if (on_curve) throw ProbeOnCurve("probe lies on the polytope");
  return w;
}

int winding_number(const LatticePolytope& polytope, HalfPoint probe) {
  int total = 0;
  for (const auto& c : polytope.components()) total += winding_number(c, probe);
  return total;
}

bool is_simple(const PolytopeComponent& component) {
  const auto corners = component.corners();
  const int n = static_cast<int>(corners.size());
  std::vector<Segment> segs;
  for (int i = 0; i < n; ++i) segs.push_back({corners[i].point, corners[(i + 1) % n].point, 0, i});
  const std::vector<std::size_t> sizes{static_cast<std::size_t>(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (contact(segs[i], segs[j], adjacent(segs[i], segs[j], sizes), nullptr) != Contact::None) {
        return false;
      }
    }
  }
  return true;
}

CornerAudit corner_angle_audit(std::span<const GridPoint> cycle) {
  const int n = static_cast<int>(cycle.size());
  if (n < 4) throw NotSimple("closed rectilinear curve needs at least 4 corners");
  std::vector<Segment> segs;
  long long area2 = 0;
  for (int i = 0; i < n; ++i) {
    const GridPoint a = cycle[i];
    const GridPoint b = cycle[(i + 1) % n];
    if (a == b || (a.x != b.x && a.y != b.y)) throw NotSimple("segments must be axis-parallel");
    segs.push_back({a, b, 0, i});
    area2 += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
  }
  const std::vector<std::size_t> sizes{static_cast<std::size_t>(n)};
  for (int i = 0; i < n; ++i) {
    if (segs[i].horizontal() == segs[(i + 1) % n].horizontal()) {
      throw NotSimple("consecutive segments must be perpendicular");
    }
    for (int j = i + 1; j < n; ++j) {
      if (contact(segs[i], segs[j], adjacent(segs[i], segs[j], sizes), nullptr) != Contact::None) {
        throw NotSimple("curve is not simple");
      }
    }
  }
  const int orientation = area2 > 0 ? 1 : -1;
  CornerAudit audit;
  for (int i = 0; i < n; ++i) {
    const GridPoint a = cycle[(i + n - 1) % n], b = cycle[i], c = cycle[(i + 1) % n];
    const long long turn = static_cast<long long>(b.x - a.x) * (c.y - b.y) -
                           static_cast<long long>(b.y - a.y) * (c.x - b.x);
    if ((turn > 0 ? 1 : -1) == orientation) {
      ++audit.quarter;
    } else {
      ++audit.three_quarter;
    }
  }
  return audit;
}

CornerAudit corner_angle_audit(const PolytopeComponent& component) {
  std::vector<GridPoint> pts;
  for (const auto& c : component.corners()) pts.push_back(c.point);
  return corner_angle_audit(pts);
}

}  // namespace dotlab
