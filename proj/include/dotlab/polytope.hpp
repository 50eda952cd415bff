#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dotlab {

struct GridPoint {
  int x = 0;
  int y = 0;

  auto operator<=>(const GridPoint&) const = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }

// A point with half-integer resolution, stored as doubled coordinates.
// Probes at cell centres are (2x+1, 2y+1).
struct HalfPoint {
  int x2 = 0;
  int y2 = 0;

  static HalfPoint cell_centre(int x, int y) { return {2 * x + 1, 2 * y + 1}; }
  auto operator<=>(const HalfPoint&) const = default;
};

enum class Mark : std::uint8_t { Dot, X };

struct Corner {
  GridPoint point;
  Mark mark = Mark::Dot;

  auto operator<=>(const Corner&) const = default;
};

enum class PolytopeErrorKind : std::uint8_t {
  Alternation,
  Axis,
  Degenerate,
  NonGeneric,
};

const char* to_string(PolytopeErrorKind kind);

class PolytopeError : public std::runtime_error {
 public:
  PolytopeError(PolytopeErrorKind kind, int component, int corner, const std::string& what);

  PolytopeErrorKind kind() const { return kind_; }
  // Location of the first violation: component index and corner index within it.
  int component() const { return component_; }
  int corner() const { return corner_; }

 private:
  PolytopeErrorKind kind_;
  int component_;
  int corner_;
};

// Axis-parallel segment of a component, from corner `index` to corner `index+1`.
struct Segment {
  GridPoint from;
  GridPoint to;
  int component = 0;
  int index = 0;

  bool horizontal() const { return from.y == to.y; }
  int direction() const;  // +1 if the coordinate grows along the traversal, -1 otherwise
};

class PolytopeComponent {
 public:
  PolytopeComponent() = default;
  explicit PolytopeComponent(std::vector<Corner> corners) : corners_(std::move(corners)) {}

  std::span<const Corner> corners() const { return corners_; }
  std::size_t size() const { return corners_.size(); }
  const Corner& corner(std::size_t i) const { return corners_[i % corners_.size()]; }
  int dot_count() const;
  // Twice the signed area; positive for counterclockwise traversal.
  long long signed_area2() const;

  auto operator<=>(const PolytopeComponent&) const = default;

 private:
  std::vector<Corner> corners_;
};

struct CrossingPoint {
  GridPoint point;
  Segment horizontal;
  Segment vertical;
  // Handedness of the two oriented strands: product of the horizontal and
  // vertical travel directions.
  int sign = 0;
};

class LatticePolytope {
 public:
  LatticePolytope() = default;

  std::span<const PolytopeComponent> components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  std::vector<Segment> segments() const;
  int dot_count() const;
  LatticePolytope translated(GridPoint offset) const;

  auto operator<=>(const LatticePolytope&) const = default;

 private:
  friend LatticePolytope validate_polytope(std::vector<std::vector<Corner>> raw);
  friend LatticePolytope make_polytope_unchecked(std::vector<PolytopeComponent> components);

  std::vector<PolytopeComponent> components_;
};

// Validates marks, axis directions, lengths and genericity. Throws PolytopeError
// describing the first violation found (components in order, then pairwise genericity).
LatticePolytope validate_polytope(std::vector<std::vector<Corner>> raw);

// For enumerators that already guarantee validity.
LatticePolytope make_polytope_unchecked(std::vector<PolytopeComponent> components);

// All transversal double points, sorted by position.
std::vector<CrossingPoint> crossings(const LatticePolytope& polytope);

class ProbeOnCurve : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Geometric winding number of all components around `probe`, counted by a ray towards +x.
int winding_number(const LatticePolytope& polytope, HalfPoint probe);
int winding_number(const PolytopeComponent& component, HalfPoint probe);

class NotSimple : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CornerAudit {
  int quarter = 0;        // inner angle pi/2
  int three_quarter = 0;  // inner angle 3pi/2

  auto operator<=>(const CornerAudit&) const = default;
};

// Inner-angle census of a simple rectilinear closed curve. Consecutive points must
// be axis-aligned; collinear consecutive segments are rejected.
CornerAudit corner_angle_audit(std::span<const GridPoint> cycle);
CornerAudit corner_angle_audit(const PolytopeComponent& component);

bool is_simple(const PolytopeComponent& component);

}  // namespace dotlab
