#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dotlab {

// Which end of an arc sits at a crossing slot. Head: the arc arrives there.
enum class End : std::uint8_t { Head, Tail };

struct ArcEnd {
  int arc = -1;
  End end = End::Head;

  auto operator<=>(const ArcEnd&) const = default;
};

// Four arc ends in counterclockwise order. Slots 0/2 and 1/3 are the two
// through-strands; each strand has one Head and one Tail.
struct Crossing {
  std::array<ArcEnd, 4> rotation;

  auto operator<=>(const Crossing&) const = default;
};

struct Slot {
  int crossing = -1;
  int index = 0;

  auto operator<=>(const Slot&) const = default;
};

struct Arc {
  int dots = 0;
  int circle = -1;  // derived: immersed circle the arc belongs to
  Slot tail;        // derived from the crossing rotations
  Slot head;

  auto operator<=>(const Arc&) const = default;
};

// Darts are arc sides: dart 2a is the left side of arc a, 2a+1 the right side.
// A face is the orbit of darts that have it on their left when walked.
inline int left_dart(int arc) { return 2 * arc; }
inline int right_dart(int arc) { return 2 * arc + 1; }
inline int dart_arc(int dart) { return dart >> 1; }
inline bool dart_is_left(int dart) { return (dart & 1) == 0; }

enum class FaceRefKind : std::uint8_t { Plane, Dart, FreeInside };

// A place that can host a nested piece: the plane, the face on a given dart of
// another map piece, or the inside of a free circle.
struct FaceRef {
  FaceRefKind kind = FaceRefKind::Plane;
  int index = -1;

  static FaceRef plane() { return {}; }
  static FaceRef dart(int d) { return {FaceRefKind::Dart, d}; }
  static FaceRef free_inside(int fc) { return {FaceRefKind::FreeInside, fc}; }
  auto operator<=>(const FaceRef&) const = default;
};

struct FreeCircle {
  int dots = 0;
  int sign = 1;  // +1 counterclockwise
  FaceRef host;
  int circle = -1;  // derived

  auto operator<=>(const FreeCircle&) const = default;
};

// Embedding data of one connected map piece: a dart on its unbounded face and
// the face hosting it.
struct PieceEmbedding {
  int outer_dart = -1;
  FaceRef host;

  auto operator<=>(const PieceEmbedding&) const = default;
};

struct DiagramParts {
  std::vector<Crossing> crossings;
  std::vector<Arc> arcs;
  std::vector<FreeCircle> free_circles;
  std::vector<PieceEmbedding> pieces;
};

enum class DiagramErrorKind : std::uint8_t {
  InconsistentRotation,
  InvalidEmbedding,
  ContradictoryLabels,
};

class DiagramError : public std::runtime_error {
 public:
  DiagramError(DiagramErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  DiagramErrorKind kind() const { return kind_; }

 private:
  DiagramErrorKind kind_;
};

// A bounded search ran out of budget before reaching an answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Face {
  int piece = -1;
  bool outer = false;
  std::vector<int> darts;  // walk order
};

struct Piece {
  bool is_free = false;
  int free_circle = -1;
  std::vector<int> arcs;
  std::vector<int> crossings;
  std::vector<int> faces;  // map pieces only
  int outer_face = -1;
  FaceRef host;
  int host_region = 0;
  int depth = 0;
  std::vector<int> bounded_regions;
};

enum class RegionKind : std::uint8_t { Plane, Face, FreeInside };

// A connected region of the plane minus the diagram.
struct Region {
  RegionKind kind = RegionKind::Plane;
  int face = -1;         // RegionKind::Face
  int free_circle = -1;  // RegionKind::FreeInside
  int owner = -1;        // piece whose bounded face this is
  std::vector<int> children;  // pieces hosted here
};

// Faces and regions of a diagram. Faces are dart orbits of map pieces; free
// circles contribute an inside region and no faces.
struct FaceSet {
  std::vector<Face> faces;
  std::vector<int> dart_face;
  std::vector<Piece> pieces;
  std::vector<Region> regions;  // region 0 is the plane
  std::vector<int> face_region;
};

struct FaceLabeling {
  int circle_count = 0;
  std::vector<int> total;    // per region
  std::vector<int> winding;  // per region, circle_count entries each

  int at(int region, int circle) const { return winding[region * circle_count + circle]; }
};

class DottedGraph {
 public:
  DottedGraph();
  // Validates and derives arc endpoints, immersed circles, faces and labels.
  explicit DottedGraph(DiagramParts parts);

  const DiagramParts& parts() const { return parts_; }
  int crossing_count() const { return static_cast<int>(parts_.crossings.size()); }
  int arc_count() const { return static_cast<int>(parts_.arcs.size()); }
  int free_circle_count() const { return static_cast<int>(parts_.free_circles.size()); }
  int circle_count() const { return circle_count_; }
  int dot_total() const;
  bool empty() const { return parts_.arcs.empty() && parts_.free_circles.empty(); }

  const Crossing& crossing(int i) const { return parts_.crossings[i]; }
  const Arc& arc(int i) const { return parts_.arcs[i]; }
  const FreeCircle& free_circle(int i) const { return parts_.free_circles[i]; }

  int next_dart(int dart) const;
  // Slot a dart's walk leaves from / arrives at.
  Slot dart_start(int dart) const;
  Slot dart_end(int dart) const;
  // Dart leaving a crossing through `slot` with the quadrant (slot, slot+1) on its left.
  int dart_leaving(Slot slot) const;

  const FaceSet& faces() const { return faces_; }
  const FaceLabeling& labels() const { return labels_; }
  int face_of_dart(int dart) const { return faces_.dart_face[dart]; }
  int region_of_dart(int dart) const { return faces_.face_region[faces_.dart_face[dart]]; }
  int region_of_face(int face) const { return faces_.face_region[face]; }
  int inside_region(int free_circle) const { return free_inside_region_[free_circle]; }
  int region_count() const { return static_cast<int>(faces_.regions.size()); }
  // `region` and every region nested inside it.
  std::vector<int> regions_within(int region) const;
  int piece_of_arc(int arc) const { return arc_piece_[arc]; }
  int piece_of_free_circle(int fc) const { return free_piece_[fc]; }
  // Immersed circles: arcs in strand order, or a free circle.
  std::span<const int> circle_arcs(int circle) const { return circle_arcs_[circle]; }
  int circle_free_circle(int circle) const { return circle_free_[circle]; }
  bool circle_is_embedded(int circle) const;
  int circle_dots(int circle) const;

 private:
  void derive();

  DiagramParts parts_;
  int circle_count_ = 0;
  std::vector<std::vector<int>> circle_arcs_;
  std::vector<int> circle_free_;
  std::vector<int> arc_piece_;
  std::vector<int> free_piece_;
  std::vector<int> free_inside_region_;
  FaceSet faces_;
  FaceLabeling labels_;
};

FaceSet build_faces(const DottedGraph& g);
FaceLabeling label_regions(const DottedGraph& g);

// Region winding of a closed path in one map piece. `steps` lists (arc, forward)
// pairs in walk order. Returns the winding per region (0 outside the path's disk).
struct PathStep {
  int arc = -1;
  bool forward = true;

  auto operator<=>(const PathStep&) const = default;
};
std::vector<int> path_region_winding(const DottedGraph& g, std::span<const PathStep> steps);

}  // namespace dotlab
