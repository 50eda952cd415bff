#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "dotlab/diagram.hpp"

namespace dotlab {

enum class ComponentKind : std::uint8_t {
  Circle,
  Loop,
  Bigon,
  CrossingIncluding,
  Outermost,
};

const char* to_string(ComponentKind kind);

// A simple closed path in the diagram (or a free circle) with the disk it bounds.
struct ComponentWitness {
  ComponentKind kind = ComponentKind::Circle;
  std::vector<PathStep> path;   // empty for a free circle
  std::vector<int> crossings;   // crossings visited, in path order
  int free_circle = -1;
  std::vector<int> disk;        // regions inside, sorted
  int winding = 1;              // +1 if the disk lies on the left of the path
  int dots = 0;
  int circle = -1;              // immersed circle (circle and loop components)

  // Bigons: the two sides, each a run of arcs along one strand.
  bool coherent = false;
  std::array<std::vector<PathStep>, 2> sides;
  std::array<int, 2> side_dots{0, 0};
  std::array<int, 2> corners{-1, -1};  // start crossing of each side

  // Crossings at which the path turns instead of going straight through.
  std::vector<int> turning;
};

std::vector<ComponentWitness> circle_components(const DottedGraph& g);
std::vector<ComponentWitness> loop_components(const DottedGraph& g);
std::vector<ComponentWitness> bigon_components(const DottedGraph& g);
std::vector<ComponentWitness> crossing_including_components(const DottedGraph& g);
std::vector<ComponentWitness> outermost_components(const DottedGraph& g);

// Sub-diagram regions for a split of the immersed circles into two parts.
struct SubRegion {
  int label = 0;
  std::vector<int> regions;  // regions of the whole diagram it consists of
};

struct OverlapRelation {
  std::vector<SubRegion> first;   // regions of the first part with nonzero label
  std::vector<SubRegion> second;  // regions of the second part with nonzero label
  // (i, j): first[i] is overlapping, second[j] is overlapped.
  std::vector<std::pair<int, int>> pairs;
};

// `in_first[c]` tells which part immersed circle c belongs to.
OverlapRelation overlapped_regions(const DottedGraph& g, const std::vector<bool>& in_first);

// Regions of the sub-diagram formed by the circles with `keep[c]`, as classes of
// regions of g; returns the class of every region.
std::vector<int> sub_diagram_classes(const DottedGraph& g, const std::vector<bool>& keep);

}  // namespace dotlab
