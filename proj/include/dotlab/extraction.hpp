#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dotlab/diagram.hpp"
#include "dotlab/polytope.hpp"

namespace dotlab {

struct ArcTrace {
  int component = -1;
  std::vector<int> segments;  // segment indices within the component, in travel order
};

struct ExtractionTrace {
  std::vector<ArcTrace> arcs;
  std::vector<CrossingPoint> crossings;
  std::vector<int> free_circle_component;  // polytope component of each free circle
};

struct Extraction {
  DottedGraph graph;
  ExtractionTrace trace;
};

// Slots at a crossing follow compass directions: 0 east, 1 north, 2 west, 3 south.
Extraction extract(const LatticePolytope& polytope);

struct RealizationBounds {
  int width = 6;   // lattice points per row
  int height = 6;
  int max_corners = 8;  // per component
  long long budget = 2'000'000;  // candidate polytopes examined
};

// Bounded search for a polytope with the same canonical code. Returns nullopt when
// none exists within bounds; throws BudgetExceeded when the budget runs out first.
std::optional<LatticePolytope> find_realization(const DottedGraph& g,
                                                const RealizationBounds& bounds);

}  // namespace dotlab
