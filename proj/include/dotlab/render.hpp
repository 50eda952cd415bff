#pragma once

#include <string>

#include "dotlab/diagram.hpp"
#include "dotlab/extraction.hpp"
#include "dotlab/polytope.hpp"

namespace dotlab {

// The lattice curves with dots as filled disks, X marks as crosses, crossings as
// small rings and each region's label as text.
std::string render_polytope_svg(const LatticePolytope& p);

struct RenderedDiagram {
  std::string svg;
  bool fallback = false;  // no realization found; schematic layout used
  std::string notice;     // LayoutFallbackNotice text when `fallback`
};

// Draws a realization when the bounded search finds one. Otherwise a schematic
// layout: crossings on a line, arcs as orthogonal detours above and below it,
// free circles as squares. The schematic need not be planar.
RenderedDiagram render_diagram_svg(const DottedGraph& g, const RealizationBounds& bounds = {});

}  // namespace dotlab
