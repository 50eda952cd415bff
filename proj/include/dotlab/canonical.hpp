#pragma once

#include <string>

#include "dotlab/diagram.hpp"

namespace dotlab {

// Isomorphism invariant of the oriented planar map with dots, nesting and outer
// faces: lexicographic minimum over all crossing/slot roots of a breadth-first
// encoding. Mirror images get different codes.
std::string canonical_code(const DottedGraph& g);

// The same diagram with ids renumbered in canonical traversal order. Isomorphic
// diagrams give identical parts.
DottedGraph canonical_form(const DottedGraph& g);

}  // namespace dotlab
