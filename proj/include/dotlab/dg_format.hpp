#pragma once

#include <string>
#include <string_view>

#include "dotlab/diagram.hpp"
#include "dotlab/poly_format.hpp"

namespace dotlab {

// `.dg` lines:
//   crossing <id>: <arc>:<head|tail> x4      counterclockwise rotation
//   arc <id>: dots <n> circle <c>
//   freecircle <id>: dots <n> sign <+|-> face <face>
//   outer <face>                              one per connected map piece
//   contain m<arc> in <face>                  nesting of a map piece
// A face is `plane`, `<arc>L` / `<arc>R` (the face left/right of an arc), or
// `f<id>.in` (inside a free circle). Errors are FormatError.
DottedGraph parse_dg(std::string_view text);

// Writes the canonical form, so isomorphic diagrams serialize identically.
std::string serialize_dg(const DottedGraph& g);

}  // namespace dotlab
