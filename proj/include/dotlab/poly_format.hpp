#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dotlab/polytope.hpp"

namespace dotlab {

// Error in a text input, with 1-based line/column. `kind` is the polytope error
// name (AlternationError, ...) or "SyntaxError".
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string kind, int line, int column, const std::string& message);

  const std::string& kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string kind_;
  int line_;
  int column_;
};

// `.poly`: one component per line, tokens `D x y` / `X x y` in traversal order,
// `#` starts a comment, blank lines are ignored.
LatticePolytope parse_poly(std::string_view text);
std::string serialize_poly(const LatticePolytope& polytope);

}  // namespace dotlab
