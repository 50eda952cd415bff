#include "dotlab/poly_format.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace dotlab {

FormatError::FormatError(std::string kind, int line, int column, const std::string& message)
    : std::runtime_error(message), kind_(std::move(kind)), line_(line), column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token& t, int line) {
  int value = 0;
  const auto* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("SyntaxError", line, t.column,
                      "expected integer, got '" + std::string(t.text) + "'");
  }
  return value;
}

}  // namespace

LatticePolytope parse_poly(std::string_view text) {
  std::vector<std::vector<Corner>> raw;
  // Source position of every corner, for error reporting.
  std::vector<std::vector<std::pair<int, int>>> where;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    const auto tokens = tokenize(line);
    if (!tokens.empty()) {
      if (tokens.size() % 3 != 0) {
        throw FormatError("SyntaxError", line_no, tokens.back().column,
                          "corner tokens come in triples: D|X x y");
      }
      std::vector<Corner> corners;
      std::vector<std::pair<int, int>> positions;
      for (std::size_t i = 0; i < tokens.size(); i += 3) {
        Corner c;
        if (tokens[i].text == "D") {
          c.mark = Mark::Dot;
        } else if (tokens[i].text == "X") {
          c.mark = Mark::X;
        } else {
          throw FormatError("SyntaxError", line_no, tokens[i].column,
                            "expected D or X, got '" + std::string(tokens[i].text) + "'");
        }
        c.point = {parse_int(tokens[i + 1], line_no), parse_int(tokens[i + 2], line_no)};
        corners.push_back(c);
        positions.emplace_back(line_no, tokens[i].column);
      }
      raw.push_back(std::move(corners));
      where.push_back(std::move(positions));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  try {
    return validate_polytope(std::move(raw));
  } catch (const PolytopeError& e) {
    const auto& positions = where[e.component()];
    const auto [line, column] = positions[e.corner() % positions.size()];
    throw FormatError(to_string(e.kind()), line, column, e.what());
  }
}

std::string serialize_poly(const LatticePolytope& polytope) {
  std::ostringstream os;
  for (const auto& component : polytope.components()) {
    bool first = true;
    for (const auto& c : component.corners()) {
      if (!first) os << ' ';
      first = false;
      os << (c.mark == Mark::Dot ? 'D' : 'X') << ' ' << c.point.x << ' ' << c.point.y;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace dotlab
