#include "dotlab/dg_format.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "dotlab/canonical.hpp"

namespace dotlab {

namespace {

struct Tok {
  std::string_view text;
  int column;
};

std::vector<Tok> split(std::string_view line) {
  std::vector<Tok> out;
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

[[noreturn]] void syntax(int line, int column, const std::string& msg) {
  throw FormatError("SyntaxError", line, column, msg);
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

int want_int(const Tok& t, int line) {
  const auto v = to_int(t.text);
  if (!v || *v < 0) syntax(line, t.column, "expected non-negative integer, got '" + std::string(t.text) + "'");
  return *v;
}

// "<id>:" at the end of a record header.
int want_id(const Tok& t, int line) {
  if (t.text.empty() || t.text.back() != ':') syntax(line, t.column, "expected '<id>:'");
  Tok inner{t.text.substr(0, t.text.size() - 1), t.column};
  return want_int(inner, line);
}

void want_word(const Tok& t, std::string_view word, int line) {
  if (t.text != word) syntax(line, t.column, "expected '" + std::string(word) + "'");
}

FaceRef want_face(const Tok& t, int line) {
  const std::string_view s = t.text;
  if (s == "plane") return FaceRef::plane();
  if (s.size() > 4 && s.front() == 'f' && s.substr(s.size() - 3) == ".in") {
    const auto v = to_int(s.substr(1, s.size() - 4));
    if (v && *v >= 0) return FaceRef::free_inside(*v);
  }
  if (s.size() >= 2 && (s.back() == 'L' || s.back() == 'R')) {
    const auto v = to_int(s.substr(0, s.size() - 1));
    if (v && *v >= 0) return FaceRef::dart(s.back() == 'L' ? left_dart(*v) : right_dart(*v));
  }
  syntax(line, t.column, "bad face reference '" + std::string(s) + "'");
}

std::string face_name(FaceRef f) {
  switch (f.kind) {
    case FaceRefKind::Plane: return "plane";
    case FaceRefKind::FreeInside: return "f" + std::to_string(f.index) + ".in";
    case FaceRefKind::Dart:
      return std::to_string(dart_arc(f.index)) + (dart_is_left(f.index) ? "L" : "R");
  }
  return "?";
}

}  // namespace

DottedGraph parse_dg(std::string_view text) {
  std::map<int, std::pair<Crossing, int>> crossings;  // id -> (record, line)
  std::map<int, std::pair<Arc, int>> arcs;
  std::map<int, int> arc_circle;
  std::map<int, std::pair<FreeCircle, int>> frees;
  std::vector<std::pair<int, int>> outers;                 // (dart, line)
  std::map<int, std::pair<FaceRef, int>> contains;         // arc -> host
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    const auto t = split(line);
    if (!t.empty()) {
      const std::string_view head = t[0].text;
      if (head == "crossing") {
        if (t.size() != 6) syntax(line_no, t[0].column, "crossing needs an id and 4 arc ends");
        const int id = want_id(t[1], line_no);
        Crossing c;
        for (int k = 0; k < 4; ++k) {
          const auto s = t[2 + k].text;
          const auto colon = s.find(':');
          if (colon == std::string_view::npos) syntax(line_no, t[2 + k].column, "expected <arc>:head|tail");
          const auto arc = to_int(s.substr(0, colon));
          const auto end = s.substr(colon + 1);
          if (!arc || *arc < 0 || (end != "head" && end != "tail")) {
            syntax(line_no, t[2 + k].column, "expected <arc>:head|tail");
          }
          c.rotation[k] = {*arc, end == "head" ? End::Head : End::Tail};
        }
        if (!crossings.emplace(id, std::make_pair(c, line_no)).second) {
          syntax(line_no, t[1].column, "duplicate crossing id");
        }
      } else if (head == "arc") {
        if (t.size() != 6) syntax(line_no, t[0].column, "arc <id>: dots <n> circle <c>");
        const int id = want_id(t[1], line_no);
        want_word(t[2], "dots", line_no);
        want_word(t[4], "circle", line_no);
        Arc a;
        a.dots = want_int(t[3], line_no);
        arc_circle[id] = want_int(t[5], line_no);
        if (!arcs.emplace(id, std::make_pair(a, line_no)).second) {
          syntax(line_no, t[1].column, "duplicate arc id");
        }
      } else if (head == "freecircle") {
        if (t.size() != 8) syntax(line_no, t[0].column, "freecircle <id>: dots <n> sign <+|-> face <f>");
        const int id = want_id(t[1], line_no);
        want_word(t[2], "dots", line_no);
        want_word(t[4], "sign", line_no);
        want_word(t[6], "face", line_no);
        FreeCircle f;
        f.dots = want_int(t[3], line_no);
        if (t[5].text != "+" && t[5].text != "-") syntax(line_no, t[5].column, "sign must be + or -");
        f.sign = t[5].text == "+" ? 1 : -1;
        f.host = want_face(t[7], line_no);
        if (!frees.emplace(id, std::make_pair(f, line_no)).second) {
          syntax(line_no, t[1].column, "duplicate free circle id");
        }
      } else if (head == "outer") {
        if (t.size() != 2) syntax(line_no, t[0].column, "outer <face>");
        const FaceRef f = want_face(t[1], line_no);
        if (f.kind != FaceRefKind::Dart) syntax(line_no, t[1].column, "outer face must name an arc side");
        outers.emplace_back(f.index, line_no);
      } else if (head == "contain") {
        if (t.size() != 4 || t[1].text.size() < 2 || t[1].text.front() != 'm') {
          syntax(line_no, t[0].column, "contain m<arc> in <face>");
        }
        want_word(t[2], "in", line_no);
        const auto arc = to_int(t[1].text.substr(1));
        if (!arc || *arc < 0) syntax(line_no, t[1].column, "expected m<arc>");
        contains[*arc] = {want_face(t[3], line_no), line_no};
      } else {
        syntax(line_no, t[0].column, "unknown record '" + std::string(head) + "'");
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  DiagramParts parts;
  auto dense = [&](const auto& m, const char* what) {
    int expect = 0;
    for (const auto& [id, rec] : m) {
      if (id != expect++) {
        throw FormatError("SyntaxError", rec.second, 1, std::string(what) + " ids must be 0..n-1");
      }
    }
  };
  dense(crossings, "crossing");
  dense(arcs, "arc");
  dense(frees, "free circle");
  for (const auto& [id, rec] : crossings) parts.crossings.push_back(rec.first);
  for (const auto& [id, rec] : arcs) parts.arcs.push_back(rec.first);
  for (const auto& [id, rec] : frees) parts.free_circles.push_back(rec.first);
  for (const auto& [dart, line] : outers) {
    if (dart_arc(dart) >= static_cast<int>(parts.arcs.size())) {
      throw FormatError("SyntaxError", line, 1, "outer face refers to unknown arc");
    }
    parts.pieces.push_back({dart, FaceRef::plane()});
  }
  // Hosts of map pieces, matched by arcs once the pieces are known.
  try {
    DottedGraph probe(parts);
    for (auto& e : parts.pieces) {
      const int piece = probe.piece_of_arc(dart_arc(e.outer_dart));
      for (const auto& [arc, host] : contains) {
        if (arc < probe.arc_count() && probe.piece_of_arc(arc) == piece) e.host = host.first;
      }
    }
    for (const auto& [arc, host] : contains) {
      if (arc >= probe.arc_count()) {
        throw FormatError("SyntaxError", host.second, 1, "contain refers to unknown arc");
      }
    }
    DottedGraph g(std::move(parts));
    for (const auto& [id, rec] : arcs) {
      if (g.arc(id).circle != arc_circle[id]) {
        throw FormatError("SyntaxError", rec.second, 1,
                          "arc " + std::to_string(id) + " lies on circle " +
                              std::to_string(g.arc(id).circle));
      }
    }
    return g;
  } catch (const DiagramError& e) {
    const char* kind = e.kind() == DiagramErrorKind::InconsistentRotation ? "InconsistentRotation"
                       : e.kind() == DiagramErrorKind::InvalidEmbedding   ? "InvalidEmbedding"
                                                                          : "ContradictoryLabels";
    throw FormatError(kind, 0, 0, e.what());
  }
}

std::string serialize_dg(const DottedGraph& input) {
  const DottedGraph g = canonical_form(input);
  std::ostringstream os;
  for (int c = 0; c < g.crossing_count(); ++c) {
    os << "crossing " << c << ':';
    for (const auto& e : g.crossing(c).rotation) {
      os << ' ' << e.arc << (e.end == End::Head ? ":head" : ":tail");
    }
    os << '\n';
  }
  for (int a = 0; a < g.arc_count(); ++a) {
    os << "arc " << a << ": dots " << g.arc(a).dots << " circle " << g.arc(a).circle << '\n';
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    const auto& fc = g.free_circle(f);
    os << "freecircle " << f << ": dots " << fc.dots << " sign " << (fc.sign > 0 ? '+' : '-')
       << " face " << face_name(fc.host) << '\n';
  }
  const auto& pieces = g.parts().pieces;
  for (const auto& e : pieces) os << "outer " << face_name(FaceRef::dart(e.outer_dart)) << '\n';
  for (const auto& e : pieces) {
    if (e.host.kind == FaceRefKind::Plane) continue;
    const int p = g.piece_of_arc(dart_arc(e.outer_dart));
    os << "contain m" << g.faces().pieces[p].arcs.front() << " in " << face_name(e.host) << '\n';
  }
  return os.str();
}

}  // namespace dotlab
