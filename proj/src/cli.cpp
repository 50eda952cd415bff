#include "dotlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "dotlab/canonical.hpp"
#include "dotlab/census.hpp"
#include "dotlab/dg_format.hpp"
#include "dotlab/extraction.hpp"
#include "dotlab/poly_format.hpp"
#include "dotlab/render.hpp"
#include "dotlab/rewrite.hpp"

namespace dotlab {

namespace {

using nlohmann::json;

// An input error with an error name for the report.
struct InputError : std::runtime_error {
  InputError(std::string kind, const std::string& what) : std::runtime_error(what), kind(std::move(kind)) {}
  std::string kind;
  int line = 0;
  int column = 0;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("IOError", "cannot write " + path);
  f << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Input {
  std::optional<LatticePolytope> polytope;
  DottedGraph graph;
};

Input load(const std::string& path) {
  Input in;
  if (ends_with(path, ".poly")) {
    in.polytope = parse_poly(read_text(path));
    in.graph = extract(*in.polytope).graph;
  } else if (ends_with(path, ".dg")) {
    in.graph = parse_dg(read_text(path));
  } else {
    throw InputError("UsageError", "input must be a .poly or .dg file: " + path);
  }
  return in;
}

std::pair<int, int> parse_window(const std::string& s) {
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw InputError("UsageError", "window must look like 7x4: " + s);
  return {std::stoi(m[1]), std::stoi(m[2])};
}

std::pair<int, int> parse_range(const std::string& s) {
  static const std::regex re(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw InputError("UsageError", "components must look like 2 or 1..3: " + s);
  const int lo = std::stoi(m[1]);
  return {lo, m[2].matched ? std::stoi(m[2]) : lo};
}

std::string signed_label(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

std::string kinds_of(const ReductionCertificate& c) {
  std::string s;
  for (const auto& st : c.steps) s += (s.empty() ? "" : " ") + std::string(to_string(st.site.kind));
  return s;
}

struct Options {
  bool json = false;
  int jobs = 0;
  std::string input;
  std::string output;
  std::string window;
  std::string components;
  int max_corners = -1;
  bool full = false;
  int budget_depth = 32;
  long long budget_nodes = 100'000;
  long long realize_budget = RealizationBounds{}.budget;
  bool good = false;
  bool no_overlap = false;
  std::string kind;
  int index = -1;
  std::string site;
  bool polytopes = false;
  bool reduce = false;
  std::string check;
};

SearchBudget budget_of(const Options& o) { return {o.budget_depth, o.budget_nodes}; }

RealizationBounds bounds_of(const Options& o) {
  RealizationBounds b;
  if (!o.window.empty()) std::tie(b.width, b.height) = parse_window(o.window);
  if (o.max_corners > 0) b.max_corners = o.max_corners;
  b.budget = o.realize_budget;
  return b;
}

EnumSpec spec_of(const Options& o, int default_lo, int default_hi) {
  EnumSpec s;
  if (o.window.empty()) throw InputError("UsageError", "--window is required");
  std::tie(s.width, s.height) = parse_window(o.window);
  std::tie(s.min_components, s.max_components) =
      o.components.empty() ? std::pair{default_lo, default_hi} : parse_range(o.components);
  s.max_corners = o.max_corners > 0 ? o.max_corners : 4;
  s.compress = !o.full;
  check_spec(s);
  return s;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto in = load(o.input);
  const auto& g = in.graph;
  if (o.json) {
    json j = {{"valid", true}, {"code", canonical_code(g)}, {"crossings", g.crossing_count()},
              {"arcs", g.arc_count()}, {"free_circles", g.free_circle_count()}, {"dots", g.dot_total()}};
    if (in.polytope) j["components"] = in.polytope->size();
    out << j.dump(2) << "\n";
  } else {
    out << "ok: ";
    if (in.polytope) out << in.polytope->size() << " component(s), ";
    out << g.crossing_count() << " crossing(s), " << g.arc_count() << " arc(s), " << g.free_circle_count()
        << " free circle(s), " << g.dot_total() << " dot(s)\n";
  }
  return kExitOk;
}

int cmd_extract(const Options& o, std::ostream& out) {
  if (!ends_with(o.input, ".poly")) throw InputError("UsageError", "extract needs a .poly file");
  const auto in = load(o.input);
  const auto text = serialize_dg(in.graph);
  if (o.json) {
    json j = {{"code", canonical_code(in.graph)}, {"diagram", text}};
    write_text(o.output, j.dump(2) + "\n", out);
  } else {
    write_text(o.output, text, out);
  }
  return kExitOk;
}

int cmd_realize(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = load(o.input);
  const auto p = find_realization(in.graph, bounds_of(o));
  if (!p) {
    if (o.json) out << json{{"found", false}}.dump(2) << "\n";
    err << "no realization within bounds\n";
    return kExitCounterexample;
  }
  const auto text = serialize_poly(*p);
  if (o.json) {
    write_text(o.output, json{{"found", true}, {"polytope", text}}.dump(2) + "\n", out);
  } else {
    write_text(o.output, text, out);
  }
  return kExitOk;
}

int cmd_label(const Options& o, std::ostream& out) {
  const auto g = load(o.input).graph;
  const auto& l = g.labels();
  std::vector<int> bounded;
  json regions = json::array();
  for (int r = 0; r < g.region_count(); ++r) {
    std::vector<int> w;
    for (int c = 0; c < l.circle_count; ++c) w.push_back(l.at(r, c));
    regions.push_back({{"region", r}, {"label", l.total[r]}, {"winding", w}});
    if (r > 0) bounded.push_back(l.total[r]);
  }
  std::sort(bounded.rbegin(), bounded.rend());
  if (o.json) {
    out << json{{"regions", regions}, {"bounded_labels", bounded}}.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& r : regions) {
    out << "region " << r["region"].get<int>() << (r["region"] == 0 ? " (plane)" : "") << ": label "
        << signed_label(r["label"].get<int>()) << "\n";
  }
  out << "labels (";
  for (std::size_t k = 0; k < bounded.size(); ++k) out << (k ? ", " : "") << signed_label(bounded[k]);
  out << ")\n";
  return kExitOk;
}

MoveOptions move_options(const Options& o) {
  MoveOptions m;
  m.good_only = o.good;
  m.overlap_mode = !o.no_overlap;
  if (!o.kind.empty()) {
    static const std::vector<std::string> names = {"I", "II", "III", "IV"};
    const auto it = std::find(names.begin(), names.end(), o.kind);
    if (it == names.end()) throw InputError("UsageError", "unknown move kind " + o.kind);
    m.only_kind = static_cast<MoveKind>(it - names.begin());
  }
  return m;
}

int cmd_moves(const Options& o, std::ostream& out) {
  const auto g = load(o.input).graph;
  const auto sites = applicable_moves(g, move_options(o));
  json arr = json::array();
  for (const auto& s : sites) {
    auto j = to_json(s);
    j["good"] = is_good_site(g, s);
    arr.push_back(j);
  }
  if (o.json) {
    out << arr.dump(2) << "\n";
  } else {
    for (std::size_t k = 0; k < arr.size(); ++k) out << k << ": " << arr[k].dump() << "\n";
  }
  return kExitOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const auto g = load(o.input).graph;
  MoveSite site;
  if (!o.site.empty()) {
    try {
      site = site_from_json(json::parse(o.site));
    } catch (const json::exception& e) {
      throw InputError("SiteError", std::string("bad site: ") + e.what());
    }
  } else {
    const auto sites = applicable_moves(g);
    if (o.index < 0 || o.index >= static_cast<int>(sites.size())) {
      throw InputError("SiteError", "move index out of range (" + std::to_string(sites.size()) + " moves)");
    }
    site = sites[o.index];
  }
  const auto h = apply(g, site);
  const auto text = serialize_dg(h);
  if (o.json) {
    write_text(o.output, json{{"code", canonical_code(h)}, {"diagram", text}}.dump(2) + "\n", out);
  } else {
    write_text(o.output, text, out);
  }
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
  const auto g = load(o.input).graph;
  if (o.good) {
    const auto r = good_reduce(g, budget_of(o));
    json arr = json::array();
    for (const auto& x : r.reduced) {
      arr.push_back({{"code", canonical_code(x.graph)}, {"empty", x.graph.empty()},
                     {"certificate", to_json(x.certificate)}});
    }
    if (o.json) {
      out << json{{"reduced", arr}, {"budget_exceeded", r.budget_exceeded}, {"nodes", r.nodes}}.dump(2) << "\n";
    } else {
      for (const auto& x : r.reduced) {
        out << (x.graph.empty() ? "empty" : canonical_code(x.graph)) << " via " << kinds_of(x.certificate) << "\n";
      }
    }
    if (r.budget_exceeded) {
      err << "search budget exhausted\n";
      return kExitBudget;
    }
    return kExitOk;
  }
  const auto cert = reduce_to_empty(g, budget_of(o));
  if (!cert) {
    if (o.json) out << json{{"reducible", false}}.dump(2) << "\n";
    err << "not reducible to the empty graph\n";
    return kExitCounterexample;
  }
  if (o.json) {
    out << json{{"reducible", true}, {"certificate", to_json(*cert)}}.dump(2) << "\n";
  } else {
    out << "empty in " << cert->steps.size() << " step(s): " << kinds_of(*cert) << "\n";
  }
  return kExitOk;
}

int cmd_enum(const Options& o, std::ostream& out) {
  const auto spec = spec_of(o, 1, 1);
  const int jobs = resolve_jobs(o.jobs);
  std::ostringstream text;
  if (o.polytopes) {
    for_each_polytope(spec, {}, 1, [&](std::size_t, const LatticePolytope& p) {
      if (o.json) {
        text << json{{"polytope", serialize_poly(p)}}.dump() << "\n";
      } else {
        text << serialize_poly(p) << "\n";
      }
      return true;
    });
  } else {
    for (const auto& r : run_census(spec, budget_of(o), o.reduce, jobs)) text << to_json(r).dump() << "\n";
  }
  write_text(o.output, text.str(), out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const int jobs = resolve_jobs(o.jobs);
  VerificationReport rep;
  if (o.check == "lemmas" && !o.input.empty()) {
    // A single diagram: in scope only when it is realized by a polytope.
    const auto in = load(o.input);
    bool admissible = in.polytope.has_value();
    if (!admissible) admissible = find_realization(in.graph, bounds_of(o)).has_value();
    const auto f = check_lemmas(in.graph, admissible);
    const bool violated = f.bigon_violations + f.crossing_including_violations > 0;
    json j = {{"check", "lemmas"}, {"in_scope", f.in_scope}, {"incoherent_bigons", f.incoherent_bigons},
              {"bigon_violations", f.bigon_violations}, {"crossing_including", f.crossing_including},
              {"crossing_including_violations", f.crossing_including_violations}, {"pass", !violated}};
    if (o.json) {
      out << j.dump(2) << "\n";
    } else {
      out << (f.in_scope ? "" : "outside lemma scope (not admissible); ") << "bigon violations "
          << f.bigon_violations << ", crossing-including violations " << f.crossing_including_violations << "\n";
    }
    return violated ? kExitCounterexample : kExitOk;
  }
  if (o.check == "labels") {
    rep = verify_labels(spec_of(o, 1, 2), jobs);
  } else if (o.check == "lemmas") {
    rep = verify_lemmas(spec_of(o, 1, 2), jobs);
  } else if (const auto t = parse_theorem_target(o.check)) {
    const int n = t->kind == ShapeKind::Thm1 ? 2 : t->n;
    rep = verify_theorem(*t, spec_of(o, n, n), budget_of(o), jobs);
  } else {
    throw InputError("UsageError", "unknown check " + o.check + " (labels, lemmas, thm1, chainN, ringN, thm3)");
  }
  if (o.json) {
    write_text(o.output, to_json(rep).dump(2) + "\n", out);
  } else {
    std::ostringstream s;
    s << rep.check << " " << to_json(rep.spec).dump() << "\n"
      << "polytopes " << rep.polytopes << ", instances " << rep.instances << ", diagrams " << rep.diagrams
      << ", counterexamples " << rep.counts["counterexamples"] << ", budget exhausted " << rep.budget_exhausted
      << "\n";
    for (const auto& c : rep.counterexamples) s << "counterexample (" << c.reason << "):\n" << c.polytope;
    s << (rep.pass() ? "PASS" : "FAIL") << "\n";
    write_text(o.output, s.str(), out);
  }
  if (!rep.counterexamples.empty()) return kExitCounterexample;
  return rep.budget_exhausted > 0 ? kExitBudget : kExitOk;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = load(o.input);
  std::string svg;
  if (in.polytope) {
    svg = render_polytope_svg(*in.polytope);
  } else {
    const auto r = render_diagram_svg(in.graph, bounds_of(o));
    if (r.fallback) err << r.notice << "\n";
    svg = r.svg;
  }
  write_text(o.output, svg, out);
  return kExitOk;
}

void report_error(const Options& o, std::ostream& out, std::ostream& err, const std::string& kind,
                  const std::string& message, int line = 0, int column = 0) {
  if (o.json) {
    json j = {{"error", kind}, {"message", message}};
    if (line > 0) {
      j["line"] = line;
      j["column"] = column;
    }
    out << j.dump(2) << "\n";
  }
  err << kind;
  if (line > 0) err << " at line " << line << ", column " << column;
  err << ": " << message << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dotted graphs of lattice polytopes: extraction, deformations and census checks", "dotlab"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Write results as JSON"); };
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", o.input, ".poly or .dg file")->required(); };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Output file (default stdout)"); };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget-depth", o.budget_depth, "Search depth limit")->check(CLI::PositiveNumber);
    sub->add_option("--budget-nodes", o.budget_nodes, "Search node limit")->check(CLI::PositiveNumber);
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--window", o.window, "Lattice points per row and column, e.g. 6x6");
    sub->add_option("--max-corners", o.max_corners, "Corners per component")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate a .poly or .dg file");
  add_input(validate);
  add_common(validate);

  auto* extract_cmd = app.add_subcommand("extract", "Extract the dotted graph of a polytope");
  add_input(extract_cmd);
  add_output(extract_cmd);
  add_common(extract_cmd);

  auto* realize = app.add_subcommand("realize", "Search for a polytope realizing a diagram");
  add_input(realize);
  add_output(realize);
  add_bounds(realize);
  realize->add_option("--budget", o.realize_budget, "Polytopes examined")->check(CLI::PositiveNumber);
  add_common(realize);

  auto* label = app.add_subcommand("label", "Print region labels");
  add_input(label);
  add_common(label);

  auto* moves = app.add_subcommand("moves", "List applicable deformations");
  add_input(moves);
  moves->add_flag("--good", o.good, "Only good deformations");
  moves->add_flag("--no-overlap", o.no_overlap, "Do not match through overlapping regions");
  moves->add_option("--kind", o.kind, "I, II, III or IV");
  add_common(moves);

  auto* apply_cmd = app.add_subcommand("apply", "Apply one deformation");
  add_input(apply_cmd);
  add_output(apply_cmd);
  auto* by_index = apply_cmd->add_option("--index", o.index, "Index in the `moves` listing");
  auto* by_site = apply_cmd->add_option("--site", o.site, "Site as JSON");
  by_index->excludes(by_site);
  add_common(apply_cmd);

  auto* reduce = app.add_subcommand("reduce", "Reduce to the empty graph, or to good reduced graphs with --good");
  add_input(reduce);
  reduce->add_flag("--good", o.good, "Good deformations, each IVa followed by its III");
  add_budget(reduce);
  add_common(reduce);

  auto* enum_cmd = app.add_subcommand("enum", "Census of diagrams (JSONL), or the polytopes themselves");
  add_bounds(enum_cmd);
  enum_cmd->add_option("--components", o.components, "Component count, n or lo..hi (default 1)");
  enum_cmd->add_flag("--full", o.full, "One polytope per translation class instead of per order type");
  enum_cmd->add_flag("--polytopes", o.polytopes, "List polytopes instead of census records");
  enum_cmd->add_flag("--reduce", o.reduce, "Search a reduction to the empty graph for every diagram");
  add_budget(enum_cmd);
  add_output(enum_cmd);
  enum_cmd->add_option("--jobs", o.jobs, "Worker threads (default DOTLAB_JOBS or 1)");
  add_common(enum_cmd);

  auto* verify = app.add_subcommand("verify", "Check labels, lemmas or a theorem over a census");
  verify->add_option("check", o.check, "labels, lemmas, thm1, chainN, ringN or thm3")->required();
  verify->add_option("--input", o.input, "Check the lemmas on one .poly or .dg file");
  add_bounds(verify);
  verify->add_option("--components", o.components, "Component count, n or lo..hi");
  verify->add_flag("--full", o.full, "One polytope per translation class instead of per order type");
  add_budget(verify);
  add_output(verify);
  verify->add_option("--jobs", o.jobs, "Worker threads (default DOTLAB_JOBS or 1)");
  add_common(verify);

  auto* render = app.add_subcommand("render", "Draw a polytope or diagram as SVG");
  add_input(render);
  add_output(render);
  add_bounds(render);
  add_common(render);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(o, out, err, "UsageError", e.what());
    return kExitInput;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*extract_cmd) return cmd_extract(o, out);
    if (*realize) return cmd_realize(o, out, err);
    if (*label) return cmd_label(o, out);
    if (*moves) return cmd_moves(o, out);
    if (*apply_cmd) return cmd_apply(o, out);
    if (*reduce) return cmd_reduce(o, out, err);
    if (*enum_cmd) return cmd_enum(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*render) return cmd_render(o, out, err);
  } catch (const FormatError& e) {
    report_error(o, out, err, e.kind(), e.what(), e.line(), e.column());
    return kExitInput;
  } catch (const InputError& e) {
    report_error(o, out, err, e.kind, e.what());
    return kExitInput;
  } catch (const PolytopeError& e) {
    report_error(o, out, err, to_string(e.kind()), e.what());
    return kExitInput;
  } catch (const DiagramError& e) {
    report_error(o, out, err, "DiagramError", e.what());
    return kExitInput;
  } catch (const SiteStale& e) {
    report_error(o, out, err, "SiteStale", e.what());
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    report_error(o, out, err, "UsageError", e.what());
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    report_error(o, out, err, "BudgetExceeded", e.what());
    return kExitBudget;
  }
  return kExitInput;
}

}  // namespace dotlab
