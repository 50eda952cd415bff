#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dotlab/diagram.hpp"
#include "dotlab/extraction.hpp"
#include "dotlab/polytope.hpp"
#include "dotlab/rewrite.hpp"
#include "json.hpp"

namespace dotlab {

// Window W×H means lattice points x in [0, W), y in [0, H).
struct EnumSpec {
  int width = 4;
  int height = 4;
  int min_components = 1;
  int max_components = 1;
  int max_corners = 4;  // per component
  // One representative per order type of coordinates: the polytope uses every
  // column 0..a-1 and row 0..b-1. Monotone coordinate changes do not change the
  // extracted diagram, the labels or the genericity, so the code set is the same.
  bool compress = false;
};

// Throws std::invalid_argument for bounds below the minimal legal values.
void check_spec(const EnumSpec& spec);

// Pruning that never drops a polytope of the shapes it is set up for.
struct EnumFilter {
  bool simple_only = false;              // every component a simple closed curve
  std::vector<int> allowed_crossings;    // between two components; empty: any
  int max_lens_degree = -1;              // components meeting another one twice
  std::function<bool(const PolytopeComponent&)> accept_component;
};

// Components of at most spec.max_corners corners placed in the window, starting at
// a dot, in deterministic order.
std::vector<PolytopeComponent> enumerate_components(const EnumSpec& spec);

// Calls `visit(block, polytope)` for every generic polytope within bounds, once per
// translation class and component reordering (or per order type when compressing).
// Blocks are independent slices of the enumeration processed on `jobs` threads;
// within a block calls come in enumeration order. `prepare(blocks)` runs first.
// Returning false from `visit` stops the whole scan. Returns the polytope count.
long long for_each_polytope(
    const EnumSpec& spec, const EnumFilter& filter, int jobs,
    const std::function<bool(std::size_t block, const LatticePolytope&)>& visit,
    const std::function<void(std::size_t blocks)>& prepare = {});

std::vector<LatticePolytope> enumerate_polytopes(const EnumSpec& spec);

// --- shapes ---

enum class ShapeKind : std::uint8_t { Thm1, Thm2Chain, Thm2Ring, Thm3 };

const char* to_string(ShapeKind kind);

struct ShapeWitness {
  ShapeKind kind = ShapeKind::Thm1;
  int n = 0;
  std::vector<int> circles;          // immersed circle ids in chain/ring order
  std::vector<int> labels;           // label (epsilon) of each circle's disk
  std::vector<std::vector<int>> lenses;  // regions of C_i ∩ C_{i+1}, in order
};

std::string shape_name(const ShapeWitness& w);

std::vector<ShapeWitness> detect_shapes(const DottedGraph& g);

// Totals of the lens regions in chain/ring order.
std::vector<int> bigon_label_sequence(const DottedGraph& g, const ShapeWitness& w);
// Letters l, r, b, e per lens: the right arc lies on C_i, the left arc on C_{i+1}.
std::string dot_existence_sequence(const DottedGraph& g, const ShapeWitness& w);

// --- verification ---

// Number of arc sides whose combinatorial label differs from the geometric winding
// number at a probe half a unit beside the arc.
int label_oracle_mismatches(const LatticePolytope& p, const Extraction& ex);

struct Counterexample {
  std::string code;
  std::string diagram;  // .dg text
  std::string polytope;  // .poly text of one realization
  std::string reason;
};

struct VerificationReport {
  std::string check;
  EnumSpec spec;
  long long polytopes = 0;
  long long instances = 0;  // polytopes whose extraction matched the check's scope
  long long diagrams = 0;   // distinct canonical codes among the instances
  long long budget_exhausted = 0;
  std::map<std::string, long long> counts;
  std::vector<Counterexample> counterexamples;

  bool pass() const { return counterexamples.empty() && budget_exhausted == 0; }
};

nlohmann::json to_json(const EnumSpec& spec);
nlohmann::json to_json(const VerificationReport& report);

// Label-oracle equivalence and the corner-angle audit on every polytope.
VerificationReport verify_labels(const EnumSpec& spec, int jobs = 1);
struct LemmaFindings {
  bool in_scope = true;
  int incoherent_bigons = 0;
  int bigon_violations = 0;  // incoherent bigons without dots
  int crossing_including = 0;
  int crossing_including_violations = 0;  // at most one dot
};

// The lemmas quantify over admissible graphs only; an inadmissible graph is out
// of scope and has no violations.
LemmaFindings check_lemmas(const DottedGraph& g, bool admissible = true);

// Lower bounds on dots: incoherent bigons and crossing-including components.
VerificationReport verify_lemmas(const EnumSpec& spec, int jobs = 1);

struct TheoremTarget {
  ShapeKind kind = ShapeKind::Thm1;
  int n = 2;  // circles in the chain or ring
};

std::optional<TheoremTarget> parse_theorem_target(const std::string& name);
EnumFilter theorem_filter(const TheoremTarget& target);

// Every instance needs a good move; Thm1 instances must also reduce to the empty graph.
VerificationReport verify_theorem(const TheoremTarget& target, const EnumSpec& spec,
                                  const SearchBudget& budget, int jobs = 1);

// --- census records ---

struct CensusRecord {
  std::string code;
  int crossings = 0;
  int dots = 0;
  std::vector<std::string> shapes;
  int good_move_count = 0;
  std::string reducible;  // "yes", "no" or "budget"
  std::optional<ReductionCertificate> certificate;
};

nlohmann::json to_json(const CensusRecord& r);

// One record per canonical diagram, sorted by code.
std::vector<CensusRecord> run_census(const EnumSpec& spec, const SearchBudget& budget,
                                     bool reduce, int jobs = 1);

// Worker count from a flag value, else DOTLAB_JOBS, else 1.
int resolve_jobs(int flag_value);

}  // namespace dotlab
