#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dotlab/components.hpp"
#include "dotlab/diagram.hpp"
#include "json.hpp"

namespace dotlab {

enum class MoveKind : std::uint8_t { I, II, III, IV };

const char* to_string(MoveKind kind);

// Local pictures of the deformations, as data. A rule deletes a loop, deletes a
// circle component, or performs a band surgery between two arcs across a region.
enum class RulePattern : std::uint8_t { DeleteLoop, DeleteCircle, BandSurgery };

struct Rule {
  MoveKind kind;
  RulePattern pattern;
  int min_dots;  // on the deleted component, or on each arc of a band surgery
  int max_dots;  // -1: unbounded
  const char* before;
  const char* after;
};

std::span<const Rule> rule_table();

struct MoveSite {
  MoveKind kind = MoveKind::I;
  int epsilon = 1;
  int i = 1;
  bool good = true;

  // I, II, III: the deleted component.
  std::vector<PathStep> path;
  int free_circle = -1;
  int base = -1;  // loop base crossing
  std::vector<int> disk;

  // IV: the two arcs, the sides facing the common region, and which side of the
  // split region each other boundary item of that region ends up on.
  int arc_a = -1;
  int arc_b = -1;
  int region = -1;
  std::vector<bool> mask;
  int corner = -1;  // crossing where arc_a and arc_b are adjacent, or -1

  // Circles counted as overlapping (first part of the split); empty when the
  // site needs no overlap.
  std::vector<bool> split;

  bool operator==(const MoveSite&) const = default;
};

struct MoveOptions {
  bool good_only = false;
  bool overlap_mode = true;
  std::optional<MoveKind> only_kind;
};

class SiteStale : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<MoveSite> applicable_moves(const DottedGraph& g, const MoveOptions& options = {});
// Throws SiteStale unless `site` is one of applicable_moves(g). Id bookkeeping:
// a deletion keeps, in order, one arc per surviving arc whose tail crossing
// survives (the strand starting there) and the surviving free circles first; a band
// surgery keeps the other arcs in order and appends A1B2, then B1A2.
DottedGraph apply(const DottedGraph& g, const MoveSite& site);
bool is_reducible(const DottedGraph& g);
bool is_good_site(const DottedGraph& g, const MoveSite& site);
// First good move in deterministic order, if any.
std::optional<MoveSite> first_good_move(const DottedGraph& g);

struct CertificateStep {
  MoveSite site;
  std::string code;  // canonical code after the move
};

struct ReductionCertificate {
  std::string start_code;
  std::vector<CertificateStep> steps;
};

struct SearchBudget {
  int max_depth = 32;
  long long max_nodes = 100'000;
};

struct ReducedGraph {
  DottedGraph graph;
  ReductionCertificate certificate;
};

struct GoodReduceResult {
  std::vector<ReducedGraph> reduced;  // sorted by canonical code
  bool budget_exceeded = false;
  long long nodes = 0;
};

GoodReduceResult good_reduce(const DottedGraph& g, const SearchBudget& budget = {});

// Throws BudgetExceeded when the search runs out before reaching the empty graph.
std::optional<ReductionCertificate> reduce_to_empty(const DottedGraph& g,
                                                    const SearchBudget& budget = {});

nlohmann::json to_json(const MoveSite& site);
MoveSite site_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const nlohmann::json& j);

// Replays a certificate from `g`; true iff every step applies and reproduces its code.
bool replay(const DottedGraph& g, const ReductionCertificate& cert, std::string* failure = nullptr);

}  // namespace dotlab
