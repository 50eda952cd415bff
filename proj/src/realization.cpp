#include <algorithm>
#include <atomic>

#include "dotlab/canonical.hpp"
#include "dotlab/census.hpp"
#include "dotlab/extraction.hpp"

namespace dotlab {

std::optional<LatticePolytope> find_realization(const DottedGraph& g,
                                                const RealizationBounds& bounds) {
  if (g.empty()) return LatticePolytope{};
  // A component with k corners carries k/2 dots, at least two.
  std::vector<int> wanted;
  for (int c = 0; c < g.circle_count(); ++c) {
    const int d = g.circle_dots(c);
    if (d < 2 || 2 * d > bounds.max_corners) return std::nullopt;
    wanted.push_back(d);
  }
  std::sort(wanted.begin(), wanted.end());

  EnumSpec spec;
  spec.width = bounds.width;
  spec.height = bounds.height;
  spec.min_components = spec.max_components = g.circle_count();
  spec.max_corners = std::min(bounds.max_corners, 2 * wanted.back());
  spec.compress = true;
  if (spec.width < 2 || spec.height < 2) return std::nullopt;

  EnumFilter filter;
  filter.accept_component = [&](const PolytopeComponent& c) {
    return std::binary_search(wanted.begin(), wanted.end(), c.dot_count());
  };

  const std::string code = canonical_code(g);
  std::optional<LatticePolytope> found;
  std::atomic<long long> examined{0};
  bool exhausted = false;
  for_each_polytope(spec, filter, 1, [&](std::size_t, const LatticePolytope& p) {
    if (++examined > bounds.budget) {
      exhausted = true;
      return false;
    }
    if (p.dot_count() != g.dot_total()) return true;
    const auto ex = extract(p);
    if (ex.graph.crossing_count() != g.crossing_count()) return true;
    if (canonical_code(ex.graph) != code) return true;
    found = p;
    return false;
  });
  if (found) return found;
  if (exhausted) throw BudgetExceeded("realization search examined " + std::to_string(bounds.budget) + " polytopes");
  return std::nullopt;
}

}  // namespace dotlab
