#include "dotlab/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "dotlab/canonical.hpp"
#include "dotlab/components.hpp"
#include "dotlab/dg_format.hpp"
#include "dotlab/poly_format.hpp"

namespace dotlab {

void check_spec(const EnumSpec& spec) {
  if (spec.width < 2 || spec.height < 2) throw std::invalid_argument("window must be at least 2x2");
  if (spec.width > 30 || spec.height > 30) throw std::invalid_argument("window larger than 30");
  if (spec.max_corners < 4) throw std::invalid_argument("max corners must be at least 4");
  if (spec.min_components < 1 || spec.max_components < spec.min_components) {
    throw std::invalid_argument("component bounds must satisfy 1 <= min <= max");
  }
}

int resolve_jobs(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("DOTLAB_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

namespace {

// Runs body(i) for i in [0, n) on `jobs` threads, handing out indices in order.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i; (i = next++) < n;) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Seg {
  int x0, y0, x1, y1;
  bool horizontal;
};

struct Cand {
  PolytopeComponent comp;
  std::vector<Seg> segs;
  unsigned xm = 0, ym = 0;
  int bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
};

// -1 when the two components touch, else their number of crossings.
int pair_crossings(const Cand& a, const Cand& b) {
  if (a.bx1 < b.bx0 || b.bx1 < a.bx0 || a.by1 < b.by0 || b.by1 < a.by0) return 0;
  int n = 0;
  for (const Seg& s : a.segs) {
    for (const Seg& t : b.segs) {
      if (s.horizontal == t.horizontal) {
        if (s.horizontal ? s.y0 == t.y0 && std::max(s.x0, t.x0) <= std::min(s.x1, t.x1)
                         : s.x0 == t.x0 && std::max(s.y0, t.y0) <= std::min(s.y1, t.y1)) {
          return -1;
        }
        continue;
      }
      const Seg& h = s.horizontal ? s : t;
      const Seg& v = s.horizontal ? t : s;
      const int x = v.x0, y = h.y0;
      if (x < h.x0 || x > h.x1 || y < v.y0 || y > v.y1) continue;
      if (x > h.x0 && x < h.x1 && y > v.y0 && y < v.y1) {
        ++n;
      } else {
        return -1;
      }
    }
  }
  return n;
}

std::vector<std::vector<int>> cyclic_sequences(int k, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(k);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      if (v[k - 1] != v[0]) out.push_back(v);
      return;
    }
    for (int a = 0; a < m; ++a) {
      if (i > 0 && a == v[i - 1]) continue;
      v[i] = a;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Dots sit at (xs[i], ys[i]) and X marks at (xs[i+1], ys[i]); a component is listed
// once, from its lexicographically least starting dot.
bool least_rotation(const std::vector<int>& xs, const std::vector<int>& ys) {
  const int k = static_cast<int>(xs.size());
  for (int r = 1; r < k; ++r) {
    int cmp = 0;
    for (int i = 0; i < k && cmp == 0; ++i) cmp = xs[(i + r) % k] - xs[i];
    for (int i = 0; i < k && cmp == 0; ++i) cmp = ys[(i + r) % k] - ys[i];
    if (cmp < 0) return false;
  }
  return true;
}

std::vector<Cand> make_candidates(const EnumSpec& spec, const EnumFilter& filter) {
  std::vector<Cand> out;
  for (int k = 2; 2 * k <= spec.max_corners; ++k) {
    const auto xs_all = cyclic_sequences(k, spec.width);
    const auto ys_all = cyclic_sequences(k, spec.height);
    for (const auto& xs : xs_all) {
      for (const auto& ys : ys_all) {
        if (!least_rotation(xs, ys)) continue;
        std::vector<Corner> corners;
        for (int i = 0; i < k; ++i) {
          corners.push_back({{xs[i], ys[i]}, Mark::Dot});
          corners.push_back({{xs[(i + 1) % k], ys[i]}, Mark::X});
        }
        LatticePolytope single;
        try {
          single = validate_polytope({corners});
        } catch (const PolytopeError&) {
          continue;
        }
        Cand c;
        c.comp = single.components()[0];
        if (filter.simple_only && !is_simple(c.comp)) continue;
        if (filter.accept_component && !filter.accept_component(c.comp)) continue;
        c.bx0 = *std::min_element(xs.begin(), xs.end());
        c.bx1 = *std::max_element(xs.begin(), xs.end());
        c.by0 = *std::min_element(ys.begin(), ys.end());
        c.by1 = *std::max_element(ys.begin(), ys.end());
        for (int i = 0; i < k; ++i) {
          const int xa = xs[i], xb = xs[(i + 1) % k], ya = ys[i], yb = ys[(i + 1) % k];
          c.segs.push_back({std::min(xa, xb), ya, std::max(xa, xb), ya, true});
          c.segs.push_back({xb, std::min(ya, yb), xb, std::max(ya, yb), false});
          c.xm |= 1u << xa;
          c.ym |= 1u << ya;
        }
        out.push_back(std::move(c));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Cand& a, const Cand& b) {
    if (a.xm != b.xm) return a.xm < b.xm;
    if (a.ym != b.ym) return a.ym < b.ym;
    return a.comp < b.comp;
  });
  return out;
}

bool full_prefix(unsigned m) { return m != 0 && (m & (m + 1)) == 0; }

class Scanner {
 public:
  Scanner(const EnumSpec& spec, const EnumFilter& filter)
      : spec_(spec), filter_(filter), cands_(make_candidates(spec, filter)) {
    for (int i = 0; i < static_cast<int>(cands_.size()); ++i) {
      if (groups_.empty() || cands_[groups_.back().first].xm != cands_[i].xm ||
          cands_[groups_.back().first].ym != cands_[i].ym) {
        group_index_[key(cands_[i].xm, cands_[i].ym)] = static_cast<int>(groups_.size());
        groups_.push_back({i, i});
      }
      groups_.back().second = i + 1;
      group_of_.push_back(static_cast<int>(groups_.size()) - 1);
    }
    for (int n = spec.min_components; n <= spec.max_components; ++n) {
      for (int g = 0; g < static_cast<int>(groups_.size()); ++g) blocks_.push_back({n, g});
    }
  }

  std::size_t block_count() const { return blocks_.size(); }

  // Returns false if `emit` asked to stop.
  bool run_block(std::size_t b, const std::function<bool(const LatticePolytope&)>& emit) const {
    const auto [n, g] = blocks_[b];
    std::vector<int> chosen;
    std::vector<int> degree;
    for (int i = groups_[g].first; i < groups_[g].second; ++i) {
      chosen = {i};
      degree = {0};
      if (!extend(n, chosen, degree, cands_[i].xm, cands_[i].ym, emit)) return false;
    }
    return true;
  }

 private:
  static std::uint64_t key(unsigned xm, unsigned ym) {
    return (static_cast<std::uint64_t>(xm) << 32) | ym;
  }

  bool allowed(int crossings) const {
    const auto& a = filter_.allowed_crossings;
    return a.empty() || std::find(a.begin(), a.end(), crossings) != a.end();
  }

  // Masks m that complete u to a full prefix of at most `limit` bits.
  std::vector<unsigned> completions(unsigned u, int limit) const {
    std::vector<unsigned> out;
    const int kmax = spec_.max_corners / 2;
    const int low = std::max(1, u ? 32 - std::countl_zero(u) : 1);
    for (int a = low; a <= limit; ++a) {
      const unsigned full = (1u << a) - 1;
      const unsigned missing = full & ~u;
      if (std::popcount(missing) > kmax) continue;
      const unsigned rest = u & full;
      for (unsigned s = rest;; s = (s - 1) & rest) {
        const unsigned m = missing | s;
        if (std::popcount(m) >= 2 && std::popcount(m) <= kmax) out.push_back(m);
        if (s == 0) break;
      }
    }
    return out;
  }

  bool extend(int n, std::vector<int>& chosen, std::vector<int>& degree, unsigned ux, unsigned uy,
              const std::function<bool(const LatticePolytope&)>& emit) const {
    const int level = static_cast<int>(chosen.size());
    if (level == n) {
      const bool ok = spec_.compress ? full_prefix(ux) && full_prefix(uy) : (ux & 1) && (uy & 1);
      if (!ok) return true;
      std::vector<PolytopeComponent> comps;
      for (int i : chosen) comps.push_back(cands_[i].comp);
      return emit(make_polytope_unchecked(std::move(comps)));
    }
    const int last = chosen.back();
    const int gmin = group_of_[last];
    std::vector<int> groups;
    if (spec_.compress && level == n - 1) {
      for (unsigned mx : completions(ux, spec_.width)) {
        for (unsigned my : completions(uy, spec_.height)) {
          const auto it = group_index_.find(key(mx, my));
          if (it != group_index_.end() && it->second >= gmin) groups.push_back(it->second);
        }
      }
      std::sort(groups.begin(), groups.end());
      groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
    } else {
      for (int g = gmin; g < static_cast<int>(groups_.size()); ++g) groups.push_back(g);
    }
    for (int g : groups) {
      for (int i = std::max(groups_[g].first, last + 1); i < groups_[g].second; ++i) {
        bool ok = true;
        std::vector<int> deg = degree;
        deg.push_back(0);
        for (int j = 0; j < level && ok; ++j) {
          const int c = pair_crossings(cands_[chosen[j]], cands_[i]);
          if (c < 0 || !allowed(c)) ok = false;
          if (c == 2) {
            ++deg[j];
            ++deg.back();
          }
        }
        if (!ok) continue;
        if (filter_.max_lens_degree >= 0 &&
            *std::max_element(deg.begin(), deg.end()) > filter_.max_lens_degree) {
          continue;
        }
        chosen.push_back(i);
        const bool go = extend(n, chosen, deg, ux | cands_[i].xm, uy | cands_[i].ym, emit);
        chosen.pop_back();
        if (!go) return false;
      }
    }
    return true;
  }

  EnumSpec spec_;
  EnumFilter filter_;
  std::vector<Cand> cands_;
  std::vector<std::pair<int, int>> groups_;  // candidate index ranges with equal masks
  std::vector<int> group_of_;
  std::unordered_map<std::uint64_t, int> group_index_;
  std::vector<std::pair<int, int>> blocks_;  // (component count, first group)
};

}  // namespace

std::vector<PolytopeComponent> enumerate_components(const EnumSpec& spec) {
  check_spec(spec);
  std::vector<PolytopeComponent> out;
  for (auto& c : make_candidates(spec, {})) out.push_back(std::move(c.comp));
  return out;
}

long long for_each_polytope(
    const EnumSpec& spec, const EnumFilter& filter, int jobs,
    const std::function<bool(std::size_t, const LatticePolytope&)>& visit,
    const std::function<void(std::size_t)>& prepare) {
  check_spec(spec);
  const Scanner scanner(spec, filter);
  if (prepare) prepare(scanner.block_count());
  std::atomic<bool> stop{false};
  std::atomic<long long> count{0};
  parallel_for(scanner.block_count(), jobs, [&](std::size_t b) {
    if (stop) return;
    const bool done = scanner.run_block(b, [&](const LatticePolytope& p) {
      if (stop) return false;
      ++count;
      if (!visit(b, p)) {
        stop = true;
        return false;
      }
      return true;
    });
    if (!done) stop = true;
  });
  return count;
}

std::vector<LatticePolytope> enumerate_polytopes(const EnumSpec& spec) {
  std::vector<LatticePolytope> out;
  for_each_polytope(spec, {}, 1, [&](std::size_t, const LatticePolytope& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

// --- shapes ---

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Thm1: return "Thm1";
    case ShapeKind::Thm2Chain: return "Thm2Chain";
    case ShapeKind::Thm2Ring: return "Thm2Ring";
    case ShapeKind::Thm3: return "Thm3";
  }
  return "?";
}

std::string shape_name(const ShapeWitness& w) {
  if (w.kind == ShapeKind::Thm2Chain || w.kind == ShapeKind::Thm2Ring) {
    return std::string(to_string(w.kind)) + "(" + std::to_string(w.n) + ")";
  }
  return to_string(w.kind);
}

std::vector<ShapeWitness> detect_shapes(const DottedGraph& g) {
  std::vector<ShapeWitness> out;
  const int n = g.circle_count();
  if (n < 2) return out;
  for (int c = 0; c < n; ++c) {
    if (!g.circle_is_embedded(c) || g.circle_free_circle(c) >= 0) return out;
  }
  std::vector<std::vector<int>> cross(n, std::vector<int>(n, 0));
  for (int x = 0; x < g.crossing_count(); ++x) {
    const int a = g.arc(g.crossing(x).rotation[0].arc).circle;
    const int b = g.arc(g.crossing(x).rotation[1].arc).circle;
    ++cross[a][b];
    ++cross[b][a];
  }
  const auto& lab = g.labels();
  const int nr = g.region_count();
  std::vector<int> label(n, 0);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < nr; ++r) {
      if (lab.at(r, c) != 0) label[c] = lab.at(r, c);
    }
  }
  auto inside = [&](int r, int c) { return lab.at(r, c) != 0; };
  auto meet = [&](int i, int j) {
    std::vector<int> rs;
    for (int r = 0; r < nr; ++r) {
      if (inside(r, i) && inside(r, j)) rs.push_back(r);
    }
    return rs;
  };
  auto proper = [&](int i, int j) {
    bool i_only = false, j_only = false;
    for (int r = 0; r < nr; ++r) {
      i_only |= inside(r, i) && !inside(r, j);
      j_only |= inside(r, j) && !inside(r, i);
    }
    return i_only && j_only;
  };
  std::vector<std::vector<int>> adj(n);
  int edges = 0;
  bool apart = true;  // non-neighbours are disjoint
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (cross[i][j] == 2 && !meet(i, j).empty() && proper(i, j)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++edges;
      } else if (cross[i][j] != 0 || !meet(i, j).empty()) {
        apart = false;
      }
    }
  }
  std::vector<int> triple;
  if (n == 3) {
    for (int r = 0; r < nr; ++r) {
      if (inside(r, 0) && inside(r, 1) && inside(r, 2)) triple.push_back(r);
    }
  }
  auto witness = [&](ShapeKind kind, std::vector<int> order, bool closed) {
    ShapeWitness w;
    w.kind = kind;
    w.n = n;
    w.circles = order;
    for (int c : order) w.labels.push_back(label[c]);
    const int m = static_cast<int>(order.size());
    for (int k = 0; k + 1 < m || (closed && k < m); ++k) {
      w.lenses.push_back(meet(order[k], order[(k + 1) % m]));
    }
    return w;
  };
  if (n == 2 && edges == 1) out.push_back(witness(ShapeKind::Thm1, {0, 1}, false));
  if (apart) {
    const bool path = edges == n - 1 &&
                      std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() <= 2; });
    const bool cycle = n >= 3 && edges == n &&
                       std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 2; });
    auto walk = [&](int start) {
      std::vector<int> order{start};
      int prev = -1, cur = start;
      while (static_cast<int>(order.size()) < n) {
        int next = -1;
        for (int nb : adj[cur]) {
          if (nb != prev && std::find(order.begin(), order.end(), nb) == order.end() &&
              (next < 0 || nb < next)) {
            next = nb;
          }
        }
        if (next < 0) break;
        order.push_back(next);
        prev = cur;
        cur = next;
      }
      return order;
    };
    if (path) {
      int end = -1;
      for (int c = 0; c < n && end < 0; ++c) {
        if (adj[c].size() == 1) end = c;
      }
      const auto order = walk(end);
      if (static_cast<int>(order.size()) == n) out.push_back(witness(ShapeKind::Thm2Chain, order, false));
    }
    if (cycle && (n > 3 || triple.empty())) {
      const auto order = walk(0);
      if (static_cast<int>(order.size()) == n) out.push_back(witness(ShapeKind::Thm2Ring, order, true));
    }
  }
  if (n == 3 && edges == 3 && triple.size() == 1) {
    out.push_back(witness(ShapeKind::Thm3, {0, 1, 2}, false));
  }
  return out;
}

std::vector<int> bigon_label_sequence(const DottedGraph& g, const ShapeWitness& w) {
  std::vector<int> out;
  for (const auto& lens : w.lenses) out.push_back(lens.empty() ? 0 : g.labels().total[lens.front()]);
  return out;
}

std::string dot_existence_sequence(const DottedGraph& g, const ShapeWitness& w) {
  std::string out;
  const int m = static_cast<int>(w.circles.size());
  for (std::size_t k = 0; k < w.lenses.size(); ++k) {
    const int right_circle = w.circles[k];
    const int left_circle = w.circles[(k + 1) % m];
    int right = 0, left = 0;
    for (int a = 0; a < g.arc_count(); ++a) {
      const int c = g.arc(a).circle;
      if (c != right_circle && c != left_circle) continue;
      const bool borders = std::any_of(w.lenses[k].begin(), w.lenses[k].end(), [&](int r) {
        return g.region_of_dart(left_dart(a)) == r || g.region_of_dart(right_dart(a)) == r;
      });
      if (!borders) continue;
      (c == right_circle ? right : left) += g.arc(a).dots;
    }
    out += left > 0 && right > 0 ? 'b' : left > 0 ? 'l' : right > 0 ? 'r' : 'e';
  }
  return out;
}

// --- verification ---

namespace {

HalfPoint beside(GridPoint from, GridPoint to, bool left) {
  const int dx = (to.x > from.x) - (to.x < from.x), dy = (to.y > from.y) - (to.y < from.y);
  const int side = left ? 1 : -1;
  return {2 * from.x + dx - dy * side, 2 * from.y + dy + dx * side};
}

}  // namespace

int label_oracle_mismatches(const LatticePolytope& p, const Extraction& ex) {
  const auto& g = ex.graph;
  int bad = 0;
  for (int a = 0; a < g.arc_count(); ++a) {
    const auto& tr = ex.trace.arcs[a];
    const auto& comp = p.components()[tr.component];
    const int seg = tr.segments.front();
    const GridPoint start = ex.trace.crossings[g.arc(a).tail.crossing].point;
    const GridPoint toward = comp.corner(seg + 1).point;
    for (int side = 0; side < 2; ++side) {
      const int dart = 2 * a + side;
      if (winding_number(p, beside(start, toward, side == 0)) !=
          g.labels().total[g.region_of_dart(dart)]) {
        ++bad;
      }
    }
  }
  for (int f = 0; f < g.free_circle_count(); ++f) {
    const auto& comp = p.components()[ex.trace.free_circle_component[f]];
    const GridPoint a = comp.corner(0).point, b = comp.corner(1).point;
    const bool ccw = comp.signed_area2() > 0;
    const int host = g.faces().pieces[g.piece_of_free_circle(f)].host_region;
    if (winding_number(p, beside(a, b, ccw)) != g.labels().total[g.inside_region(f)]) ++bad;
    if (winding_number(p, beside(a, b, !ccw)) != g.labels().total[host]) ++bad;
  }
  return bad;
}

namespace {

constexpr std::size_t kMaxStoredCounterexamples = 20;

struct BlockAcc {
  long long polytopes = 0;
  long long instances = 0;
  std::map<std::string, long long> counts;
  std::vector<Counterexample> cex;
  long long cex_total = 0;
};

Counterexample make_cex(const LatticePolytope& p, const DottedGraph& g, std::string reason) {
  return {canonical_code(g), serialize_dg(g), serialize_poly(p), std::move(reason)};
}

void add_cex(BlockAcc& acc, Counterexample c) {
  ++acc.cex_total;
  if (acc.cex.size() < kMaxStoredCounterexamples) acc.cex.push_back(std::move(c));
}

VerificationReport merge(std::string check, const EnumSpec& spec, std::vector<BlockAcc>& accs) {
  VerificationReport rep;
  rep.check = std::move(check);
  rep.spec = spec;
  long long cex_total = 0;
  for (auto& a : accs) {
    rep.polytopes += a.polytopes;
    rep.instances += a.instances;
    for (const auto& [k, v] : a.counts) rep.counts[k] += v;
    cex_total += a.cex_total;
    for (auto& c : a.cex) {
      if (rep.counterexamples.size() < kMaxStoredCounterexamples) rep.counterexamples.push_back(std::move(c));
    }
  }
  rep.counts["counterexamples"] = cex_total;
  return rep;
}

}  // namespace

VerificationReport verify_labels(const EnumSpec& spec, int jobs) {
  std::vector<BlockAcc> accs;
  for_each_polytope(
      spec, {}, jobs,
      [&](std::size_t b, const LatticePolytope& p) {
        auto& acc = accs[b];
        ++acc.polytopes;
        ++acc.instances;
        const auto ex = extract(p);
        acc.counts["arc_sides_probed"] += 2 * ex.graph.arc_count() + 2 * ex.graph.free_circle_count();
        const int bad = label_oracle_mismatches(p, ex);
        if (bad > 0) {
          acc.counts["label_mismatches"] += bad;
          add_cex(acc, make_cex(p, ex.graph, "label differs from winding number"));
        }
        for (const auto& c : p.components()) {
          if (!is_simple(c)) continue;
          ++acc.counts["simple_components"];
          const auto audit = corner_angle_audit(c);
          if (audit.quarter - audit.three_quarter != 4) {
            ++acc.counts["corner_violations"];
            add_cex(acc, make_cex(p, ex.graph, "corner audit n+ - n- != 4"));
          }
        }
        return true;
      },
      [&](std::size_t blocks) { accs.resize(blocks); });
  auto rep = merge("labels", spec, accs);
  rep.counts.emplace("label_mismatches", 0);
  rep.counts.emplace("corner_violations", 0);
  return rep;
}

LemmaFindings check_lemmas(const DottedGraph& g, bool admissible) {
  LemmaFindings f;
  if (!admissible) {
    f.in_scope = false;
    return f;
  }
  for (const auto& w : bigon_components(g)) {
    if (w.coherent) continue;
    ++f.incoherent_bigons;
    if (w.dots == 0) ++f.bigon_violations;
  }
  for (const auto& w : crossing_including_components(g)) {
    ++f.crossing_including;
    if (w.dots <= 1) ++f.crossing_including_violations;
  }
  return f;
}

VerificationReport verify_lemmas(const EnumSpec& spec, int jobs) {
  std::vector<BlockAcc> accs;
  for_each_polytope(
      spec, {}, jobs,
      [&](std::size_t b, const LatticePolytope& p) {
        auto& acc = accs[b];
        ++acc.polytopes;
        ++acc.instances;
        const auto g = extract(p).graph;
        const auto f = check_lemmas(g);
        acc.counts["incoherent_bigons"] += f.incoherent_bigons;
        acc.counts["crossing_including"] += f.crossing_including;
        if (f.bigon_violations > 0) {
          acc.counts["bigon_violations"] += f.bigon_violations;
          add_cex(acc, make_cex(p, g, "incoherent bigon without dots"));
        }
        if (f.crossing_including_violations > 0) {
          acc.counts["crossing_including_violations"] += f.crossing_including_violations;
          add_cex(acc, make_cex(p, g, "crossing-including component with at most one dot"));
        }
        return true;
      },
      [&](std::size_t blocks) { accs.resize(blocks); });
  auto rep = merge("lemmas", spec, accs);
  rep.counts.emplace("bigon_violations", 0);
  rep.counts.emplace("crossing_including_violations", 0);
  return rep;
}

std::optional<TheoremTarget> parse_theorem_target(const std::string& name) {
  if (name == "thm1") return TheoremTarget{ShapeKind::Thm1, 2};
  if (name == "thm3") return TheoremTarget{ShapeKind::Thm3, 3};
  for (const auto& [prefix, kind] : {std::pair{std::string("chain"), ShapeKind::Thm2Chain},
                                     std::pair{std::string("ring"), ShapeKind::Thm2Ring}}) {
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
      const int n = std::atoi(name.c_str() + prefix.size());
      // Rings of two circles are degenerate and not checked.
      const int least = kind == ShapeKind::Thm2Ring ? 3 : 2;
      if (n >= least && std::to_string(n) == name.substr(prefix.size())) return TheoremTarget{kind, n};
    }
  }
  return std::nullopt;
}

EnumFilter theorem_filter(const TheoremTarget& target) {
  EnumFilter f;
  f.simple_only = true;
  switch (target.kind) {
    case ShapeKind::Thm1:
    case ShapeKind::Thm3:
      f.allowed_crossings = {2};
      break;
    case ShapeKind::Thm2Chain:
    case ShapeKind::Thm2Ring:
      f.allowed_crossings = {0, 2};
      f.max_lens_degree = 2;
      break;
  }
  return f;
}

namespace {

bool matches(const ShapeWitness& w, const TheoremTarget& t) {
  return w.kind == t.kind && (t.kind == ShapeKind::Thm1 || t.kind == ShapeKind::Thm3 || w.n == t.n);
}

struct Found {
  LatticePolytope polytope;
  DottedGraph graph;
};

}  // namespace

VerificationReport verify_theorem(const TheoremTarget& target, const EnumSpec& spec,
                                  const SearchBudget& budget, int jobs) {
  std::vector<BlockAcc> accs;
  std::vector<std::map<std::string, Found>> found;
  for_each_polytope(
      spec, theorem_filter(target), jobs,
      [&](std::size_t b, const LatticePolytope& p) {
        auto& acc = accs[b];
        ++acc.polytopes;
        auto g = extract(p).graph;
        const auto shapes = detect_shapes(g);
        if (std::none_of(shapes.begin(), shapes.end(),
                         [&](const ShapeWitness& w) { return matches(w, target); })) {
          return true;
        }
        ++acc.instances;
        std::string code = canonical_code(g);
        found[b].try_emplace(std::move(code), Found{p, std::move(g)});
        return true;
      },
      [&](std::size_t blocks) {
        accs.resize(blocks);
        found.resize(blocks);
      });

  std::map<std::string, const Found*> distinct;
  for (const auto& m : found) {
    for (const auto& [code, f] : m) distinct.try_emplace(code, &f);
  }
  std::vector<std::pair<std::string, const Found*>> work(distinct.begin(), distinct.end());
  std::vector<BlockAcc> per_code(work.size());
  std::vector<long long> exhausted(work.size(), 0);
  parallel_for(work.size(), jobs, [&](std::size_t k) {
    const Found& f = *work[k].second;
    const DottedGraph& g = f.graph;
    auto& acc = per_code[k];
    for (const auto& w : detect_shapes(g)) {
      if (!matches(w, target)) continue;
      ++acc.counts["witnesses"];
      if (!first_good_move(g)) add_cex(acc, make_cex(f.polytope, g, "no good deformation applies"));
      if (w.kind == ShapeKind::Thm2Chain || w.kind == ShapeKind::Thm2Ring) {
        const auto seq = bigon_label_sequence(g, w);
        const int m = static_cast<int>(w.labels.size());
        for (std::size_t j = 0; j < seq.size(); ++j) {
          if (seq[j] != w.labels[j] + w.labels[(j + 1) % m]) {
            add_cex(acc, make_cex(f.polytope, g, "bigon label is not the sum of the circle labels"));
          }
        }
        for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
          if (seq[j] * seq[j + 1] == -4) {
            add_cex(acc, make_cex(f.polytope, g, "bigon labels contain (2,-2) or (-2,2)"));
          }
          if (seq[j] * seq[j + 1] == 4) {
            ++acc.counts["same_sign_pairs"];
            if (applicable_moves(g, {true, true, MoveKind::II}).empty()) {
              add_cex(acc, make_cex(f.polytope, g, "(2,2) or (-2,-2) without a good II"));
            }
          }
        }
        ++acc.counts["dot_existence_" + dot_existence_sequence(g, w)];
      }
    }
    if (target.kind == ShapeKind::Thm1) {
      try {
        if (reduce_to_empty(g, budget)) {
          ++acc.counts["reduced_to_empty"];
        } else {
          add_cex(acc, make_cex(f.polytope, g, "does not reduce to the empty graph"));
        }
      } catch (const BudgetExceeded&) {
        exhausted[k] = 1;
      }
    }
  });
  for (auto& a : per_code) accs.push_back(std::move(a));
  std::string check = "thm1";
  if (target.kind == ShapeKind::Thm3) check = "thm3";
  if (target.kind == ShapeKind::Thm2Chain) check = "chain" + std::to_string(target.n);
  if (target.kind == ShapeKind::Thm2Ring) check = "ring" + std::to_string(target.n);
  auto rep = merge(check, spec, accs);
  rep.diagrams = static_cast<long long>(work.size());
  for (long long e : exhausted) rep.budget_exhausted += e;
  return rep;
}

nlohmann::json to_json(const EnumSpec& spec) {
  return {{"window", std::to_string(spec.width) + "x" + std::to_string(spec.height)},
          {"min_components", spec.min_components},
          {"max_components", spec.max_components},
          {"max_corners", spec.max_corners},
          {"compress", spec.compress}};
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json cex = nlohmann::json::array();
  for (const auto& c : r.counterexamples) {
    cex.push_back({{"code", c.code}, {"diagram", c.diagram}, {"polytope", c.polytope}, {"reason", c.reason}});
  }
  return {{"check", r.check},
          {"spec", to_json(r.spec)},
          {"polytopes", r.polytopes},
          {"instances", r.instances},
          {"diagrams", r.diagrams},
          {"budget_exhausted", r.budget_exhausted},
          {"counts", r.counts},
          {"counterexamples", cex},
          {"pass", r.pass()}};
}

nlohmann::json to_json(const CensusRecord& r) {
  nlohmann::json j = {{"code", r.code},
                      {"crossings", r.crossings},
                      {"dots", r.dots},
                      {"shapes", r.shapes},
                      {"good_move_count", r.good_move_count},
                      {"reducible", r.reducible}};
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

std::vector<CensusRecord> run_census(const EnumSpec& spec, const SearchBudget& budget, bool reduce,
                                     int jobs) {
  std::vector<std::map<std::string, DottedGraph>> found;
  for_each_polytope(
      spec, {}, jobs,
      [&](std::size_t b, const LatticePolytope& p) {
        auto g = extract(p).graph;
        std::string code = canonical_code(g);
        found[b].try_emplace(std::move(code), std::move(g));
        return true;
      },
      [&](std::size_t blocks) { found.resize(blocks); });
  std::map<std::string, const DottedGraph*> distinct;
  for (const auto& m : found) {
    for (const auto& [code, g] : m) distinct.try_emplace(code, &g);
  }
  std::vector<std::pair<std::string, const DottedGraph*>> work(distinct.begin(), distinct.end());
  std::vector<CensusRecord> out(work.size());
  parallel_for(work.size(), jobs, [&](std::size_t k) {
    const DottedGraph& g = *work[k].second;
    CensusRecord& r = out[k];
    r.code = work[k].first;
    r.crossings = g.crossing_count();
    r.dots = g.dot_total();
    for (const auto& w : detect_shapes(g)) r.shapes.push_back(shape_name(w));
    r.good_move_count = static_cast<int>(applicable_moves(g, {true, true, std::nullopt}).size());
    r.reducible = "unchecked";
    if (reduce) {
      try {
        r.certificate = reduce_to_empty(g, budget);
        r.reducible = r.certificate ? "yes" : "no";
      } catch (const BudgetExceeded&) {
        r.reducible = "budget";
      }
    }
  });
  return out;
}

}  // namespace dotlab
