#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/expansion.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

// ceil(ln n / ln ln n), at least 2 (also used below n = 16 where the formula
// degenerates).
int default_pool_size(double n);
// 49 * ceil(log n / log d): the most edges one augmentation may change.
int per_iteration_cap(double n, double d);

struct AugmentBudget {
  int per_iteration_cap = 0;       // 0 = per_iteration_cap(n, d)
  int rotations = 2;               // pool/pair rotations before the fallback
  double wall_clock_s = 60;
  int max_iterations = 1 << 30;
  int plan_attempts = 12;          // uncovered pairs tried per rotation
  long long fallback_nodes = 200'000;
  int fallback_depth = 0;          // 0 = 4 ceil(log2 n)
  int d = 0;                       // pool size; 0 = default_pool_size(n)
  double A = 1;                    // expansion constant used for the path cap
};

// The typical subgraph G inside the host H: the part of every vertex of H in
// the three-way split (-1 = not in G) and which colours may feed the D-pools.
struct GuideStructure {
  std::vector<int> x_part, y_part;
  std::vector<char> pool_colour;
};
// Every vertex in its split part, every colour eligible.
GuideStructure whole_graph_guide(const ColoredBipartiteGraph& h, const std::vector<int>& x_part,
                                 const std::vector<int>& y_part);

using Pools = std::array<std::vector<Id>, 6>;
// Unused eligible colours, shuffled and dealt round-robin into six disjoint
// pools of at most d colours each; pools 2i and 2i+1 serve part i.
Pools build_pools(const ColoredBipartiteGraph& h, const GuideStructure& g, const RainbowMatching& m, int d, Rng& rng);

struct SwitchPlan {
  std::string shape;  // "direct", "switch" or "fallback"
  Id x0 = kNone, y0 = kNone;
  int main_part = -1;
  AlternatingWalk augmenting;                 // x0 -> y0 (empty for fallback chains)
  std::optional<AlternatingWalk> cycle_c2;    // closes through the M edge of colour c2
  std::optional<AlternatingWalk> cycle_c3;
  std::vector<Edge> removed, added;
  std::size_t p1 = 0, p2 = 0, p3 = 0;         // lengths of the three paths
};

enum class PlanFailure { None, NoConnector, NoCycleC2, NoCycleC3, NoMainPath };
const char* failure_name(PlanFailure f);

struct PlanResult {
  std::optional<SwitchPlan> plan;
  PlanFailure reason = PlanFailure::None;
};

// Search memo: endpoints whose searches failed since the last matching edit.
struct JunkMemo {
  std::vector<Edge> failed_cycles;
  std::vector<std::pair<Id, Id>> failed_paths;
  void clear() {
    failed_cycles.clear();
    failed_paths.clear();
  }
};

struct PlanOptions {
  int cap = 0;               // path length cap
  int connector_limit = 8;   // connector candidates per side
  int main_path_limit = 16;  // main-path searches per plan
  std::array<int, 3> part_order{0, 1, 2};
};

// Plan for covering the uncovered pair (x0, y0): a direct edge of an unused
// colour, or the three-part switch: connectors x0-y1' (colour c2) and
// x1'-y0 (colour c3) into matched vertices of the main part, a rainbow path
// P1 from x1 = M(y1') to y1 = M(x1') inside the main part, and, for each of
// c2, c3 still in use, a rainbow cycle in another part that frees it.
PlanResult build_switch_plan(const ColoredBipartiteGraph& h, const GuideStructure& g, const RainbowMatching& m, Id x0,
                             Id y0, const Pools& pools, const PlanOptions& opt, JunkMemo* junk = nullptr);

// Removes the removed edges and adds the added ones, all at once. Throws
// InvalidInput("inconsistent-plan") and leaves `m` untouched if an edge to
// remove is missing, an added edge is not in the host, or the result is not
// a rainbow matching.
RainbowMatching switch_along(const RainbowMatching& m, const SwitchPlan& plan, const ColoredBipartiteGraph* host = nullptr);
RainbowMatching switch_along(const RainbowMatching& m, const AlternatingWalk& walk, const ColoredBipartiteGraph* host = nullptr);

// Bounded-depth augmenting search over all unused colours. A chain of moves
// each inserts an edge meeting exactly one matching edge (which is ejected,
// freeing its other two elements), ending with an edge meeting none. This
// generalises rainbow augmenting paths to chains that also hand colours on.
// With max_edits > 0, failing that, it also tries kicks (drop one or two
// edges, then re-augment) whose total change stays within max_edits.
// On success `m` is updated and the exchanged edges are returned.
std::optional<SwitchPlan> fallback_augment(const ColoredBipartiteGraph& h, RainbowMatching& m, int max_moves,
                                           long long node_budget, Rng& rng, int max_edits = 0);

struct TraceRow {
  int iter = 0;
  std::string shape;
  std::size_t p1 = 0, p2 = 0, p3 = 0;
  std::size_t ledger = 0;  // |M' △ M| after the iteration
  std::size_t size = 0;
};

struct AugmentResult {
  RainbowMatching matching;
  std::vector<TraceRow> trace;
  std::map<std::string, int> shapes;
  std::map<std::string, int> failures;  // failure reasons of abandoned plans
  std::size_t ledger = 0, ledger_cap = 0;
  bool ledger_ok = true;   // |M' △ M| <= iterations * per-iteration cap throughout
  bool exhausted = false;  // no augmentation found
  bool timed_out = false;
  int iterations = 0;
};

AugmentResult augment_to_max(const ColoredBipartiteGraph& h, const GuideStructure& g, RainbowMatching m,
                             const AugmentBudget& budget, Rng& rng);

// Maximal rainbow matching improved by two-edge exchanges: an edge ab of M
// whose ends each see at least two unused-colour edges into the uncovered
// side is replaced by one such edge at a and one at b.
struct ExchangeResult {
  RainbowMatching matching;
  int exchanges = 0;
};
ExchangeResult exchange_matching(const ColoredBipartiteGraph& g, RainbowMatching start = {});

// Same procedure, after checking that G is balanced with parts of size n,
// min degree >= d, every colour has at most n/12 edges and n >= 3d + 12;
// then the result has at least 3d/2 edges. Throws PreconditionViolated.
ExchangeResult min_degree_rainbow_matching(const ColoredBipartiteGraph& g, double d);

struct SmallColourResult {
  RainbowMatching matching;
  int branch = 0;            // 1: medium colours suffice, 2: tiny then medium, 3: exchange on tiny, then medium
  long long target = 0;      // t + 6d
  long long achieved = 0;
  bool feasible = true;      // false: target-infeasible, `achieved` says how far it got
};
// Rainbow matching of target size t + 6d from the small colours of g.
SmallColourResult small_color_matching(const ColoredBipartiteGraph& g, double eps0, int d, Rng& rng, double n = 0);

}  // namespace rainbow
