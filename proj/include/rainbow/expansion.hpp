#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

struct ExpanderParams {
  double d = 8;
  double A = 4;
  double eps = 0.2;
  double n = 0;  // reference scale; 0 = |X| of the host
};

// Longest alternating path the searches look for:
// 8 * ceil(log n / log(d / 4A)), but never more than 4 * ceil(log2 n)
// (the second value is also used when d <= 4A).
int path_cap(double n, double d, double A);

enum class Tag : unsigned char { D, M };

// Alternating walk whose edges carry a D/M tag, first edge tagged D.
struct AlternatingWalk {
  std::vector<Vertex> vertices;  // edges.size() + 1 entries
  std::vector<Edge> edges;
  std::vector<Tag> tags;

  std::size_t length() const { return edges.size(); }
  bool closed() const { return !edges.empty() && vertices.front() == vertices.back(); }
  bool is_rainbow() const;
  bool is_path() const;  // no repeated vertex (a closed walk may repeat only its start)
  std::vector<Edge> tagged(Tag t) const;
};

// Vertices and colours a search must avoid.
struct ForbiddenSets {
  std::vector<Vertex> vertices;
  std::vector<Id> colours;
};

// N^t_{D,M}(S) with walk semantics: layered BFS, odd steps along D, even
// steps along M; repeated vertices allowed. Sorted output.
std::vector<Vertex> alt_neighborhood(const EdgeSet& d, const RainbowMatching& m, std::span<const Vertex> sources,
                                     int t);

struct RainbowNeighborhood {
  std::vector<Vertex> vertices;  // sorted
  bool truncated = false;        // node budget ran out; result is a subset
  std::vector<std::string> warnings;
};
// Endpoints of rainbow alternating paths of length exactly t starting in S
// and avoiding the forbidden sets, found by exhaustive DFS. `forbidden` may be
// empty, one shared entry, or one entry per source.
RainbowNeighborhood rainbow_alt_neighborhood(const EdgeSet& d, const RainbowMatching& m,
                                             std::span<const Vertex> sources, int t,
                                             std::span<const ForbiddenSets> forbidden = {},
                                             long long node_budget = 50'000'000, double A = 0);

struct PathSearchResult {
  std::optional<AlternatingWalk> path;
  std::vector<long long> frontier_from_u, frontier_from_v;  // layer sizes
};
// Rainbow D-M alternating path of odd length <= cap from u to v (opposite
// sides). Grows a search tree from u with d_u-edges and from v with
// d_v-edges; the trees are joined through an M edge. Ties go to the lowest
// index. A repeated vertex in the joined walk is shortcut away.
PathSearchResult find_alt_rainbow_path(const EdgeSet& d_u, const EdgeSet& d_v, const RainbowMatching& m, Vertex u,
                                       Vertex v, int cap, const ForbiddenSets& forbidden = {});

struct ContainerResult {
  std::vector<Id> subset;    // S'
  std::vector<Id> centers;   // centres of the maximal star packing
  long long neighborhood = 0;  // |N_D(S')|
  int branch = 0;            // 1: enough stars, 2: S' = centres
};
// For S on one side where every vertex has D-degree >= kappa d and
// Delta(D) <= d: S' ⊆ S with |S'| <= |S|/d and |N_D(S')| >= kappa |S| / 4.
// Throws PreconditionViolated when the degree conditions fail.
ContainerResult container_subset(const EdgeSet& d_graph, Side side, std::span<const Id> s, double kappa, double d);

struct ProbeTrial {
  Side side = Side::X;
  std::vector<Id> s;             // sampled S
  std::vector<Id> subset;        // S' after padding to the target size
  long long container_size = 0;  // |S'| straight from the container step
  long long reach_unpadded = 0;  // |N^t(S')| before padding
  long long reach = 0;           // |N^t(S')| after padding
  double fraction = 0;           // reach / n
  bool pass = false;
};

struct ProbeReport {
  ExpanderParams params;
  int t = 4;
  long long s_size = 0, target_size = 0;
  std::vector<ProbeTrial> trials;
  double min_fraction = 0, mean_fraction = 0;
  int passed = 0;
  bool all_pass() const { return passed == static_cast<int>(trials.size()); }
};
// Samples S of size ceil(An/d) (alternating sides), extracts S' with
// container_subset, pads it greedily from S to ceil(An/d^2) and measures
// |N^t(S')| against (1 - eps) n. Throws PreconditionViolated("infeasible")
// when S cannot be sampled.
ProbeReport expander_probe(const EdgeSet& d, const RainbowMatching& m, const ExpanderParams& params, int trials,
                           Rng& rng, int t = 4);

// Re-measures fixed S' sets (from an earlier probe) against another matching.
ProbeReport remeasure(const EdgeSet& d, const RainbowMatching& m, const ProbeReport& earlier, double eps);

}  // namespace rainbow
