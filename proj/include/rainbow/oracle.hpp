#pragma once

#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/instances.hpp"

namespace rainbow {

struct OracleOptions {
  int cap = 0;           // 0 = default cap of the instance kind
  long long stop_at = 0; // >0: stop as soon as a matching of this size is found
};

struct OracleResult {
  long long size = 0;
  std::vector<Edge> edges;       // graph / Latin witness
  std::vector<Triple> triples;   // hypergraph / STS witness
  long long nodes = 0;
  bool stopped_early = false;    // stop_at reached; size is a lower bound
};

inline constexpr int kGraphOracleCap = 9;
inline constexpr int kTripleOracleCap = 15;

// Exact maximum by backtracking over the vertices in index order, pruned by
// the number of vertices, free partners and free colours left. Throws
// TooLarge beyond the cap (|X| for graphs and arrays, n for triple systems).
OracleResult brute_force_max(const ColoredBipartiteGraph& g, const OracleOptions& opt = {});
OracleResult brute_force_max(const LatinArray& l, const OracleOptions& opt = {});
OracleResult brute_force_max(const SteinerTripleSystem& s, const OracleOptions& opt = {});
OracleResult brute_force_max(const LinearHypergraph3& h, const OracleOptions& opt = {});

}  // namespace rainbow
