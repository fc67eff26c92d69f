#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/augmentation.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

struct SolveConfig {
  double k = 3;              // bound constant: uncovered vs ceil(k ln n / ln ln n)
  double eps0 = 0.05;        // large-colour threshold (1 - eps0) n
  double q = 0.1;            // nibble bite parameter
  double gamma = 0.5;        // nibble stops at |X|^-gamma uncovered
  int max_rounds = 1000;
  int d = 0;                 // pool size; 0 = ceil(ln n / ln ln n)
  int restarts = 8;          // independent attempts (fresh partitions for triple systems)
  std::uint64_t seed = 0;
  long long accept_uncovered = 0;  // stop restarting once this few are uncovered
  double time_limit_s = 120;       // per attempt, for the augmentation stage
  long long fallback_nodes = 200'000;
  int jobs = 1;              // attempts run concurrently in batches of this size
};

// ceil(k ln n / ln ln n); n itself when n < 3 (the formula is undefined there).
long long bound_value(double n, double k);

struct Stage {
  std::string name;
  long long size = 0;
};

struct SolveReport {
  std::string kind;                 // latin, array, steiner, hypergraph
  long long n = 0;                  // balanced instance scale
  std::vector<Stage> stages;        // sizes after each pipeline stage, non-decreasing
  RainbowMatching matching;         // root ids: row/column/symbol, or point ids for triples
  std::vector<Triple> triples;      // triple systems and hypergraphs
  long long size = 0;
  long long uncovered = 0;          // n - size, or uncovered points for triple systems
  std::vector<Id> uncovered_x, uncovered_y, uncovered_colours;
  std::vector<Id> uncovered_points;
  double seconds = 0;
  std::uint64_t seed = 0;
  double k = 3;
  long long bound = 0;
  bool within_bound = false;
  bool exhausted = false;           // final augmentation found nothing more
  int attempts = 0;
  int best_attempt = 0;
  std::map<std::string, int> shapes;
  std::vector<std::string> notes;
  std::optional<nlohmann::json> premise_audit;
};

nlohmann::json to_json(const SolveReport& r);

SolveReport solve_latin(const LatinArray& l, const SolveConfig& cfg);
SolveReport solve_many_symbols(const LatinArray& l, const SolveConfig& cfg);
SolveReport solve_steiner(const SteinerTripleSystem& s, const SolveConfig& cfg);
SolveReport solve_hypergraph(const LinearHypergraph3& h, const SolveConfig& cfg);

// Split, nibble, greedy, augment on one host graph; `guide` (a subgraph of
// `host` by root ids) supplies the nibble graph and the pool colours, the
// host itself when null. Matching in the host's local ids.
struct PipelineRun {
  RainbowMatching matching;
  long long after_nibble = 0, after_greedy = 0;
  AugmentResult augment;
};
PipelineRun run_pipeline(const ColoredBipartiteGraph& host, const ColoredBipartiteGraph* guide, const SolveConfig& cfg,
                         Rng& rng);

}  // namespace rainbow
