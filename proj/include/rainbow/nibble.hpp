#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

struct NibbleConfig {
  double q = 0.1;
  int max_rounds = 1000;
  // Stop once at most stop_fraction * |X| vertices of X are uncovered;
  // negative means |X|^-gamma.
  double stop_fraction = -1;
  double gamma = 0.5;
};

// One round: every edge is picked independently with probability q / n
// (n = |X| unless given); picked edges that share a vertex or a colour with
// another picked edge are discarded, the rest form a rainbow matching.
struct BiteOutcome {
  std::vector<Edge> chosen;     // H
  RainbowMatching kept;         // M0
  std::vector<Edge> collided;   // H' = H minus M0
};
BiteOutcome single_bite(const ColoredBipartiteGraph& g, double q, Rng& rng, double n = 0);

// G minus the vertices and colours of M (M in G's local ids). Throws
// InvalidInput("matching-not-in-graph") if some edge of M is not in G.
ColoredBipartiteGraph remove_matched(const ColoredBipartiteGraph& g, const RainbowMatching& m);

struct RoundStat {
  int round = 0;
  long long chosen = 0;
  long long kept = 0;
  long long uncovered = 0;  // |X| - |M| after the round
  double q = 0;
};

struct NibbleResult {
  RainbowMatching matching;  // in the input graph's ids
  std::vector<RoundStat> rounds;
  bool stalled = false;      // stopped by the stall rule
  bool exhausted = false;    // residual graph ran out of edges
  double final_q = 0;
};

// Repeated bites on the residual graph with probability q / D, D the
// residual's average X-degree (|X_current| while the residual is complete).
// Two consecutive rounds whose chosen edges all collide halve q once; two
// more stop the run and set `stalled`. Rounds that choose nothing are skipped.
NibbleResult iterated_nibble(const ColoredBipartiteGraph& g, const NibbleConfig& cfg, Rng& rng);

// Random three-way split of X, Y and the colours (each side split into exact
// thirds), a nibble inside each part, and the union of the three matchings.
struct ThreeSplit {
  std::array<std::vector<Id>, 3> xs, ys, cs;
  std::vector<int> x_part, y_part, c_part;  // part index per id of the input graph
  std::array<RainbowMatching, 3> matchings; // input graph ids
  std::array<NibbleResult, 3> runs;
  RainbowMatching combined() const;
};
ThreeSplit three_split_nibble(const ColoredBipartiteGraph& g, const NibbleConfig& cfg, Rng& rng);

}  // namespace rainbow
