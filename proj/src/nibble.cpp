#include "rainbow/nibble.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/generators.hpp"

namespace rainbow {

BiteOutcome single_bite(const ColoredBipartiteGraph& g, double q, Rng& rng, double n) {
  if (n <= 0) n = g.nx();
  BiteOutcome out;
  if (n <= 0) return out;
  const double prob = std::min(1.0, q / n);
  for (const Edge& e : g.edges())
    if (rng.bernoulli(prob)) out.chosen.push_back(e);
  std::vector<int> nx(static_cast<std::size_t>(g.nx()), 0), ny(static_cast<std::size_t>(g.ny()), 0),
      nc(static_cast<std::size_t>(g.num_colors()), 0);
  for (const Edge& e : out.chosen) {
    ++nx[static_cast<std::size_t>(e.x)];
    ++ny[static_cast<std::size_t>(e.y)];
    ++nc[static_cast<std::size_t>(e.c)];
  }
  for (const Edge& e : out.chosen) {
    if (nx[static_cast<std::size_t>(e.x)] == 1 && ny[static_cast<std::size_t>(e.y)] == 1 &&
        nc[static_cast<std::size_t>(e.c)] == 1)
      out.kept.add(e);
    else
      out.collided.push_back(e);
  }
  return out;
}

ColoredBipartiteGraph remove_matched(const ColoredBipartiteGraph& g, const RainbowMatching& m) {
  std::vector<char> dx(static_cast<std::size_t>(g.nx()), 0), dy(static_cast<std::size_t>(g.ny()), 0),
      dc(static_cast<std::size_t>(g.num_colors()), 0);
  for (const Edge& e : m.raw()) {
    if (!g.has_edge(e))
      throw InvalidInput("matching-not-in-graph", "edge " + to_string(e) + " is not an edge of the graph");
    dx[static_cast<std::size_t>(e.x)] = dy[static_cast<std::size_t>(e.y)] = dc[static_cast<std::size_t>(e.c)] = 1;
  }
  auto keep = [](const std::vector<char>& drop) {
    std::vector<Id> out;
    for (std::size_t i = 0; i < drop.size(); ++i)
      if (!drop[i]) out.push_back(static_cast<Id>(i));
    return out;
  };
  return g.induced(keep(dx), keep(dy), keep(dc));
}

NibbleResult iterated_nibble(const ColoredBipartiteGraph& g, const NibbleConfig& cfg, Rng& rng) {
  NibbleResult res;
  const double n = g.nx();
  const double stop = cfg.stop_fraction >= 0 ? cfg.stop_fraction : (n > 0 ? std::pow(n, -cfg.gamma) : 0);
  double q = cfg.q;
  bool halved = false;
  int idle = 0;
  const RootIndex to_g(g);
  ColoredBipartiteGraph cur = g;
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    const long long uncovered = static_cast<long long>(n) - static_cast<long long>(res.matching.size());
    if (uncovered <= stop * n) break;
    if (cur.num_edges() == 0) {
      res.exhausted = true;
      break;
    }
    // Bite at the residual's own regular scale: its average X-degree.
    const double degree = static_cast<double>(cur.num_edges()) / std::max<double>(1, cur.nx());
    BiteOutcome bite = single_bite(cur, q, rng, degree);
    for (const Edge& e : bite.kept.raw()) res.matching.add(to_g.local(cur.to_root(e)));
    res.rounds.push_back({round, static_cast<long long>(bite.chosen.size()), static_cast<long long>(bite.kept.size()),
                          static_cast<long long>(n) - static_cast<long long>(res.matching.size()), q});
    if (bite.chosen.empty()) continue;  // an empty draw says nothing about progress
    if (bite.kept.empty()) {
      if (++idle >= 2) {
        if (halved) {
          res.stalled = true;
          break;
        }
        halved = true;
        q /= 2;
        idle = 0;
      }
      continue;
    }
    idle = 0;
    cur = remove_matched(cur, bite.kept);
  }
  res.final_q = q;
  return res;
}

RainbowMatching ThreeSplit::combined() const {
  RainbowMatching out;
  for (const auto& m : matchings)
    for (const Edge& e : m.raw()) out.add(e);
  return out;
}

ThreeSplit three_split_nibble(const ColoredBipartiteGraph& g, const NibbleConfig& cfg, Rng& rng) {
  ThreeSplit ts;
  SplitSpec spec;
  spec.mode = SplitMode::ConditionedExact;
  auto ids = [](Id n) {
    std::vector<Id> v(static_cast<std::size_t>(n));
    for (Id i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
  };
  Rng split_rng = rng.fork(stream::kSplit);
  ts.xs = random_split(ids(g.nx()), spec, split_rng);
  ts.ys = random_split(ids(g.ny()), spec, split_rng);
  ts.cs = random_split(ids(g.num_colors()), spec, split_rng);
  auto owner = [](const std::array<std::vector<Id>, 3>& parts, Id n) {
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    for (int p = 0; p < 3; ++p)
      for (Id v : parts[static_cast<std::size_t>(p)]) out[static_cast<std::size_t>(v)] = p;
    return out;
  };
  ts.x_part = owner(ts.xs, g.nx());
  ts.y_part = owner(ts.ys, g.ny());
  ts.c_part = owner(ts.cs, g.num_colors());
  const RootIndex to_g(g);
  for (std::size_t p = 0; p < 3; ++p) {
    ColoredBipartiteGraph part = g.induced(ts.xs[p], ts.ys[p], ts.cs[p]);
    Rng part_rng = rng.fork(stream::kNibble + p);
    ts.runs[p] = iterated_nibble(part, cfg, part_rng);
    for (const Edge& e : ts.runs[p].matching.raw()) ts.matchings[p].add(to_g.local(part.to_root(e)));
  }
  return ts;
}

}  // namespace rainbow
