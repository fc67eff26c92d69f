// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/augmentation.hpp"
#include "rainbow/expansion.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/nibble.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solvers.hpp"
#include "rainbow/typicality.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Criterion 8(a) collects every matching the other criteria produce.
struct VerifyTally {
  long long checked = 0, failed = 0;
  void edges(const ColoredBipartiteGraph& g, const std::vector<Edge>& e) {
    ++checked;
    if (!verify_edges(g, e).ok) ++failed;
  }
  void triples(Id n, const std::vector<Triple>& system, const std::vector<Triple>& t) {
    ++checked;
    if (!verify_triples(n, system, t).ok) ++failed;
  }
} tally;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RainbowMatching random_greedy(const ColoredBipartiteGraph& g, Rng& rng) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  rng.shuffle(edges);
  RainbowMatching m;
  for (const Edge& e : edges)
    if (m.can_add(e)) m.add(e);
  return m;
}

std::vector<Id> random_permutation(Id n, Rng& rng) {
  std::vector<Id> p(static_cast<std::size_t>(n));
  for (Id i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  rng.shuffle(p);
  return p;
}

RainbowMatching random_perfect(Id n, Rng& rng) {
  const auto p = random_permutation(n, rng);
  RainbowMatching m;
  for (Id i = 0; i < n; ++i) m.add({i, p[static_cast<std::size_t>(i)], i});
  return m;
}

void criterion1(Outcome& o) {
  const Id n = 100;
  const double q = 1.0 / 3;
  const ColoredBipartiteGraph g = latin_to_graph(cayley_cyclic(n));
  Rng root(1);
  double total = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    Rng rng = root.fork(static_cast<std::uint64_t>(i));
    const BiteOutcome b = single_bite(g, q, rng);
    total += static_cast<double>(b.kept.size());
    if (i % 100 == 0) tally.edges(g, b.kept.edges());
  }
  const double mean = total / trials;
  const double target = n * q * std::pow(1 - q / n, 3.0 * (n - 1));
  const double rel = std::abs(mean - target) / target;
  o.detail << "mean |M0| = " << mean << ", formula = " << target << ", relative error = " << rel;
  o.require(rel <= 0.05, "within 5%");
}

void criterion2(Outcome& o) {
  int equal = 0, total = 0, exceeded = 0;
  for (Id n = 4; n <= 8; ++n)
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const LatinArray l = random_latin(n, 1000 * static_cast<std::uint64_t>(n) + seed);
      const long long best = brute_force_max(l).size;
      SolveConfig cfg;
      cfg.restarts = 20;
      cfg.seed = seed;
      cfg.accept_uncovered = n - best;
      const SolveReport rep = solve_latin(l, cfg);
      tally.edges(latin_to_graph(l), rep.matching.edges());
      ++total;
      if (rep.size == best) ++equal;
      if (rep.size > best) ++exceeded;
    }
  o.detail << equal << "/" << total << " equal the oracle, " << exceeded << " exceed it";
  o.require(equal >= 0.95 * total, ">= 95% equal");
  o.require(exceeded == 0, "never exceeds");
}

void criterion3(Outcome& o) {
  for (Id n = 4; n <= 15; ++n) {
    if (n % 2 == 0 && n > 8) continue;
    const LatinArray l = cayley_cyclic(n);
    SolveConfig cfg;
    cfg.restarts = 20;
    cfg.seed = 7;
    const SolveReport rep = solve_latin(l, cfg);
    tally.edges(latin_to_graph(l), rep.matching.edges());
    const long long want = n % 2 ? n : n - 1;
    o.detail << "Z" << n << "=" << rep.size << " ";
    o.require(rep.size == want, "Z" + std::to_string(n) + " gives " + std::to_string(want));
    if (n % 2 == 0) {
      const long long oracle = brute_force_max(l).size;
      o.require(oracle == n - 1, "oracle confirms n-1 for Z" + std::to_string(n));
    }
  }
}

void criterion4(Outcome& o) {
  for (Id n : {32, 64, 128, 256}) {
    long long worst = 0;
    const long long bound = bound_value(n, 3);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const LatinArray l = random_latin(n, seed);
      SolveConfig cfg;
      cfg.restarts = 20;
      cfg.seed = seed;
      cfg.accept_uncovered = bound;
      const SolveReport rep = solve_latin(l, cfg);
      tally.edges(latin_to_graph(l), rep.matching.edges());
      worst = std::max(worst, rep.uncovered);
    }
    o.detail << "n=" << n << " worst " << worst << "/" << bound << " ";
    o.require(worst <= bound, "n=" + std::to_string(n) + " within bound");
  }
}

void criterion5(Outcome& o) {
  for (Id n : {9, 27, 81, 243, 999}) {
    const SteinerTripleSystem s = bose_sts(n);
    SolveConfig cfg;
    cfg.restarts = 8;
    cfg.seed = 3;
    const SolveReport rep = solve_steiner(s, cfg);
    tally.triples(n, s.triples(), rep.triples);
    const long long bound = 3 * bound_value(n, 3);
    const double reference = aks_reference(n);
    o.detail << "n=" << n << " uncovered " << rep.uncovered << "/" << bound << " ";
    o.require(rep.uncovered <= bound, "n=" + std::to_string(n) + " within 3x bound");
    if (n >= 81) o.require(rep.uncovered < reference, "n=" + std::to_string(n) + " below the reference curve");
  }
}

void criterion6(Outcome& o) {
  const Id n = 64;
  const Id r = static_cast<Id>(std::ceil(std::log(n) / std::log(std::log(n))));
  int full = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const LatinArray l = augment_fresh_symbols(random_latin(n, seed), r);
    SolveConfig cfg;
    cfg.seed = seed;
    const SolveReport rep = solve_many_symbols(l, cfg);
    tally.edges(latin_to_graph(l), rep.matching.edges());
    if (rep.size == n) ++full;
  }
  o.detail << "r=" << r << ", full in " << full << "/50";
  o.require(full >= 45, ">= 90% full");
}

// Random `layers`-regular bipartite graph on n + n vertices (x joined to
// tau((pi(x) + k) mod n) for k < layers), edges dealt to colours so that no
// colour gets more than cap edges and the colouring stays proper.
ColoredBipartiteGraph capped_graph(Id n, int layers, int cap, Rng& rng) {
  const auto pi = random_permutation(n, rng), tau = random_permutation(n, rng);
  std::vector<std::pair<Id, Id>> list;
  for (Id x = 0; x < n; ++x)
    for (int k = 0; k < layers; ++k) list.push_back({x, tau[static_cast<std::size_t>((pi[static_cast<std::size_t>(x)] + k) % n)]});
  rng.shuffle(list);
  std::vector<std::vector<std::pair<Id, Id>>> colours;
  std::vector<Edge> edges;
  for (auto [x, y] : list) {
    Id c = 0;
    for (; c < static_cast<Id>(colours.size()); ++c) {
      auto& cls = colours[static_cast<std::size_t>(c)];
      if (static_cast<int>(cls.size()) >= cap) continue;
      bool clash = false;
      for (auto [a, b] : cls) clash = clash || a == x || b == y;
      if (!clash) break;
    }
    if (c == static_cast<Id>(colours.size())) colours.emplace_back();
    colours[static_cast<std::size_t>(c)].push_back({x, y});
    edges.push_back({x, y, c});
  }
  return ColoredBipartiteGraph(n, n, static_cast<Id>(colours.size()), std::move(edges));
}

void criterion7(Outcome& o) {
  Rng rng(17);
  int count = 0;
  for (int i = 0; i < 50; ++i) {
    const Id n = 12 + i % 3;
    const double d = (n - 12) / 3.0;  // largest d allowed by n >= 3d + 12
    const int cap = std::max(1, n / 12);
    const ColoredBipartiteGraph g = capped_graph(n, std::max(1, static_cast<int>(std::ceil(d))), cap, rng);
    const double need = 1.5 * d;
    OracleOptions opt;
    opt.cap = n;
    const long long exact = brute_force_max(g, opt).size;
    const ExchangeResult got = min_degree_rainbow_matching(g, d);
    tally.edges(g, got.matching.edges());
    o.require(exact >= need, "oracle >= 3d/2 at instance " + std::to_string(i));
    o.require(static_cast<double>(got.matching.size()) >= need, "algorithm >= 3d/2 at instance " + std::to_string(i));
    ++count;
  }
  // Supplementary: the regime where the bound is not vacuous.
  long long worst = 1 << 30;
  for (int i = 0; i < 50; ++i) {
    const ColoredBipartiteGraph g = capped_graph(60, 8, 5, rng);
    const ExchangeResult got = min_degree_rainbow_matching(g, 8);
    tally.edges(g, got.matching.edges());
    worst = std::min<long long>(worst, static_cast<long long>(got.matching.size()));
  }
  o.detail << count << " instances at n<=14 (d=(n-12)/3); supplementary n=60 d=8 worst " << worst;
  o.require(worst >= 12, "supplementary n=60 reaches 12");
}

EdgeSet random_regular(Id n, int d, Rng& rng) {
  EdgeSet s(n, n);
  for (int k = 0; k < d; ++k) {
    const auto p = random_permutation(n, rng);
    for (Id i = 0; i < n; ++i) s.add({i, p[static_cast<std::size_t>(i)], k});
  }
  return s;
}

// Colour classes of a Latin square are perfect matchings, so any d of them
// form a d-regular properly coloured subgraph.
EdgeSet latin_pool(const ColoredBipartiteGraph& g, int d, Rng& rng) {
  auto colours = random_permutation(g.num_colors(), rng);
  colours.resize(static_cast<std::size_t>(d));
  return color_subgraph(g, colours);
}

void criterion8(Outcome& o) {
  Rng rng(23);
  // (b)
  int subset_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const Id n = 8 + static_cast<Id>(rng.below(9));
    const ColoredBipartiteGraph g = latin_to_graph(random_latin(n, 500 + static_cast<std::uint64_t>(i)));
    const EdgeSet d = latin_pool(g, 2 + static_cast<int>(rng.below(3)), rng);
    const RainbowMatching m = random_greedy(g, rng);
    std::vector<Vertex> s;
    for (Id v = 0; v < n; ++v)
      if (rng.bernoulli(0.25)) s.push_back({Side::X, v});
    if (s.empty()) s.push_back({Side::X, 0});
    const int t = 1 + static_cast<int>(rng.below(5));
    const auto rainbow = rainbow_alt_neighborhood(d, m, s, t);
    const auto plain = alt_neighborhood(d, m, s, t);
    if (std::includes(plain.begin(), plain.end(), rainbow.vertices.begin(), rainbow.vertices.end())) ++subset_ok;
  }
  o.detail << "(b) " << subset_ok << "/500";
  o.require(subset_ok == 500, "(b) rainbow neighbourhood inside walk neighbourhood");

  // (c)
  int container_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const Id n = 32 + static_cast<Id>(rng.below(33));
    const int deg = 2 + static_cast<int>(rng.below(7));
    const ColoredBipartiteGraph g = latin_to_graph(cayley_cyclic(n));
    const EdgeSet d = latin_pool(g, deg, rng);
    auto s = random_permutation(n, rng);
    s.resize(static_cast<std::size_t>(2 * deg + static_cast<Id>(rng.below(static_cast<std::uint64_t>(n - 2 * deg + 1)))));
    std::sort(s.begin(), s.end());
    const ContainerResult c = container_subset(d, Side::X, s, 1.0, deg);
    std::set<Id> nbrs;
    for (Id v : c.subset)
      for (const Edge& e : d.at(Side::X, v)) nbrs.insert(e.y);
    const bool inside = std::includes(s.begin(), s.end(), c.subset.begin(), c.subset.end());
    const bool small = static_cast<double>(c.subset.size()) <= static_cast<double>(s.size()) / deg + 1e-9;
    const bool wide = static_cast<double>(nbrs.size()) >= static_cast<double>(s.size()) / 4 - 1e-9;
    if (inside && small && wide && static_cast<long long>(nbrs.size()) == c.neighborhood) ++container_ok;
  }
  o.detail << " (c) " << container_ok << "/100";
  o.require(container_ok == 100, "(c) container postconditions");

  // (d) blocks of K_{d,d} with a block-respecting perfect matching do not expand.
  {
    const Id n = 16;
    const int deg = 4;
    EdgeSet blocks(n, n);
    for (Id x = 0; x < n; ++x)
      for (Id j = 0; j < deg; ++j) {
        const Id b = x / deg;
        const Id y = b * deg + j;
        blocks.add({x, y, b * deg + (x % deg + j) % deg});
      }
    RainbowMatching m;
    for (Id i = 0; i < n; ++i) m.add({i, i, i});
    std::vector<Vertex> s;
    for (Id x = 0; x < deg; ++x) s.push_back({Side::X, x});
    const auto n2 = alt_neighborhood(blocks, m, s, 2);
    o.detail << " (d) |N2|=" << n2.size() << "/|S|=" << s.size();
    o.require(n2.size() == s.size(), "(d) block counterexample has |N2| = |S|");

    const Id big = 64;
    const int bd = 8;
    EdgeSet blocks64(big, big);
    for (Id x = 0; x < big; ++x)
      for (Id j = 0; j < bd; ++j) {
        const Id b = x / bd;
        blocks64.add({x, b * bd + j, b * bd + (x % bd + j) % bd});
      }
    const RainbowMatching random_m = random_perfect(big, rng);
    ExpanderParams p;
    p.d = bd;
    p.eps = 0.2;
    const ProbeReport rep = expander_probe(blocks64, random_m, p, 20, rng, 4);
    o.detail << ", probe t=4 " << rep.passed << "/" << rep.trials.size();
    o.require(rep.all_pass(), "(d) probe passes with a random perfect matching");
  }

  // (e) stability under a perturbation of at most eps n / (10 d^2) edges.
  {
    const Id n = 4096;
    const int deg = 4;
    const double eps = 0.2;
    const auto allowed = static_cast<std::size_t>(eps * n / (10.0 * deg * deg));
    int held = 0, premise = 0;
    for (int i = 0; i < 50; ++i) {
      const EdgeSet d = random_regular(n, deg, rng);
      const RainbowMatching m = random_perfect(n, rng);
      ExpanderParams p;
      p.d = deg;
      p.A = 2;
      p.eps = eps;
      const ProbeReport before = expander_probe(d, m, p, 2, rng, 4);
      if (!before.all_pass()) continue;
      ++premise;
      // Swap the partners of two matching edges and drop a third one.
      std::vector<Edge> edges = m.edges();
      rng.shuffle(edges);
      RainbowMatching m2 = m;
      for (int k = 0; k < 3; ++k) m2.remove(edges[static_cast<std::size_t>(k)]);
      m2.add({edges[0].x, edges[1].y, edges[0].c});
      m2.add({edges[1].x, edges[0].y, edges[1].c});
      if (symmetric_difference(m, m2) > allowed) continue;
      const ProbeReport after = remeasure(d, m2, before, 2 * eps);
      if (after.all_pass()) ++held;
    }
    o.detail << " (e) " << held << "/" << premise << " (perturbation <= " << allowed << ")";
    o.require(premise == 50 && held == 50, "(e) stability on 50 trials");
  }

  // (a) runs last so it sees everything the other criteria produced.
  o.detail << " (a) " << (tally.checked - tally.failed) << "/" << tally.checked << " verified";
  o.require(tally.failed == 0 && tally.checked > 0, "(a) every emitted matching verifies");
}

void criterion9(Outcome& o) {
  for (Id n : {16, 64}) {
    const ColoredBipartiteGraph g = latin_to_graph(cayley_cyclic(n));
    TypicalityParams p;
    p.p = 1;
    const TypicalityReport rep = check_coloured(g, p, ColouredLevel::Typical);
    o.detail << "K" << n << (rep.pass ? " ok " : " FAIL ");
    o.require(rep.pass, "coloured typical at n=" + std::to_string(n));
  }
  // No STS exists on 16 or 64 points; 15 and 63 are the nearest orders.
  for (Id n : {15, 63}) {
    const ColoredBipartiteGraph g = sts_shadow_graph(bose_sts(n));
    bool codegree = true;
    for (Id a = 0; a < n && codegree; ++a)
      for (Id b = a + 1; b < n; ++b) {
        Id common = 0;
        for (Id y = 0; y < n; ++y) common += g.color_between(a, y) != kNone && g.color_between(b, y) != kNone;
        codegree = codegree && common == n - 2;
      }
    TypicalityParams p;
    p.p = static_cast<double>(n - 1) / n;
    const TypicalityReport rep = check_typical(g, p);
    o.detail << "STS" << n << (rep.pass && codegree ? " ok " : " FAIL ");
    o.require(codegree, "codegree n-2 at n=" + std::to_string(n));
    o.require(rep.pass, "typical at n=" + std::to_string(n));
  }
}

}  // namespace

// Optional arguments pick criteria by number.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all = {
      {1, "bite-size law", 10, criterion1},
      {2, "oracle equivalence", 60, criterion2},
      {3, "cyclic group separation", 30, criterion3},
      {4, "Latin square surrogate bound", 600, criterion4},
      {5, "Steiner surrogate bound", 300, criterion5},
      {6, "many-symbols full matching", 120, criterion6},
      {7, "min-degree matching witness", 1e9, criterion7},
      {9, "typicality anchors", 1e9, criterion9},
      {8, "invariant suites", 300, criterion8},
  };
  bool all_pass = true;
  for (const Criterion& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double s = seconds_since(t0);
    o.require(s < c.limit_s, "runtime");
    all_pass = all_pass && o.pass;
    std::printf("%s criterion %d (%s): %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), s);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
