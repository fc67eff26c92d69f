#include <doctest.h>

#include <cmath>
#include <set>

#include "rainbow/expansion.hpp"
#include "rainbow/generators.hpp"

using namespace rainbow;

namespace {

std::vector<Vertex> xs(std::initializer_list<Id> ids) {
  std::vector<Vertex> v;
  for (Id i : ids) v.push_back({Side::X, i});
  return v;
}

// Independent walk-neighbourhood: repeated set composition.
std::set<Vertex> walk_layers(const EdgeSet& d, const RainbowMatching& m, const std::vector<Vertex>& s, int t) {
  std::set<Vertex> cur(s.begin(), s.end());
  for (int step = 1; step <= t; ++step) {
    std::set<Vertex> next;
    for (Vertex v : cur) {
      if (step % 2 == 1) {
        for (const Edge& e : d.at(v.side, v.id)) next.insert({opposite(v.side), v.side == Side::X ? e.y : e.x});
      } else if (auto e = m.at(v.side, v.id)) {
        next.insert({opposite(v.side), v.side == Side::X ? e->y : e->x});
      }
    }
    cur = next;
  }
  return cur;
}

// Replays a walk against D and M.
bool replays(const AlternatingWalk& w, const EdgeSet& d1, const EdgeSet& d2, const RainbowMatching& m) {
  if (w.vertices.size() != w.edges.size() + 1) return false;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const Edge& e = w.edges[i];
    if (w.tags[i] != (i % 2 == 0 ? Tag::D : Tag::M)) return false;
    const Vertex a = w.vertices[i], b = w.vertices[i + 1];
    if (a.side == b.side || e.end(a.side) != a.id || e.end(b.side) != b.id) return false;
    if (w.tags[i] == Tag::M) {
      if (!m.contains(e)) return false;
    } else {
      bool in_d = false;
      for (const EdgeSet* d : {&d1, &d2})
        if (a.id < (a.side == Side::X ? d->nx() : d->ny()))
          for (const Edge& f : d->at(a.side, a.id)) in_d = in_d || f == e;
      if (!in_d) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("path cap") {
  // 8 ceil(log n / log(d / 4A)), clamped to 4 ceil(log2 n).
  CHECK(path_cap(65536, 1024, 1) == 16);
  CHECK(path_cap(1 << 20, 64, 1) == 40);
  CHECK(path_cap(1024, 8, 1) == 40);
  CHECK(path_cap(1 << 20, 4, 1) == 80);
}

TEST_CASE("alternating neighbourhoods by hand") {
  EdgeSet d(4, 4);
  for (Id i = 0; i < 4; ++i) d.add({i, (i + 1) % 4, i});
  RainbowMatching m;
  for (Id i = 0; i < 4; ++i) m.add({(i + 2) % 4, i, 10 + i});
  // t = 1 is N_D(S).
  CHECK(alt_neighborhood(d, m, xs({0, 2}), 1) == std::vector<Vertex>{{Side::Y, 1}, {Side::Y, 3}});
  // t = 2: x -> y = x+1 -> M-partner x+3.
  CHECK(alt_neighborhood(d, m, xs({0}), 2) == std::vector<Vertex>{{Side::X, 3}});
  CHECK(alt_neighborhood(d, m, xs({1}), 4) == std::vector<Vertex>{{Side::X, 3}});
}

TEST_CASE("walk neighbourhood matches set composition") {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const ColoredBipartiteGraph g = latin_to_graph(random_latin(10, 50 + static_cast<std::uint64_t>(t)));
    std::vector<Id> cols{0, 1, 2};
    const EdgeSet d = color_subgraph(g, cols);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    rng.shuffle(edges);
    RainbowMatching m;
    for (const Edge& e : edges)
      if (e.c > 2 && m.can_add(e)) m.add(e);
    const auto s = xs({0, static_cast<Id>(rng.below(10))});
    const int steps = 1 + static_cast<int>(rng.below(5));
    const auto got = alt_neighborhood(d, m, s, steps);
    const auto want = walk_layers(d, m, s, steps);
    CHECK(std::set<Vertex>(got.begin(), got.end()) == want);
    // Monotone in S.
    auto bigger = s;
    bigger.push_back({Side::X, 5});
    const auto more = alt_neighborhood(d, m, bigger, steps);
    CHECK(std::includes(more.begin(), more.end(), got.begin(), got.end()));
  }
}

TEST_CASE("the block counterexample does not expand in two steps") {
  const Id n = 16, deg = 4;
  EdgeSet d(n, n);
  for (Id x = 0; x < n; ++x)
    for (Id j = 0; j < deg; ++j) d.add({x, x / deg * deg + j, x / deg * deg + (x % deg + j) % deg});
  RainbowMatching m;
  for (Id i = 0; i < n; ++i) m.add({i, i, 100 + i});
  for (Id blocks = 1; blocks <= 3; ++blocks) {
    std::vector<Vertex> s;
    for (Id x = 0; x < blocks * deg; ++x) s.push_back({Side::X, x});
    CHECK(alt_neighborhood(d, m, s, 2).size() == s.size());
  }
}

TEST_CASE("rainbow neighbourhoods") {
  // s=x0 -a- y1 =M= x1 -a- y2: the only route to y2 repeats colour a.
  EdgeSet d(3, 3);
  d.add({0, 1, 0});
  d.add({1, 2, 0});
  RainbowMatching m;
  m.add({1, 1, 5});
  const auto s = xs({0});
  CHECK(alt_neighborhood(d, m, s, 3) == std::vector<Vertex>{{Side::Y, 2}});
  CHECK(rainbow_alt_neighborhood(d, m, s, 3).vertices.empty());
  CHECK(rainbow_alt_neighborhood(d, m, s, 1).vertices == alt_neighborhood(d, m, s, 1));

  // With a fresh colour the route exists, and forbidding the middle vertex kills it.
  EdgeSet d2(3, 3);
  d2.add({0, 1, 0});
  d2.add({1, 2, 1});
  CHECK(rainbow_alt_neighborhood(d2, m, s, 3).vertices == std::vector<Vertex>{{Side::Y, 2}});
  ForbiddenSets f;
  f.vertices = {{Side::X, 1}};
  const ForbiddenSets one[1] = {f};
  CHECK(rainbow_alt_neighborhood(d2, m, s, 3, one).vertices.empty());
}

TEST_CASE("rainbow paths: shortest shape, isolation, and replay") {
  EdgeSet du(2, 2), dv(2, 2);
  du.add({0, 1, 0});
  dv.add({1, 0, 1});
  RainbowMatching m;
  m.add({1, 1, 7});
  const auto r = find_alt_rainbow_path(du, dv, m, {Side::X, 0}, {Side::Y, 0}, 9);
  REQUIRE(r.path);
  CHECK(r.path->length() == 3);
  CHECK(r.path->is_rainbow());
  CHECK(replays(*r.path, du, dv, m));

  EdgeSet empty(2, 2);
  CHECK(!find_alt_rainbow_path(empty, dv, m, {Side::X, 0}, {Side::Y, 0}, 9).path);

  Rng rng(21);
  int found = 0;
  for (int t = 0; t < 100; ++t) {
    const ColoredBipartiteGraph g = latin_to_graph(random_latin(16, 900 + static_cast<std::uint64_t>(t)));
    std::vector<Id> pool{0, 1, 2, 3}, other{4, 5, 6, 7};
    const EdgeSet a = color_subgraph(g, pool), b = color_subgraph(g, other);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    rng.shuffle(edges);
    RainbowMatching mm;
    for (const Edge& e : edges)
      if (e.c > 7 && mm.can_add(e)) mm.add(e);
    const Vertex u{Side::X, static_cast<Id>(rng.below(16))}, v{Side::Y, static_cast<Id>(rng.below(16))};
    const int cap = 7;
    const auto res = find_alt_rainbow_path(a, b, mm, u, v, cap);
    if (!res.path) continue;
    ++found;
    const AlternatingWalk& w = *res.path;
    CHECK(w.length() % 2 == 1);
    CHECK(static_cast<int>(w.length()) <= cap);
    CHECK(w.vertices.front() == u);
    CHECK(w.vertices.back() == v);
    CHECK(w.is_rainbow());
    CHECK(w.is_path());
    CHECK(replays(w, a, b, mm));
  }
  CHECK(found > 0);
}

TEST_CASE("container subsets") {
  // Perfect matching D: S' must be all of S scaled by 1/d with d = 1.
  EdgeSet pm(8, 8);
  for (Id i = 0; i < 8; ++i) pm.add({i, i, i});
  std::vector<Id> s{0, 1, 2, 3, 4, 5, 6, 7};
  const ContainerResult a = container_subset(pm, Side::X, s, 1, 1);
  CHECK(a.subset.size() <= s.size());
  CHECK(a.neighborhood >= 2);

  // A single K_{d,d} block: one vertex suffices.
  const Id deg = 4;
  EdgeSet block(deg, deg);
  for (Id x = 0; x < deg; ++x)
    for (Id y = 0; y < deg; ++y) block.add({x, y, (x + y) % deg});
  std::vector<Id> left{0, 1, 2, 3};
  CHECK_THROWS_AS(container_subset(block, Side::X, std::vector<Id>{0}, 1, deg), PreconditionViolated);
  EdgeSet blocks(2 * deg, 2 * deg);
  for (Id x = 0; x < 2 * deg; ++x)
    for (Id j = 0; j < deg; ++j) blocks.add({x, x / deg * deg + j, x / deg * deg + (x % deg + j) % deg});
  std::vector<Id> both{0, 1, 2, 3, 4, 5, 6, 7};
  const ContainerResult b = container_subset(blocks, Side::X, both, 1, deg);
  CHECK(b.subset.size() <= 2);
  CHECK(b.neighborhood >= 2);

  // Degree below kappa d is refused.
  EdgeSet sparse(8, 8);
  sparse.add({0, 0, 0});
  CHECK_THROWS_AS(container_subset(sparse, Side::X, both, 1, 2), PreconditionViolated);

  // Random 8-regular D at n = 256.
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const Id n = 256, d = 8;
    EdgeSet reg(n, n);
    std::vector<Id> p(n);
    for (Id i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    rng.shuffle(p);
    for (Id k = 0; k < d; ++k)
      for (Id x = 0; x < n; ++x) reg.add({x, p[static_cast<std::size_t>((x + k) % n)], k});
    std::vector<Id> pick(p.begin(), p.begin() + 16 + static_cast<long>(rng.below(200)));
    std::sort(pick.begin(), pick.end());
    const ContainerResult c = container_subset(reg, Side::X, pick, 1, d);
    std::set<Id> nb;
    for (Id v : c.subset)
      for (const Edge& e : reg.at(Side::X, v)) nb.insert(e.y);
    CHECK(std::includes(pick.begin(), pick.end(), c.subset.begin(), c.subset.end()));
    CHECK(static_cast<double>(c.subset.size()) <= static_cast<double>(pick.size()) / d);
    CHECK(static_cast<double>(nb.size()) >= static_cast<double>(pick.size()) / 4);
  }
}

TEST_CASE("expander probe") {
  // D = all colours with a perfect M: one vertex already reaches everything.
  const Id n = 32;
  const ColoredBipartiteGraph g = latin_to_graph(cayley_cyclic(n));
  std::vector<Id> all(n);
  for (Id i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const EdgeSet d = color_subgraph(g, all);
  RainbowMatching m;
  for (Id i = 0; i < n; ++i) m.add({i, (i + 5) % n, i});
  ExpanderParams p;
  p.d = n;
  p.A = 1;
  p.eps = 0.2;
  Rng rng(3);
  CHECK(expander_probe(d, m, p, 10, rng).all_pass());
  const ProbeReport none = expander_probe(d, RainbowMatching{}, p, 4, rng);
  CHECK(none.passed == 0);
  p.A = 64;
  CHECK_THROWS_AS(expander_probe(d, m, p, 1, rng), PreconditionViolated);
}
