#include "rainbow/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rainbow {

int path_cap(double n, double d, double A) {
  if (n < 2) return 1;
  const int clamp = 4 * static_cast<int>(std::ceil(std::log2(n)));
  const double base = d / (4 * A);
  if (!(base > 1)) return clamp;
  const double raw = 8 * std::ceil(std::log(n) / std::log(base));
  return static_cast<int>(std::min<double>(raw, clamp));
}

bool AlternatingWalk::is_rainbow() const {
  std::vector<Id> cs;
  for (const Edge& e : edges) cs.push_back(e.c);
  std::sort(cs.begin(), cs.end());
  return std::adjacent_find(cs.begin(), cs.end()) == cs.end();
}

bool AlternatingWalk::is_path() const {
  std::vector<Vertex> vs(vertices);
  if (closed()) vs.pop_back();
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

std::vector<Edge> AlternatingWalk::tagged(Tag t) const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (tags[i] == t) out.push_back(edges[i]);
  return out;
}

namespace {

// Dense index over X ∪ Y.
struct VertexIndex {
  Id nx, ny;
  std::size_t size() const { return static_cast<std::size_t>(nx) + static_cast<std::size_t>(ny); }
  std::size_t operator()(Vertex v) const {
    return v.side == Side::X ? static_cast<std::size_t>(v.id) : static_cast<std::size_t>(nx) + v.id;
  }
};

VertexIndex index_for(const EdgeSet& d, const RainbowMatching& m) {
  Id nx = d.nx(), ny = d.ny();
  for (const Edge& e : m.raw()) {
    nx = std::max(nx, e.x + 1);
    ny = std::max(ny, e.y + 1);
  }
  return {nx, ny};
}

Id colour_bound(const EdgeSet& d, const RainbowMatching& m, std::span<const ForbiddenSets> forbidden) {
  Id top = 0;
  for (Id x = 0; x < d.nx(); ++x)
    for (const Edge& e : d.at(Side::X, x)) top = std::max(top, e.c + 1);
  for (const Edge& e : m.raw()) top = std::max(top, e.c + 1);
  for (const auto& f : forbidden)
    for (Id c : f.colours) top = std::max(top, c + 1);
  return top;
}

Vertex across(const Edge& e, Side from) { return {opposite(from), e.end(opposite(from))}; }

// Marks for one ForbiddenSets instance.
struct ForbiddenMarks {
  std::vector<char> vertex, colour;
  ForbiddenMarks(const VertexIndex& vi, Id colours) : vertex(vi.size(), 0), colour(static_cast<std::size_t>(colours), 0) {}
  void set(const VertexIndex& vi, const ForbiddenSets& f, char value) {
    for (Vertex v : f.vertices)
      if (v.id >= 0 && v.id < (v.side == Side::X ? vi.nx : vi.ny)) vertex[vi(v)] = value;
    for (Id c : f.colours)
      if (c >= 0 && static_cast<std::size_t>(c) < colour.size()) colour[static_cast<std::size_t>(c)] = value;
  }
};

}  // namespace

std::vector<Vertex> alt_neighborhood(const EdgeSet& d, const RainbowMatching& m, std::span<const Vertex> sources,
                                     int t) {
  const VertexIndex vi = index_for(d, m);
  std::vector<char> in_layer(vi.size(), 0);
  std::vector<Vertex> layer;
  for (Vertex s : sources)
    if (!in_layer[vi(s)]) {
      in_layer[vi(s)] = 1;
      layer.push_back(s);
    }
  for (int step = 1; step <= t; ++step) {
    std::vector<Vertex> next;
    std::vector<char> seen(vi.size(), 0);
    auto push = [&](Vertex w) {
      if (!seen[vi(w)]) {
        seen[vi(w)] = 1;
        next.push_back(w);
      }
    };
    for (Vertex v : layer) {
      if (step % 2 == 1) {
        if (v.id < (v.side == Side::X ? d.nx() : d.ny()))
          for (const Edge& e : d.at(v.side, v.id)) push(across(e, v.side));
      } else if (auto e = m.at(v.side, v.id)) {
        push(across(*e, v.side));
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

RainbowNeighborhood rainbow_alt_neighborhood(const EdgeSet& d, const RainbowMatching& m,
                                             std::span<const Vertex> sources, int t,
                                             std::span<const ForbiddenSets> forbidden, long long node_budget,
                                             double A) {
  RainbowNeighborhood out;
  if (!forbidden.empty() && forbidden.size() != 1 && forbidden.size() != sources.size())
    throw InvalidInput("bad-forbidden", "forbidden sets must be empty, shared, or one per source");
  const VertexIndex vi = index_for(d, m);
  const Id colours = colour_bound(d, m, forbidden);
  if (A > 0) {
    const double cap = static_cast<double>(d.max_degree()) / (A * A);
    for (std::size_t i = 0; i < forbidden.size(); ++i)
      if (forbidden[i].vertices.size() > cap || forbidden[i].colours.size() > cap)
        out.warnings.push_back("forbidden set " + std::to_string(i) + " exceeds d/A^2");
  }
  std::vector<char> on_path(vi.size(), 0), used(static_cast<std::size_t>(colours), 0), reached(vi.size(), 0);
  ForbiddenMarks marks(vi, colours);
  long long nodes = 0;

  auto dfs = [&](auto&& self, Vertex v, int depth) -> void {
    if (++nodes > node_budget) {
      out.truncated = true;
      return;
    }
    if (depth == t) {
      reached[vi(v)] = 1;
      return;
    }
    auto visit = [&](const Edge& e) {
      Vertex w = across(e, v.side);
      const std::size_t wi = vi(w);
      if (on_path[wi] || marks.vertex[wi] || used[static_cast<std::size_t>(e.c)] ||
          marks.colour[static_cast<std::size_t>(e.c)])
        return;
      on_path[wi] = 1;
      used[static_cast<std::size_t>(e.c)] = 1;
      self(self, w, depth + 1);
      on_path[wi] = 0;
      used[static_cast<std::size_t>(e.c)] = 0;
    };
    if (depth % 2 == 0) {
      if (v.id < (v.side == Side::X ? d.nx() : d.ny()))
        for (const Edge& e : d.at(v.side, v.id)) {
          visit(e);
          if (out.truncated) return;
        }
    } else if (auto e = m.at(v.side, v.id)) {
      visit(*e);
    }
  };

  for (std::size_t i = 0; i < sources.size() && !out.truncated; ++i) {
    const ForbiddenSets* f = forbidden.empty() ? nullptr : &forbidden[forbidden.size() == 1 ? 0 : i];
    if (f) marks.set(vi, *f, 1);
    Vertex s = sources[i];
    if (!marks.vertex[vi(s)]) {
      on_path[vi(s)] = 1;
      dfs(dfs, s, 0);
      on_path[vi(s)] = 0;
    }
    if (f) marks.set(vi, *f, 0);
  }
  for (Id x = 0; x < vi.nx; ++x)
    if (reached[vi({Side::X, x})]) out.vertices.push_back({Side::X, x});
  for (Id y = 0; y < vi.ny; ++y)
    if (reached[vi({Side::Y, y})]) out.vertices.push_back({Side::Y, y});
  return out;
}

namespace {

// Search tree grown from one endpoint; every vertex enters at most once.
struct SearchTree {
  struct Node {
    Vertex v;
    int parent;
    Edge e;
    Tag tag;
    int depth;
  };
  std::vector<Node> nodes;
  std::vector<int> where;
  std::vector<long long> frontier;

  // Path root -> node as (vertices, edges, tags).
  void path_to(int idx, AlternatingWalk& w) const {
    std::vector<int> chain;
    for (int k = idx; k != -1; k = nodes[static_cast<std::size_t>(k)].parent) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Node& nd = nodes[static_cast<std::size_t>(chain[i])];
      w.vertices.push_back(nd.v);
      if (i > 0) {
        w.edges.push_back(nd.e);
        w.tags.push_back(nd.tag);
      }
    }
  }
};

void grow(SearchTree& tree, Vertex root, const EdgeSet& d, const RainbowMatching& m, int max_depth,
          const VertexIndex& vi, const ForbiddenMarks& marks, std::vector<int>& colour_stamp) {
  tree.where.assign(vi.size(), -1);
  tree.nodes.push_back({root, -1, Edge{}, Tag::D, 0});
  tree.where[vi(root)] = 0;
  std::vector<int> layer{0};
  int stamp = 0;
  for (int depth = 1; depth <= max_depth && !layer.empty(); ++depth) {
    std::vector<int> next;
    for (int idx : layer) {
      ++stamp;
      for (int k = idx; k > 0; k = tree.nodes[static_cast<std::size_t>(k)].parent)
        colour_stamp[static_cast<std::size_t>(tree.nodes[static_cast<std::size_t>(k)].e.c)] = stamp;
      const Vertex v = tree.nodes[static_cast<std::size_t>(idx)].v;
      auto offer = [&](const Edge& e, Tag tag) {
        Vertex w = across(e, v.side);
        const std::size_t wi = vi(w);
        if (tree.where[wi] != -1 || marks.vertex[wi] || marks.colour[static_cast<std::size_t>(e.c)] ||
            colour_stamp[static_cast<std::size_t>(e.c)] == stamp)
          return;
        tree.where[wi] = static_cast<int>(tree.nodes.size());
        next.push_back(static_cast<int>(tree.nodes.size()));
        tree.nodes.push_back({w, idx, e, tag, depth});
      };
      if (depth % 2 == 1) {
        if (v.id < (v.side == Side::X ? d.nx() : d.ny()))
          for (const Edge& e : d.at(v.side, v.id)) offer(e, Tag::D);
      } else if (auto e = m.at(v.side, v.id)) {
        offer(*e, Tag::M);
      }
    }
    tree.frontier.push_back(static_cast<long long>(next.size()));
    layer = std::move(next);
  }
}

// Removes loops from a walk; in a bipartite graph every loop has even length,
// so alternation of the tags survives.
AlternatingWalk shortcut(const AlternatingWalk& w, const VertexIndex& vi) {
  AlternatingWalk out;
  std::vector<int> pos(vi.size(), -1);
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    const Vertex v = w.vertices[i];
    const int seen = pos[vi(v)];
    if (seen >= 0) {
      for (std::size_t k = static_cast<std::size_t>(seen) + 1; k < out.vertices.size(); ++k) pos[vi(out.vertices[k])] = -1;
      out.vertices.resize(static_cast<std::size_t>(seen) + 1);
      out.edges.resize(static_cast<std::size_t>(seen));
      out.tags.resize(static_cast<std::size_t>(seen));
    } else {
      if (i > 0) {
        out.edges.push_back(w.edges[i - 1]);
        out.tags.push_back(w.tags[i - 1]);
      }
      pos[vi(v)] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(v);
    }
  }
  return out;
}

}  // namespace

PathSearchResult find_alt_rainbow_path(const EdgeSet& d_u, const EdgeSet& d_v, const RainbowMatching& m, Vertex u,
                                       Vertex v, int cap, const ForbiddenSets& forbidden) {
  if (u.side == v.side) throw InvalidInput("bad-endpoints", "path endpoints must lie on opposite sides");
  PathSearchResult res;
  VertexIndex vi = index_for(d_u, m);
  vi.nx = std::max({vi.nx, d_v.nx(), u.side == Side::X ? u.id + 1 : v.id + 1});
  vi.ny = std::max({vi.ny, d_v.ny(), u.side == Side::Y ? u.id + 1 : v.id + 1});
  const ForbiddenSets both[1] = {forbidden};
  const Id colours = std::max(colour_bound(d_u, m, both), colour_bound(d_v, m, {}));
  ForbiddenMarks marks(vi, colours);
  marks.set(vi, forbidden, 1);
  if (marks.vertex[vi(u)] || marks.vertex[vi(v)] || cap < 1) return res;

  // Length one: a single D edge u-v.
  for (const EdgeSet* d : {&d_u, &d_v}) {
    if (u.id >= (u.side == Side::X ? d->nx() : d->ny())) continue;
    for (const Edge& e : d->at(u.side, u.id))
      if (across(e, u.side) == v && !marks.colour[static_cast<std::size_t>(e.c)]) {
        AlternatingWalk w;
        w.vertices = {u, v};
        w.edges = {e};
        w.tags = {Tag::D};
        res.path = w;
        return res;
      }
  }
  if (cap < 3) return res;

  std::vector<int> stamp(static_cast<std::size_t>(colours), 0);
  SearchTree tu, tv;
  grow(tu, u, d_u, m, cap - 2, vi, marks, stamp);
  std::fill(stamp.begin(), stamp.end(), 0);
  grow(tv, v, d_v, m, cap - 2, vi, marks, stamp);
  res.frontier_from_u = tu.frontier;
  res.frontier_from_v = tv.frontier;

  struct Join {
    int length;
    Id key;
    int a, b;
    Edge e;
  };
  std::vector<Join> joins;
  for (std::size_t i = 1; i < tu.nodes.size(); ++i) {
    const auto& na = tu.nodes[i];
    if (na.depth % 2 == 0) continue;  // need arrival by a D edge
    auto e = m.at(na.v.side, na.v.id);
    if (!e || marks.colour[static_cast<std::size_t>(e->c)]) continue;
    const Vertex w = across(*e, na.v.side);
    const int jb = tv.where[vi(w)];
    if (jb <= 0) continue;
    const auto& nb = tv.nodes[static_cast<std::size_t>(jb)];
    if (nb.depth % 2 == 0) continue;
    const int len = na.depth + 1 + nb.depth;
    if (len <= cap) joins.push_back({len, na.v.id, static_cast<int>(i), jb, *e});
  }
  std::sort(joins.begin(), joins.end(), [](const Join& a, const Join& b) {
    return a.length != b.length ? a.length < b.length : a.key < b.key;
  });
  for (const Join& j : joins) {
    AlternatingWalk walk;
    tu.path_to(j.a, walk);
    AlternatingWalk back;
    tv.path_to(j.b, back);
    walk.edges.push_back(j.e);
    walk.tags.push_back(Tag::M);
    for (std::size_t k = back.vertices.size(); k-- > 0;) {
      walk.vertices.push_back(back.vertices[k]);
      if (k > 0) {
        walk.edges.push_back(back.edges[k - 1]);
        walk.tags.push_back(back.tags[k - 1]);
      }
    }
    AlternatingWalk path = shortcut(walk, vi);
    if (path.vertices.front() == u && path.vertices.back() == v && path.is_rainbow()) {
      res.path = std::move(path);
      return res;
    }
  }
  return res;
}

ContainerResult container_subset(const EdgeSet& d_graph, Side side, std::span<const Id> s, double kappa, double d) {
  if (d_graph.max_degree() > d + 1e-9)
    throw PreconditionViolated("max degree of D exceeds d");
  if (static_cast<double>(s.size()) < 2 * d)
    throw PreconditionViolated("S must have at least 2d vertices");
  for (Id v : s)
    if (d_graph.at(side, v).size() + 1e-9 < kappa * d)
      throw PreconditionViolated("vertex " + std::to_string(v) + " has degree below kappa d");
  std::vector<Id> order(s.begin(), s.end());
  std::sort(order.begin(), order.end());
  const auto star = static_cast<std::size_t>(std::max(1.0, std::ceil(kappa * d / 2 - 1e-12)));
  const Side far = opposite(side);
  std::vector<char> leaf(static_cast<std::size_t>(far == Side::X ? d_graph.nx() : d_graph.ny()), 0);
  ContainerResult out;
  for (Id v : order) {
    std::vector<Id> free;
    for (const Edge& e : d_graph.at(side, v))
      if (!leaf[static_cast<std::size_t>(e.end(far))]) free.push_back(e.end(far));
    if (free.size() < star) continue;
    std::sort(free.begin(), free.end());
    for (std::size_t k = 0; k < star; ++k) leaf[static_cast<std::size_t>(free[k])] = 1;
    out.centers.push_back(v);
  }
  const double size = static_cast<double>(order.size());
  if (static_cast<double>(out.centers.size()) >= size / (2 * d)) {
    const auto take = static_cast<std::size_t>(std::ceil(size / (2 * d) - 1e-12));
    out.subset.assign(out.centers.begin(), out.centers.begin() + static_cast<long>(std::max<std::size_t>(take, 1)));
    out.branch = 1;
  } else {
    out.subset = out.centers;
    out.branch = 2;
  }
  std::vector<char> hit(leaf.size(), 0);
  for (Id v : out.subset)
    for (const Edge& e : d_graph.at(side, v)) hit[static_cast<std::size_t>(e.end(far))] = 1;
  out.neighborhood = std::count(hit.begin(), hit.end(), 1);
  if (static_cast<double>(out.subset.size()) > size / d + 1e-9 ||
      static_cast<double>(out.neighborhood) + 1e-9 < kappa * size / 4)
    throw std::logic_error("container postcondition failed");
  return out;
}

namespace {

long long reach_of(const EdgeSet& d, const RainbowMatching& m, Side side, const std::vector<Id>& subset, int t) {
  std::vector<Vertex> src;
  for (Id v : subset) src.push_back({side, v});
  return static_cast<long long>(alt_neighborhood(d, m, src, t).size());
}

void finish(ProbeReport& r) {
  r.passed = 0;
  r.min_fraction = r.trials.empty() ? 0 : 1e300;
  double sum = 0;
  for (const auto& tr : r.trials) {
    r.passed += tr.pass;
    r.min_fraction = std::min(r.min_fraction, tr.fraction);
    sum += tr.fraction;
  }
  r.mean_fraction = r.trials.empty() ? 0 : sum / static_cast<double>(r.trials.size());
}

}  // namespace

ProbeReport expander_probe(const EdgeSet& d, const RainbowMatching& m, const ExpanderParams& params, int trials,
                           Rng& rng, int t) {
  ProbeReport rep;
  rep.params = params;
  rep.t = t;
  const double n = params.n > 0 ? params.n : d.nx();
  rep.params.n = n;
  rep.s_size = static_cast<long long>(std::ceil(params.A * n / params.d - 1e-9));
  rep.target_size = static_cast<long long>(std::ceil(params.A * n / (params.d * params.d) - 1e-9));
  for (int k = 0; k < trials; ++k) {
    ProbeTrial tr;
    tr.side = k % 2 == 0 ? Side::X : Side::Y;
    const Id side_n = tr.side == Side::X ? d.nx() : d.ny();
    if (rep.s_size > side_n || rep.s_size < 1)
      throw PreconditionViolated("infeasible", "cannot sample |S| = " + std::to_string(rep.s_size) + " from a side of " +
                                                   std::to_string(side_n));
    std::vector<Id> pool(static_cast<std::size_t>(side_n));
    for (Id i = 0; i < side_n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (long long i = 0; i < rep.s_size; ++i) {
      auto j = static_cast<std::size_t>(i) + rng.below(pool.size() - static_cast<std::size_t>(i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    tr.s.assign(pool.begin(), pool.begin() + rep.s_size);
    std::sort(tr.s.begin(), tr.s.end());

    // Container step on the vertices of S that have D-neighbours.
    std::vector<Id> ok;
    std::size_t low = static_cast<std::size_t>(-1);
    for (Id v : tr.s)
      if (!d.at(tr.side, v).empty()) {
        ok.push_back(v);
        low = std::min(low, d.at(tr.side, v).size());
      }
    std::vector<Id> subset;
    if (!ok.empty() && static_cast<double>(ok.size()) >= 2 * params.d && d.max_degree() <= params.d) {
      subset = container_subset(d, tr.side, ok, static_cast<double>(low) / params.d, params.d).subset;
      if (static_cast<long long>(subset.size()) > rep.target_size) subset.resize(static_cast<std::size_t>(rep.target_size));
    }
    tr.container_size = static_cast<long long>(subset.size());
    tr.reach_unpadded = reach_of(d, m, tr.side, subset, t);

    // Greedy padding from S by marginal gain in the t-th neighbourhood.
    std::vector<std::vector<Vertex>> single(tr.s.size());
    for (std::size_t i = 0; i < tr.s.size(); ++i) {
      Vertex src{tr.side, tr.s[i]};
      single[i] = alt_neighborhood(d, m, std::span<const Vertex>(&src, 1), t);
    }
    const Id nx = std::max(d.nx(), static_cast<Id>(1)), ny = d.ny();
    std::vector<char> covered(static_cast<std::size_t>(nx) + static_cast<std::size_t>(ny), 0);
    auto key = [&](Vertex v) { return v.side == Side::X ? static_cast<std::size_t>(v.id) : static_cast<std::size_t>(nx) + v.id; };
    std::vector<char> chosen(tr.s.size(), 0);
    for (Id v : subset) {
      auto i = static_cast<std::size_t>(std::lower_bound(tr.s.begin(), tr.s.end(), v) - tr.s.begin());
      chosen[i] = 1;
      for (Vertex w : single[i]) covered[key(w)] = 1;
    }
    while (static_cast<long long>(subset.size()) < rep.target_size) {
      long long best = -1;
      std::size_t pick = 0;
      for (std::size_t i = 0; i < tr.s.size(); ++i) {
        if (chosen[i]) continue;
        long long gain = 0;
        for (Vertex w : single[i]) gain += !covered[key(w)];
        if (gain > best) {
          best = gain;
          pick = i;
        }
      }
      if (best < 0) break;
      chosen[pick] = 1;
      subset.push_back(tr.s[pick]);
      for (Vertex w : single[pick]) covered[key(w)] = 1;
    }
    std::sort(subset.begin(), subset.end());
    tr.subset = subset;
    tr.reach = reach_of(d, m, tr.side, subset, t);
    tr.fraction = static_cast<double>(tr.reach) / n;
    tr.pass = tr.fraction >= 1 - params.eps - 1e-12;
    rep.trials.push_back(std::move(tr));
  }
  finish(rep);
  return rep;
}

ProbeReport remeasure(const EdgeSet& d, const RainbowMatching& m, const ProbeReport& earlier, double eps) {
  ProbeReport rep = earlier;
  rep.params.eps = eps;
  for (auto& tr : rep.trials) {
    tr.reach = reach_of(d, m, tr.side, tr.subset, rep.t);
    tr.fraction = static_cast<double>(tr.reach) / rep.params.n;
    tr.pass = tr.fraction >= 1 - eps - 1e-12;
  }
  finish(rep);
  return rep;
}

}  // namespace rainbow
