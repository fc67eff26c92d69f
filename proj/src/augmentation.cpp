#include "rainbow/augmentation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "rainbow/typicality.hpp"

namespace rainbow {

namespace {

using Clock = std::chrono::steady_clock;

std::size_t at(Id i) { return static_cast<std::size_t>(i); }

bool contains_edge(const std::vector<Edge>& v, const Edge& e) { return std::find(v.begin(), v.end(), e) != v.end(); }

// Pool subgraphs and per-part matchings for one pool assignment.
struct PartView {
  std::array<EdgeSet, 6> pool;
  std::array<RainbowMatching, 3> m;
  std::vector<char> in_pool;  // per colour
};

PartView make_view(const ColoredBipartiteGraph& h, const GuideStructure& g, const RainbowMatching& m,
                   const Pools& pools) {
  PartView v;
  v.in_pool.assign(at(h.num_colors()), 0);
  for (int p = 0; p < 3; ++p) {
    std::vector<char> xm(at(h.nx()), 0), ym(at(h.ny()), 0);
    for (Id x = 0; x < h.nx(); ++x) xm[at(x)] = g.x_part[at(x)] == p;
    for (Id y = 0; y < h.ny(); ++y) ym[at(y)] = g.y_part[at(y)] == p;
    for (int k = 0; k < 2; ++k) {
      const auto& cs = pools[static_cast<std::size_t>(2 * p + k)];
      for (Id c : cs) v.in_pool[at(c)] = 1;
      v.pool[static_cast<std::size_t>(2 * p + k)] = color_subgraph(h, cs, xm, ym);
    }
  }
  for (const Edge& e : m.raw()) {
    const int p = g.x_part[at(e.x)];
    if (p >= 0 && g.y_part[at(e.y)] == p) v.m[static_cast<std::size_t>(p)].add(e);
  }
  return v;
}

struct Connector {
  Edge edge;              // x0-y1' or x1'-y0
  Edge mate;              // M edge at the matched end (x1-y1' or x1'-y1)
  std::optional<Edge> holder;  // M edge currently using the connector's colour
  int holder_part = -1;
};

AlternatingWalk close_cycle(const AlternatingWalk& path, const Edge& closing) {
  AlternatingWalk w = path;
  w.edges.push_back(closing);
  w.tags.push_back(Tag::M);
  w.vertices.push_back(w.vertices.front());
  return w;
}

void append_step(AlternatingWalk& w, const Edge& e, Tag t) {
  const Vertex last = w.vertices.back();
  w.edges.push_back(e);
  w.tags.push_back(t);
  w.vertices.push_back(last.side == Side::X ? Vertex{Side::Y, e.y} : Vertex{Side::X, e.x});
}

void collect(const AlternatingWalk& w, std::vector<Edge>& removed, std::vector<Edge>& added) {
  for (std::size_t i = 0; i < w.edges.size(); ++i) (w.tags[i] == Tag::M ? removed : added).push_back(w.edges[i]);
}

PlanResult plan_with_view(const ColoredBipartiteGraph& h, const GuideStructure& g, const RainbowMatching& m, Id x0,
                          Id y0, const PartView& view, const PlanOptions& opt, JunkMemo* junk) {
  PlanResult res;
  if (m.covers(Side::X, x0) || m.covers(Side::Y, y0))
    throw InvalidInput("covered-endpoint", "switch plans start from two uncovered vertices");

  const Id direct = h.color_between(x0, y0);
  if (direct != kNone && !m.uses_color(direct)) {
    SwitchPlan plan;
    plan.shape = "direct";
    plan.x0 = x0;
    plan.y0 = y0;
    plan.augmenting.vertices = {{Side::X, x0}};
    append_step(plan.augmenting, {x0, y0, direct}, Tag::D);
    plan.added = plan.augmenting.edges;
    plan.p1 = 1;
    res.plan = std::move(plan);
    return res;
  }

  const int cap = opt.cap > 0 ? opt.cap : path_cap(std::max(h.nx(), h.ny()), 8, 1);
  int stage = 0;  // deepest failure: 1 cycle c2, 2 cycle c3, 3 main path
  int main_searches = 0;
  std::map<Edge, std::optional<AlternatingWalk>> cycles;

  auto cycle_for = [&](const Edge& holder, int part, Id avoid) -> std::optional<AlternatingWalk> {
    auto it = cycles.find(holder);
    if (it != cycles.end() && (!it->second || std::none_of(it->second->edges.begin(), it->second->edges.end(),
                                                           [&](const Edge& e) { return e.c == avoid; })))
      return it->second;
    if (junk && contains_edge(junk->failed_cycles, holder)) return std::nullopt;
    RainbowMatching rest = view.m[static_cast<std::size_t>(part)];
    rest.remove(holder);
    ForbiddenSets fb;
    fb.colours = {holder.c, avoid};
    fb.vertices = {{Side::X, x0}, {Side::Y, y0}};
    auto found = find_alt_rainbow_path(view.pool[static_cast<std::size_t>(2 * part)],
                                       view.pool[static_cast<std::size_t>(2 * part + 1)], rest,
                                       {Side::X, holder.x}, {Side::Y, holder.y}, cap, fb);
    std::optional<AlternatingWalk> out;
    if (found.path) out = close_cycle(*found.path, holder);
    if (!out && junk) junk->failed_cycles.push_back(holder);
    cycles[holder] = out;
    return out;
  };

  for (int a : opt.part_order) {
    auto connectors = [&](Side free_side) {
      std::vector<Connector> out;
      const Id v0 = free_side == Side::X ? x0 : y0;
      for (std::int32_t idx : h.incident(free_side, v0)) {
        if (static_cast<int>(out.size()) >= opt.connector_limit) break;
        const Edge& e = h.edge(idx);
        const Side far = opposite(free_side);
        const Id w = e.end(far);
        if ((far == Side::X ? g.x_part : g.y_part)[at(w)] != a) continue;
        const auto mate = m.at(far, w);
        if (!mate) continue;
        const Id other = mate->end(free_side);
        if ((free_side == Side::X ? g.x_part : g.y_part)[at(other)] != a) continue;
        if (view.in_pool[at(e.c)]) continue;
        Connector c{e, *mate, std::nullopt, -1};
        if (m.uses_color(e.c)) {
          const Edge holder = *m.with_color(e.c);
          const int p = g.x_part[at(holder.x)];
          if (p < 0 || p == a || g.y_part[at(holder.y)] != p) continue;
          if (junk && contains_edge(junk->failed_cycles, holder)) continue;
          c.holder = holder;
          c.holder_part = p;
        }
        out.push_back(c);
      }
      return out;
    };
    const auto xs = connectors(Side::X);
    const auto ys = connectors(Side::Y);
    for (const Connector& cx : xs) {
      for (const Connector& cy : ys) {
        if (cx.edge.c == cy.edge.c || cx.mate == cy.mate) continue;
        if (cx.holder && cy.holder && cx.holder_part == cy.holder_part) continue;
        std::optional<AlternatingWalk> c2, c3;
        if (cx.holder) {
          c2 = cycle_for(*cx.holder, cx.holder_part, cy.edge.c);
          if (!c2) {
            stage = std::max(stage, 1);
            continue;
          }
        }
        if (cy.holder) {
          c3 = cycle_for(*cy.holder, cy.holder_part, cx.edge.c);
          if (!c3) {
            stage = std::max(stage, 2);
            continue;
          }
        }
        const Id x1 = cx.mate.x, y1 = cy.mate.y;
        if (junk && std::find(junk->failed_paths.begin(), junk->failed_paths.end(), std::pair{x1, y1}) !=
                        junk->failed_paths.end()) {
          stage = 3;
          continue;
        }
        if (main_searches >= opt.main_path_limit) {
          stage = 3;
          break;
        }
        ++main_searches;
        ForbiddenSets fb;
        fb.vertices = {{Side::X, x0}, {Side::Y, y0}, {Side::Y, cx.mate.y}, {Side::X, cy.mate.x}};
        fb.colours = {cx.edge.c, cy.edge.c};
        auto p1 = find_alt_rainbow_path(view.pool[static_cast<std::size_t>(2 * a)],
                                        view.pool[static_cast<std::size_t>(2 * a + 1)],
                                        view.m[static_cast<std::size_t>(a)], {Side::X, x1}, {Side::Y, y1}, cap, fb);
        if (!p1.path) {
          stage = 3;
          if (junk) junk->failed_paths.emplace_back(x1, y1);
          continue;
        }
        SwitchPlan plan;
        plan.x0 = x0;
        plan.y0 = y0;
        plan.main_part = a;
        AlternatingWalk& w = plan.augmenting;
        w.vertices = {{Side::X, x0}};
        append_step(w, cx.edge, Tag::D);
        append_step(w, cx.mate, Tag::M);
        for (std::size_t i = 0; i < p1.path->edges.size(); ++i) append_step(w, p1.path->edges[i], p1.path->tags[i]);
        append_step(w, cy.mate, Tag::M);
        append_step(w, cy.edge, Tag::D);
        plan.cycle_c2 = c2;
        plan.cycle_c3 = c3;
        plan.p1 = p1.path->length();
        plan.p2 = c2 ? c2->length() - 1 : 0;
        plan.p3 = c3 ? c3->length() - 1 : 0;
        collect(w, plan.removed, plan.added);
        if (c2) collect(*c2, plan.removed, plan.added);
        if (c3) collect(*c3, plan.removed, plan.added);
        const int cycles_used = (c2 ? 1 : 0) + (c3 ? 1 : 0);
        plan.shape = cycles_used == 0 ? "path" : cycles_used == 1 ? "path+cycle" : "path+2cycles";
        try {
          (void)switch_along(m, plan, &h);
        } catch (const InvalidInput&) {
          stage = 3;
          continue;
        }
        res.plan = std::move(plan);
        return res;
      }
    }
  }
  static constexpr PlanFailure by_stage[] = {PlanFailure::NoConnector, PlanFailure::NoCycleC2, PlanFailure::NoCycleC3,
                                             PlanFailure::NoMainPath};
  res.reason = by_stage[stage];
  return res;
}

// Ids with O(1) insert, erase and membership.
class FreeList {
 public:
  explicit FreeList(Id n) : pos_(at(n), -1) {}
  void insert(Id v) {
    if (pos_[at(v)] >= 0) return;
    pos_[at(v)] = static_cast<Id>(items_.size());
    items_.push_back(v);
  }
  void erase(Id v) {
    const Id p = pos_[at(v)];
    if (p < 0) return;
    const Id last = items_.back();
    items_[at(p)] = last;
    pos_[at(last)] = p;
    items_.pop_back();
    pos_[at(v)] = -1;
  }
  const std::vector<Id>& items() const { return items_; }

 private:
  std::vector<Id> items_;
  std::vector<Id> pos_;
};

enum class Kind : unsigned char { X, Y, C };
struct Element {
  Kind kind;
  Id id;
};

class ChainSearch {
 public:
  ChainSearch(const ColoredBipartiteGraph& h, RainbowMatching& m, long long budget, Rng& rng)
      : h_(h), m_(m), budget_(budget), rng_(rng), fx_(h.nx()), fy_(h.ny()), fc_(h.num_colors()) {
    for (Id x = 0; x < h.nx(); ++x)
      if (!m.covers(Side::X, x)) fx_.insert(x);
    for (Id y = 0; y < h.ny(); ++y)
      if (!m.covers(Side::Y, y)) fy_.insert(y);
    for (Id c = 0; c < h.num_colors(); ++c)
      if (!m.uses_color(c) && h.color_size(c) > 0) fc_.insert(c);
  }

  bool run(int max_moves) {
    if (fx_.items().empty() || fy_.items().empty() || fc_.items().empty()) return false;
    std::vector<Element> roots;
    for (Id x : fx_.items())
      if (h_.degree(Side::X, x) > 0) roots.push_back({Kind::X, x});
    for (Id y : fy_.items())
      if (h_.degree(Side::Y, y) > 0) roots.push_back({Kind::Y, y});
    for (Id c : fc_.items()) roots.push_back({Kind::C, c});
    std::sort(roots.begin(), roots.end(),
              [](const Element& a, const Element& b) { return std::pair(a.kind, a.id) < std::pair(b.kind, b.id); });
    // Exhaustive over short chains, then random chains up to the full depth
    // until the node budget runs out.
    const int exhaustive = std::min(max_moves, 3);
    for (int depth = 1; depth <= exhaustive; ++depth) {
      for (const Element& r : roots) {
        if (dfs({r}, depth)) return true;
        if (nodes_ > budget_) return false;
      }
    }
    if (max_moves <= exhaustive) return false;
    while (nodes_ <= budget_)
      if (walk(roots[static_cast<std::size_t>(rng_.below(roots.size()))], max_moves)) return true;
    return false;
  }

  std::vector<Edge> added, removed;

 private:
  void add(const Edge& e) {
    m_.add(e);
    fx_.erase(e.x);
    fy_.erase(e.y);
    fc_.erase(e.c);
  }
  void drop(const Edge& e) {
    m_.remove(e);
    fx_.insert(e.x);
    fy_.insert(e.y);
    fc_.insert(e.c);
  }

  std::vector<Edge> candidates(const std::vector<Element>& active) const {
    std::vector<Edge> out;
    for (const Element& a : active) {
      switch (a.kind) {
        case Kind::X:
          for (Id y : fy_.items())
            if (Id c = h_.color_between(a.id, y); c != kNone) out.push_back({a.id, y, c});
          for (Id c : fc_.items())
            if (Id y = h_.partner(Side::X, a.id, c); y != kNone) out.push_back({a.id, y, c});
          break;
        case Kind::Y:
          for (Id x : fx_.items())
            if (Id c = h_.color_between(x, a.id); c != kNone) out.push_back({x, a.id, c});
          for (Id c : fc_.items())
            if (Id x = h_.partner(Side::Y, a.id, c); x != kNone) out.push_back({x, a.id, c});
          break;
        case Kind::C:
          for (Id x : fx_.items())
            if (Id y = h_.partner(Side::X, x, a.id); y != kNone) out.push_back({x, y, a.id});
          for (Id y : fy_.items())
            if (Id x = h_.partner(Side::Y, y, a.id); x != kNone) out.push_back({x, y, a.id});
          break;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<Edge> conflict(const Edge& e) const {
    if (auto k = m_.at(Side::X, e.x)) return k;
    if (auto k = m_.at(Side::Y, e.y)) return k;
    return m_.with_color(e.c);
  }

  bool dfs(const std::vector<Element>& active, int moves_left) {
    if (++nodes_ > budget_) return false;
    std::vector<Edge> cands = candidates(active);
    for (const Edge& e : cands) {
      if (m_.can_add(e) && !contains_edge(removed, e)) {
        add(e);
        added.push_back(e);
        return true;
      }
    }
    if (moves_left <= 1) return false;
    rng_.shuffle(cands);
    for (const Edge& e : cands) {
      if (contains_edge(removed, e)) continue;
      const auto k = conflict(e);
      if (!k || contains_edge(added, *k)) continue;
      drop(*k);
      add(e);
      removed.push_back(*k);
      added.push_back(e);
      std::vector<Element> next;
      if (k->x != e.x) next.push_back({Kind::X, k->x});
      if (k->y != e.y) next.push_back({Kind::Y, k->y});
      if (k->c != e.c) next.push_back({Kind::C, k->c});
      if (dfs(next, moves_left - 1)) return true;
      added.pop_back();
      removed.pop_back();
      drop(e);
      add(*k);
      if (nodes_ > budget_) return false;
    }
    return false;
  }

  // One random chain; undone unless it ends in an augmentation.
  bool walk(const Element& root, int max_moves) {
    std::vector<Element> active{root};
    for (int move = 0; move < max_moves; ++move) {
      ++nodes_;
      std::vector<Edge> cands = candidates(active);
      for (const Edge& e : cands) {
        if (m_.can_add(e) && !contains_edge(removed, e)) {
          add(e);
          added.push_back(e);
          return true;
        }
      }
      std::vector<std::pair<Edge, Edge>> moves;
      for (const Edge& e : cands) {
        if (contains_edge(removed, e)) continue;
        const auto k = conflict(e);
        if (k && !contains_edge(added, *k)) moves.emplace_back(e, *k);
      }
      if (moves.empty() || nodes_ > budget_) break;
      const auto [e, k] = moves[static_cast<std::size_t>(rng_.below(moves.size()))];
      drop(k);
      add(e);
      removed.push_back(k);
      added.push_back(e);
      active.clear();
      if (k.x != e.x) active.push_back({Kind::X, k.x});
      if (k.y != e.y) active.push_back({Kind::Y, k.y});
      if (k.c != e.c) active.push_back({Kind::C, k.c});
    }
    while (!added.empty()) {
      drop(added.back());
      add(removed.back());
      added.pop_back();
      removed.pop_back();
    }
    return false;
  }

  const ColoredBipartiteGraph& h_;
  RainbowMatching& m_;
  long long budget_;
 public:
  long long nodes() const { return nodes_; }

 private:
  long long nodes_ = 0;
  Rng& rng_;
  FreeList fx_, fy_, fc_;
};

RainbowMatching greedy_fill(const ColoredBipartiteGraph& g, RainbowMatching m) {
  for (const Edge& e : g.edges())
    if (m.can_add(e)) m.add(e);
  return m;
}

}  // namespace

int default_pool_size(double n) {
  if (n < 16) return 2;
  return std::max(2, static_cast<int>(std::ceil(std::log(n) / std::log(std::log(n)))));
}

int per_iteration_cap(double n, double d) {
  if (n < 2) return 49;
  const double base = std::max(d, 2.0);
  return 49 * std::max(1, static_cast<int>(std::ceil(std::log(n) / std::log(base))));
}

const char* failure_name(PlanFailure f) {
  switch (f) {
    case PlanFailure::None: return "none";
    case PlanFailure::NoConnector: return "no-connector";
    case PlanFailure::NoCycleC2: return "no-cycle-c2";
    case PlanFailure::NoCycleC3: return "no-cycle-c3";
    case PlanFailure::NoMainPath: return "no-main-path";
  }
  return "?";
}

GuideStructure whole_graph_guide(const ColoredBipartiteGraph& h, const std::vector<int>& x_part,
                                 const std::vector<int>& y_part) {
  GuideStructure g;
  g.x_part = x_part;
  g.y_part = y_part;
  g.x_part.resize(at(h.nx()), -1);
  g.y_part.resize(at(h.ny()), -1);
  g.pool_colour.assign(at(h.num_colors()), 1);
  return g;
}

Pools build_pools(const ColoredBipartiteGraph& h, const GuideStructure& g, const RainbowMatching& m, int d, Rng& rng) {
  std::vector<Id> free;
  for (Id c = 0; c < h.num_colors(); ++c)
    if (g.pool_colour[at(c)] && !m.uses_color(c) && h.color_size(c) > 0) free.push_back(c);
  rng.shuffle(free);
  Pools pools;
  const std::size_t total = std::min(free.size(), static_cast<std::size_t>(6) * static_cast<std::size_t>(std::max(d, 0)));
  for (std::size_t i = 0; i < total; ++i) pools[i % 6].push_back(free[i]);
  for (auto& p : pools) std::sort(p.begin(), p.end());
  return pools;
}

RainbowMatching switch_along(const RainbowMatching& m, const SwitchPlan& plan, const ColoredBipartiteGraph* host) {
  RainbowMatching out = m;
  for (const Edge& e : plan.removed) {
    if (!out.contains(e))
      throw InvalidInput("inconsistent-plan", "edge " + to_string(e) + " to remove is not in the matching");
    out.remove(e);
  }
  for (const Edge& e : plan.added) {
    if (host && !host->has_edge(e))
      throw InvalidInput("inconsistent-plan", "edge " + to_string(e) + " is not in the host graph");
    if (!out.can_add(e))
      throw InvalidInput("inconsistent-plan", "adding " + to_string(e) + " breaks the rainbow matching");
    out.add(e);
  }
  return out;
}

RainbowMatching switch_along(const RainbowMatching& m, const AlternatingWalk& walk, const ColoredBipartiteGraph* host) {
  SwitchPlan plan;
  collect(walk, plan.removed, plan.added);
  return switch_along(m, plan, host);
}

PlanResult build_switch_plan(const ColoredBipartiteGraph& h, const GuideStructure& g, const RainbowMatching& m, Id x0,
                             Id y0, const Pools& pools, const PlanOptions& opt, JunkMemo* junk) {
  return plan_with_view(h, g, m, x0, y0, make_view(h, g, m, pools), opt, junk);
}

std::optional<SwitchPlan> fallback_augment(const ColoredBipartiteGraph& h, RainbowMatching& m, int max_moves,
                                           long long node_budget, Rng& rng, int max_edits) {
  auto finish = [&](const RainbowMatching& work) {
    SwitchPlan plan;
    plan.shape = "fallback";
    for (const Edge& e : m.edges())
      if (!work.contains(e)) plan.removed.push_back(e);
    for (const Edge& e : work.edges())
      if (!m.contains(e)) plan.added.push_back(e);
    plan.p1 = plan.added.size();
    m = switch_along(m, plan, &h);
    return plan;
  };
  long long spent = 0;
  {
    RainbowMatching work = m;
    ChainSearch search(h, work, std::max<long long>(node_budget / 4, 1), rng);
    const bool ok = search.run(max_moves);
    spent += search.nodes();
    if (ok) return finish(work);
  }
  // Kicks: drop one or two random edges, then look for that many plus one
  // augmenting chains. Single exchanges only move between matchings of the
  // same size that differ in one edge, and at |M| = n - 1 those classes can
  // be closed; a kick jumps to another class.
  const long long per_search = std::clamp<long long>(node_budget / 50, 1, 20'000);
  while (max_edits > 0 && spent < node_budget && !m.empty()) {
    RainbowMatching work = m;
    const int kicks = std::min<int>(1 + static_cast<int>(rng.below(2)), static_cast<int>(work.size()));
    for (int i = 0; i < kicks; ++i) {
      const auto raw = work.raw();
      work.remove(Edge(raw[static_cast<std::size_t>(rng.below(raw.size()))]));
    }
    bool ok = true;
    for (int i = 0; i <= kicks && ok; ++i) {
      ChainSearch search(h, work, per_search, rng);
      ok = search.run(max_moves);
      spent += search.nodes() + 1;
    }
    if (ok && symmetric_difference(m, work) <= static_cast<std::size_t>(max_edits)) return finish(work);
  }
  return std::nullopt;
}

AugmentResult augment_to_max(const ColoredBipartiteGraph& h, const GuideStructure& g, RainbowMatching m,
                             const AugmentBudget& budget, Rng& rng) {
  if (auto issues = validate_matching(h, m.raw()); !issues.empty())
    throw InvalidInput("invalid-matching", "starting matching: " + issues.front().message);
  if (g.x_part.size() != at(h.nx()) || g.y_part.size() != at(h.ny()) || g.pool_colour.size() != at(h.num_colors()))
    throw InvalidInput("bad-guide", "guide structure does not match the host graph");

  AugmentResult res;
  const double n = std::max(h.nx(), h.ny());
  const int d = budget.d > 0 ? budget.d : default_pool_size(n);
  const int cap_iter = budget.per_iteration_cap > 0 ? budget.per_iteration_cap : per_iteration_cap(n, d);
  const int depth = budget.fallback_depth > 0 ? budget.fallback_depth
                                              : 4 * static_cast<int>(std::ceil(std::log2(std::max(n, 2.0))));
  const int max_moves = std::max(1, std::min(depth, (cap_iter + 1) / 2));
  PlanOptions opt;
  opt.cap = path_cap(n, d, budget.A);
  res.ledger_cap = 0;

  const std::size_t limit = std::min<std::size_t>(
      {static_cast<std::size_t>(h.nx()), static_cast<std::size_t>(h.ny()), h.active_colors().size()});
  const auto deadline = Clock::now() + std::chrono::duration<double>(budget.wall_clock_s);
  const RainbowMatching start = m;
  JunkMemo junk;

  while (res.iterations < budget.max_iterations && m.size() < limit) {
    if (Clock::now() > deadline) {
      res.timed_out = true;
      break;
    }
    auto avail = [&](Side s, Id v) {
      int k = 0;
      for (std::int32_t idx : h.incident(s, v)) k += !m.uses_color(h.edge(idx).c);
      return k;
    };
    std::vector<std::pair<int, Id>> xs, ys;
    for (Id x = 0; x < h.nx(); ++x)
      if (!m.covers(Side::X, x) && h.degree(Side::X, x) > 0) xs.emplace_back(avail(Side::X, x), x);
    for (Id y = 0; y < h.ny(); ++y)
      if (!m.covers(Side::Y, y) && h.degree(Side::Y, y) > 0) ys.emplace_back(avail(Side::Y, y), y);
    if (xs.empty() || ys.empty()) {
      res.exhausted = true;
      break;
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const std::size_t k = 6;
    std::vector<std::tuple<int, Id, Id>> pairs;
    for (std::size_t i = 0; i < std::min(k, xs.size()); ++i)
      for (std::size_t j = 0; j < std::min(k, ys.size()); ++j)
        pairs.emplace_back(xs[i].first + ys[j].first, xs[i].second, ys[j].second);
    std::sort(pairs.begin(), pairs.end());
    if (pairs.size() > static_cast<std::size_t>(budget.plan_attempts)) pairs.resize(static_cast<std::size_t>(budget.plan_attempts));

    std::optional<SwitchPlan> chosen;
    for (int rot = 0; rot < budget.rotations && !chosen; ++rot) {
      const Pools pools = build_pools(h, g, m, d << std::min(rot, 4), rng);
      const PartView view = make_view(h, g, m, pools);
      const int first = static_cast<int>(rng.below(3));
      opt.part_order = {first, (first + 1) % 3, (first + 2) % 3};
      for (const auto& [score, x0, y0] : pairs) {
        PlanResult r = plan_with_view(h, g, m, x0, y0, view, opt, &junk);
        if (r.plan) {
          const std::size_t edits = r.plan->removed.size() + r.plan->added.size();
          if (edits <= static_cast<std::size_t>(cap_iter)) {
            chosen = std::move(r.plan);
            break;
          }
          ++res.failures["over-cap"];
        } else {
          ++res.failures[failure_name(r.reason)];
        }
      }
    }
    if (chosen) {
      m = switch_along(m, *chosen, &h);
    } else {
      chosen = fallback_augment(h, m, max_moves, budget.fallback_nodes, rng, cap_iter);
      if (!chosen) {
        res.exhausted = true;
        break;
      }
    }
    junk.clear();
    ++res.iterations;
    ++res.shapes[chosen->shape];
    res.ledger = symmetric_difference(start, m);
    res.ledger_cap = static_cast<std::size_t>(res.iterations) * static_cast<std::size_t>(cap_iter);
    if (res.ledger > res.ledger_cap) res.ledger_ok = false;
    res.trace.push_back({res.iterations, chosen->shape, chosen->p1, chosen->p2, chosen->p3, res.ledger, m.size()});
  }
  res.matching = std::move(m);
  return res;
}

ExchangeResult exchange_matching(const ColoredBipartiteGraph& g, RainbowMatching start) {
  ExchangeResult res;
  RainbowMatching m = greedy_fill(g, std::move(start));
  for (;;) {
    bool changed = false;
    for (const Edge& ab : m.edges()) {
      std::vector<Edge> at_a, at_b;
      for (std::int32_t idx : g.incident(Side::X, ab.x)) {
        const Edge& e = g.edge(idx);
        if (!m.covers(Side::Y, e.y) && !m.uses_color(e.c)) at_a.push_back(e);
      }
      if (at_a.size() < 2) continue;
      for (std::int32_t idx : g.incident(Side::Y, ab.y)) {
        const Edge& e = g.edge(idx);
        if (!m.covers(Side::X, e.x) && !m.uses_color(e.c)) at_b.push_back(e);
      }
      if (at_b.size() < 2) continue;
      const Edge first = at_a.front();
      const Edge second = at_b.front().c != first.c ? at_b.front() : at_b[1];
      m.remove(ab);
      m.add(first);
      m.add(second);
      m = greedy_fill(g, std::move(m));
      ++res.exchanges;
      changed = true;
      break;
    }
    if (!changed) break;
  }
  res.matching = std::move(m);
  return res;
}

ExchangeResult min_degree_rainbow_matching(const ColoredBipartiteGraph& g, double d) {
  const double n = g.nx();
  if (g.nx() != g.ny())
    throw PreconditionViolated("parts have different sizes (" + std::to_string(g.nx()) + " and " +
                               std::to_string(g.ny()) + ")");
  if (g.min_degree() < d)
    throw PreconditionViolated("minimum degree " + std::to_string(g.min_degree()) + " is below d = " +
                               std::to_string(d));
  for (Id c = 0; c < g.num_colors(); ++c)
    if (g.color_size(c) > n / 12)
      throw PreconditionViolated("colour " + std::to_string(c) + " has " + std::to_string(g.color_size(c)) +
                                 " edges, more than n/12");
  if (n < 3 * d + 12) throw PreconditionViolated("n = " + std::to_string(g.nx()) + " is below 3d + 12");
  return exchange_matching(g);
}

SmallColourResult small_color_matching(const ColoredBipartiteGraph& g, double eps0, int d, Rng& rng, double n) {
  if (n <= 0) n = g.nx();
  const ColorClasses cls = classify_colors(g, eps0, n);
  SmallColourResult res;
  res.target = static_cast<long long>(cls.t) + 6LL * d;
  const auto medium = static_cast<long long>(cls.medium.size());

  auto add_per_colour = [&](std::vector<Id> colours, long long limit) {
    rng.shuffle(colours);
    for (Id c : colours) {
      if (static_cast<long long>(res.matching.size()) >= limit) return;
      if (res.matching.uses_color(c)) continue;
      for (std::int32_t idx : g.color_class(c)) {
        const Edge& e = g.edge(idx);
        if (res.matching.can_add(e)) {
          res.matching.add(e);
          break;
        }
      }
    }
  };

  if (res.target <= 0) {
    res.branch = 1;
  } else if (medium >= res.target) {
    res.branch = 1;
    add_per_colour(cls.medium, res.target);
  } else if (medium >= static_cast<long long>(cls.t) - 12LL * d) {
    res.branch = 2;
    add_per_colour(cls.tiny, 18LL * d);
    add_per_colour(cls.medium, res.target);
  } else {
    res.branch = 3;
    std::vector<char> tiny(at(g.num_colors()), 0);
    for (Id c : cls.tiny) tiny[at(c)] = 1;
    const ColoredBipartiteGraph sub = g.filter_edges([&](const Edge& e) { return tiny[at(e.c)] != 0; });
    res.matching = exchange_matching(sub).matching;
    add_per_colour(cls.medium, res.target);
  }
  if (static_cast<long long>(res.matching.size()) > res.target) {
    std::vector<Edge> keep = res.matching.edges();
    keep.resize(static_cast<std::size_t>(std::max<long long>(res.target, 0)));
    res.matching = RainbowMatching(keep);
  }
  res.achieved = static_cast<long long>(res.matching.size());
  res.feasible = res.achieved >= res.target;
  return res;
}

}  // namespace rainbow
