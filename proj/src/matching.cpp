#include "rainbow/matching.hpp"

#include <algorithm>
#include <set>

namespace rainbow {

RainbowMatching::RainbowMatching(std::span<const Edge> edges) {
  for (const Edge& e : edges) add(e);
}

void RainbowMatching::put(std::vector<Id>& v, Id i, Id value) {
  if (static_cast<std::size_t>(i) >= v.size()) v.resize(static_cast<std::size_t>(i) + 1, kNone);
  v[static_cast<std::size_t>(i)] = value;
}

bool RainbowMatching::contains(const Edge& e) const noexcept {
  Id s = slot(by_x_, e.x);
  return s != kNone && edges_[static_cast<std::size_t>(s)] == e;
}

std::optional<Edge> RainbowMatching::at(Side s, Id v) const noexcept {
  Id k = slot(s == Side::X ? by_x_ : by_y_, v);
  if (k == kNone) return std::nullopt;
  return edges_[static_cast<std::size_t>(k)];
}

std::optional<Edge> RainbowMatching::with_color(Id c) const noexcept {
  Id k = slot(by_c_, c);
  if (k == kNone) return std::nullopt;
  return edges_[static_cast<std::size_t>(k)];
}

Id RainbowMatching::mate(Side s, Id v) const noexcept {
  Id k = slot(s == Side::X ? by_x_ : by_y_, v);
  if (k == kNone) return kNone;
  return edges_[static_cast<std::size_t>(k)].end(opposite(s));
}

void RainbowMatching::add(const Edge& e) {
  if (e.x < 0 || e.y < 0 || e.c < 0) throw InvalidInput("matching-conflict", "negative id in " + to_string(e));
  if (!can_add(e)) throw InvalidInput("matching-conflict", "edge " + to_string(e) + " clashes with the matching");
  const Id k = static_cast<Id>(edges_.size());
  edges_.push_back(e);
  put(by_x_, e.x, k);
  put(by_y_, e.y, k);
  put(by_c_, e.c, k);
}

void RainbowMatching::remove(const Edge& e) {
  if (!contains(e)) throw InvalidInput("matching-missing", "edge " + to_string(e) + " is not in the matching");
  const Id k = slot(by_x_, e.x);
  by_x_[static_cast<std::size_t>(e.x)] = kNone;
  by_y_[static_cast<std::size_t>(e.y)] = kNone;
  by_c_[static_cast<std::size_t>(e.c)] = kNone;
  const Id last = static_cast<Id>(edges_.size()) - 1;
  if (k != last) {
    const Edge moved = edges_[static_cast<std::size_t>(last)];
    edges_[static_cast<std::size_t>(k)] = moved;
    by_x_[static_cast<std::size_t>(moved.x)] = k;
    by_y_[static_cast<std::size_t>(moved.y)] = k;
    by_c_[static_cast<std::size_t>(moved.c)] = k;
  }
  edges_.pop_back();
}

void RainbowMatching::clear() {
  edges_.clear();
  by_x_.clear();
  by_y_.clear();
  by_c_.clear();
}

std::vector<Edge> RainbowMatching::edges() const {
  std::vector<Edge> out(edges_);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t symmetric_difference(const RainbowMatching& a, const RainbowMatching& b) {
  std::size_t common = 0;
  for (const Edge& e : a.raw())
    if (b.contains(e)) ++common;
  return a.size() + b.size() - 2 * common;
}

RainbowMatching lift_to_root(const ColoredBipartiteGraph& g, const RainbowMatching& m) {
  RainbowMatching out;
  for (const Edge& e : m.edges()) out.add(g.to_root(e));
  return out;
}

RainbowMatching lower_from_root(const ColoredBipartiteGraph& g, const RainbowMatching& m) {
  RootIndex idx(g);
  RainbowMatching out;
  for (const Edge& e : m.edges()) {
    Edge local = idx.local(e);
    if (!g.has_edge(local))
      throw InvalidInput("matching-not-in-graph", "edge " + to_string(e) + " is not an edge of the graph");
    out.add(local);
  }
  return out;
}

std::vector<Issue> validate_matching(const ColoredBipartiteGraph& g, std::span<const Edge> edges) {
  std::vector<Issue> issues;
  std::vector<long long> seen_x(static_cast<std::size_t>(g.nx()), -1), seen_y(static_cast<std::size_t>(g.ny()), -1),
      seen_c(static_cast<std::size_t>(g.num_colors()), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const auto idx = static_cast<long long>(i);
    if (!g.has_edge(e)) {
      Id actual = (e.x >= 0 && e.x < g.nx() && e.y >= 0 && e.y < g.ny()) ? g.color_between(e.x, e.y) : kNone;
      issues.push_back({actual == kNone ? "missing-edge" : "wrong-colour",
                        "entry " + std::to_string(i) + " " + to_string(e) +
                            (actual == kNone ? " is not an edge" : " has colour " + std::to_string(actual)),
                        {idx, e.x, e.y, e.c}});
      continue;
    }
    auto clash = [&](std::vector<long long>& seen, Id v, const char* code, const char* what) {
      long long& s = seen[static_cast<std::size_t>(v)];
      if (s >= 0)
        issues.push_back({code,
                          std::string("entries ") + std::to_string(s) + " and " + std::to_string(i) + " share " +
                              what + " " + std::to_string(v),
                          {s, idx, v}});
      else
        s = idx;
    };
    clash(seen_x, e.x, "shared-x", "x");
    clash(seen_y, e.y, "shared-y", "y");
    clash(seen_c, e.c, "repeated-colour", "colour");
  }
  return issues;
}

}  // namespace rainbow
