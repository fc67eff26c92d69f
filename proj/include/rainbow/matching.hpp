#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// A set of edges that is vertex-disjoint and colour-disjoint, with O(1)
// lookups by x, by y and by colour. Ids index whatever graph the caller uses;
// the index vectors grow on demand.
class RainbowMatching {
 public:
  RainbowMatching() = default;
  explicit RainbowMatching(std::span<const Edge> edges);

  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  bool covers(Side s, Id v) const noexcept { return slot(s == Side::X ? by_x_ : by_y_, v) != kNone; }
  bool uses_color(Id c) const noexcept { return slot(by_c_, c) != kNone; }
  bool contains(const Edge& e) const noexcept;
  // Edge of the matching at a vertex / of a colour.
  std::optional<Edge> at(Side s, Id v) const noexcept;
  std::optional<Edge> with_color(Id c) const noexcept;
  Id mate(Side s, Id v) const noexcept;

  bool can_add(const Edge& e) const noexcept { return !covers(Side::X, e.x) && !covers(Side::Y, e.y) && !uses_color(e.c); }
  // Throws InvalidInput("matching-conflict") when e clashes with the matching.
  void add(const Edge& e);
  // Throws InvalidInput("matching-missing") when e is not in the matching.
  void remove(const Edge& e);
  void clear();

  // Edges sorted by (x, y, c).
  std::vector<Edge> edges() const;
  std::span<const Edge> raw() const noexcept { return edges_; }

  friend bool operator==(const RainbowMatching& a, const RainbowMatching& b) { return a.edges() == b.edges(); }

 private:
  static Id slot(const std::vector<Id>& v, Id i) noexcept {
    return i >= 0 && static_cast<std::size_t>(i) < v.size() ? v[static_cast<std::size_t>(i)] : kNone;
  }
  static void put(std::vector<Id>& v, Id i, Id value);

  std::vector<Edge> edges_;
  std::vector<Id> by_x_, by_y_, by_c_;
};

// Size of the symmetric difference of two edge sets.
std::size_t symmetric_difference(const RainbowMatching& a, const RainbowMatching& b);

// Lift a matching on a subgraph to root ids, or bring a root-id matching down
// to a graph's local ids (throws if some edge is not present there).
RainbowMatching lift_to_root(const ColoredBipartiteGraph& g, const RainbowMatching& m);
RainbowMatching lower_from_root(const ColoredBipartiteGraph& g, const RainbowMatching& m);

struct Issue {
  std::string code;
  std::string message;
  std::vector<long long> witness;  // offending ids, meaning depends on code
};

// Checks an edge list against g: every edge present with the stated colour,
// no shared x, no shared y, no repeated colour. Empty result = valid.
std::vector<Issue> validate_matching(const ColoredBipartiteGraph& g, std::span<const Edge> edges);

}  // namespace rainbow
