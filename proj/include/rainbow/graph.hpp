#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"

namespace rainbow {

using Id = std::int32_t;
inline constexpr Id kNone = -1;

enum class Side : std::uint8_t { X = 0, Y = 1 };
constexpr Side opposite(Side s) { return s == Side::X ? Side::Y : Side::X; }
const char* side_name(Side s);

struct Vertex {
  Side side = Side::X;
  Id id = kNone;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// A coloured edge x--y of colour c. Ids are local to the owning graph.
struct Edge {
  Id x = kNone;
  Id y = kNone;
  Id c = kNone;
  friend auto operator<=>(const Edge&, const Edge&) = default;
  Id end(Side s) const { return s == Side::X ? x : y; }
};

std::string to_string(const Edge& e);

// Root identifiers for every local id. Subgraphs keep pointing at the ids of
// the graph they were ultimately cut from, so results can always be lifted.
struct Labels {
  std::vector<Id> x, y, c;
};

// Properly edge-coloured simple bipartite graph with parts X = {0..nx-1},
// Y = {0..ny-1} and colour ids {0..nc-1}. Construction validates ids,
// simplicity and properness. Lookups (vertex, colour) -> neighbour and
// (x, y) -> colour are O(1) via dense tables.
class ColoredBipartiteGraph {
 public:
  ColoredBipartiteGraph() = default;
  ColoredBipartiteGraph(Id nx, Id ny, Id nc, std::vector<Edge> edges);
  ColoredBipartiteGraph(Id nx, Id ny, Id nc, std::vector<Edge> edges, Labels labels);

  Id nx() const noexcept { return nx_; }
  Id ny() const noexcept { return ny_; }
  Id side_size(Side s) const noexcept { return s == Side::X ? nx_ : ny_; }
  Id num_colors() const noexcept { return nc_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::int32_t index) const { return edges_[static_cast<std::size_t>(index)]; }

  // Neighbour of v across colour c, or kNone.
  Id partner(Side s, Id v, Id c) const noexcept {
    return (s == Side::X ? x_partner_ : y_partner_)[static_cast<std::size_t>(v) * nc_ + c];
  }
  Id color_between(Id x, Id y) const noexcept {
    return pair_color_[static_cast<std::size_t>(x) * ny_ + y];
  }
  bool has_edge(const Edge& e) const noexcept;

  // Edge indices incident to a vertex, in increasing index order.
  std::span<const std::int32_t> incident(Side s, Id v) const noexcept;
  std::span<const std::int32_t> color_class(Id c) const noexcept;

  Id degree(Side s, Id v) const noexcept { return static_cast<Id>(incident(s, v).size()); }
  Id color_size(Id c) const noexcept { return static_cast<Id>(color_class(c).size()); }
  Id max_degree() const noexcept;
  Id min_degree() const noexcept;
  std::vector<Id> active_colors() const;

  const Labels& labels() const noexcept { return labels_; }
  Id label(Side s, Id v) const { return (s == Side::X ? labels_.x : labels_.y)[static_cast<std::size_t>(v)]; }
  Id color_label(Id c) const { return labels_.c[static_cast<std::size_t>(c)]; }
  Edge to_root(const Edge& e) const { return {labels_.x[e.x], labels_.y[e.y], labels_.c[e.c]}; }

  // Subgraph spanned by the given vertices keeping only edges whose colour is
  // listed. Lists are taken in the order given; local ids follow that order.
  ColoredBipartiteGraph induced(std::span<const Id> xs, std::span<const Id> ys,
                                std::span<const Id> cs) const;
  // Same vertex and colour ids, only the edges accepted by keep().
  template <class Pred>
  ColoredBipartiteGraph filter_edges(Pred keep) const {
    std::vector<Edge> kept;
    for (const Edge& e : edges_)
      if (keep(e)) kept.push_back(e);
    return ColoredBipartiteGraph(nx_, ny_, nc_, std::move(kept), labels_);
  }

 private:
  void build();

  Id nx_ = 0, ny_ = 0, nc_ = 0;
  std::vector<Edge> edges_;
  Labels labels_;
  std::vector<Id> x_partner_, y_partner_, pair_color_;
  std::vector<std::int32_t> x_off_, x_idx_, y_off_, y_idx_, c_off_, c_idx_;
};

// Maps root ids back to the local ids of one graph (kNone when absent).
class RootIndex {
 public:
  explicit RootIndex(const ColoredBipartiteGraph& g);
  Id x(Id root) const { return lookup(x_, root); }
  Id y(Id root) const { return lookup(y_, root); }
  Id c(Id root) const { return lookup(c_, root); }
  // Local edge for a root edge, or an edge with kNone fields if absent.
  Edge local(const Edge& root) const { return {x(root.x), y(root.y), c(root.c)}; }

 private:
  static Id lookup(const std::vector<Id>& v, Id root) {
    return root >= 0 && static_cast<std::size_t>(root) < v.size() ? v[static_cast<std::size_t>(root)] : kNone;
  }
  std::vector<Id> x_, y_, c_;
};

// Sparse adjacency over a fixed bipartition; used for the colour-pool
// subgraphs that drive alternating-path searches.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(Id nx, Id ny) : at_x_(static_cast<std::size_t>(nx)), at_y_(static_cast<std::size_t>(ny)) {}

  void add(const Edge& e) {
    at_x_[static_cast<std::size_t>(e.x)].push_back(e);
    at_y_[static_cast<std::size_t>(e.y)].push_back(e);
    ++size_;
  }
  std::span<const Edge> at(Side s, Id v) const {
    return (s == Side::X ? at_x_ : at_y_)[static_cast<std::size_t>(v)];
  }
  Id nx() const { return static_cast<Id>(at_x_.size()); }
  Id ny() const { return static_cast<Id>(at_y_.size()); }
  std::size_t size() const { return size_; }
  Id max_degree() const;
  std::vector<Edge> edges() const;
  // Orders every adjacency list by the far endpoint (lowest index first).
  void sort_lists();

 private:
  std::vector<std::vector<Edge>> at_x_, at_y_;
  std::size_t size_ = 0;
};

// Edges of g whose colour is in `colors`, optionally restricted to vertices
// accepted by the masks (empty mask = all vertices).
EdgeSet color_subgraph(const ColoredBipartiteGraph& g, std::span<const Id> colors,
                       const std::vector<char>& x_mask = {}, const std::vector<char>& y_mask = {});

}  // namespace rainbow
