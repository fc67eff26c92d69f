#include "rainbow/graph.hpp"

#include <algorithm>
#include <numeric>

namespace rainbow {

const char* side_name(Side s) { return s == Side::X ? "X" : "Y"; }

std::string to_string(const Edge& e) {
  return "(x=" + std::to_string(e.x) + ", y=" + std::to_string(e.y) + ", c=" + std::to_string(e.c) + ")";
}

namespace {

std::vector<Id> identity(Id n) {
  std::vector<Id> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void csr(std::size_t buckets, const std::vector<Edge>& edges, Id Edge::*field,
         std::vector<std::int32_t>& off, std::vector<std::int32_t>& idx) {
  off.assign(buckets + 1, 0);
  for (const Edge& e : edges) ++off[static_cast<std::size_t>(e.*field) + 1];
  for (std::size_t i = 0; i < buckets; ++i) off[i + 1] += off[i];
  idx.assign(edges.size(), 0);
  std::vector<std::int32_t> fill(off.begin(), off.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i)
    idx[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges[i].*field)]++)] = static_cast<std::int32_t>(i);
}

}  // namespace

ColoredBipartiteGraph::ColoredBipartiteGraph(Id nx, Id ny, Id nc, std::vector<Edge> edges)
    : ColoredBipartiteGraph(nx, ny, nc, std::move(edges), Labels{identity(nx), identity(ny), identity(nc)}) {}

ColoredBipartiteGraph::ColoredBipartiteGraph(Id nx, Id ny, Id nc, std::vector<Edge> edges, Labels labels)
    : nx_(nx), ny_(ny), nc_(nc), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (nx < 0 || ny < 0 || nc < 0) throw InvalidInput("invalid-graph", "negative part or colour count");
  if (labels_.x.size() != static_cast<std::size_t>(nx) || labels_.y.size() != static_cast<std::size_t>(ny) ||
      labels_.c.size() != static_cast<std::size_t>(nc))
    throw InvalidInput("invalid-graph", "label tables do not match part sizes");
  build();
}

void ColoredBipartiteGraph::build() {
  std::sort(edges_.begin(), edges_.end());
  const auto snx = static_cast<std::size_t>(nx_), sny = static_cast<std::size_t>(ny_),
             snc = static_cast<std::size_t>(nc_);
  x_partner_.assign(snx * snc, kNone);
  y_partner_.assign(sny * snc, kNone);
  pair_color_.assign(snx * sny, kNone);
  for (const Edge& e : edges_) {
    if (e.x < 0 || e.x >= nx_ || e.y < 0 || e.y >= ny_ || e.c < 0 || e.c >= nc_)
      throw InvalidInput("invalid-graph", "edge out of range: " + to_string(e));
    Id& pc = pair_color_[static_cast<std::size_t>(e.x) * sny + e.y];
    if (pc != kNone) throw InvalidInput("invalid-graph", "parallel edges at " + to_string(e));
    pc = e.c;
    Id& xp = x_partner_[static_cast<std::size_t>(e.x) * snc + e.c];
    if (xp != kNone)
      throw InvalidInput("improper-colouring", "colour " + std::to_string(e.c) + " repeats at x=" + std::to_string(e.x));
    xp = e.y;
    Id& yp = y_partner_[static_cast<std::size_t>(e.y) * snc + e.c];
    if (yp != kNone)
      throw InvalidInput("improper-colouring", "colour " + std::to_string(e.c) + " repeats at y=" + std::to_string(e.y));
    yp = e.x;
  }
  csr(snx, edges_, &Edge::x, x_off_, x_idx_);
  csr(sny, edges_, &Edge::y, y_off_, y_idx_);
  csr(snc, edges_, &Edge::c, c_off_, c_idx_);
}

bool ColoredBipartiteGraph::has_edge(const Edge& e) const noexcept {
  if (e.x < 0 || e.x >= nx_ || e.y < 0 || e.y >= ny_ || e.c < 0 || e.c >= nc_) return false;
  return color_between(e.x, e.y) == e.c;
}

std::span<const std::int32_t> ColoredBipartiteGraph::incident(Side s, Id v) const noexcept {
  const auto& off = s == Side::X ? x_off_ : y_off_;
  const auto& idx = s == Side::X ? x_idx_ : y_idx_;
  const auto b = static_cast<std::size_t>(off[static_cast<std::size_t>(v)]);
  const auto e = static_cast<std::size_t>(off[static_cast<std::size_t>(v) + 1]);
  return std::span<const std::int32_t>(idx.data() + b, e - b);
}

std::span<const std::int32_t> ColoredBipartiteGraph::color_class(Id c) const noexcept {
  const auto b = static_cast<std::size_t>(c_off_[static_cast<std::size_t>(c)]);
  const auto e = static_cast<std::size_t>(c_off_[static_cast<std::size_t>(c) + 1]);
  return std::span<const std::int32_t>(c_idx_.data() + b, e - b);
}

Id ColoredBipartiteGraph::max_degree() const noexcept {
  Id best = 0;
  for (Id v = 0; v < nx_; ++v) best = std::max(best, degree(Side::X, v));
  for (Id v = 0; v < ny_; ++v) best = std::max(best, degree(Side::Y, v));
  return best;
}

Id ColoredBipartiteGraph::min_degree() const noexcept {
  if (nx_ == 0 && ny_ == 0) return 0;
  Id best = static_cast<Id>(edges_.size());
  for (Id v = 0; v < nx_; ++v) best = std::min(best, degree(Side::X, v));
  for (Id v = 0; v < ny_; ++v) best = std::min(best, degree(Side::Y, v));
  return best;
}

std::vector<Id> ColoredBipartiteGraph::active_colors() const {
  std::vector<Id> out;
  for (Id c = 0; c < nc_; ++c)
    if (color_size(c) > 0) out.push_back(c);
  return out;
}

ColoredBipartiteGraph ColoredBipartiteGraph::induced(std::span<const Id> xs, std::span<const Id> ys,
                                                     std::span<const Id> cs) const {
  std::vector<Id> xmap(static_cast<std::size_t>(nx_), kNone), ymap(static_cast<std::size_t>(ny_), kNone),
      cmap(static_cast<std::size_t>(nc_), kNone);
  Labels lab;
  auto take = [](std::span<const Id> list, std::vector<Id>& map, const std::vector<Id>& root,
                 std::vector<Id>& out, const char* what) {
    for (Id v : list) {
      if (v < 0 || static_cast<std::size_t>(v) >= map.size() || map[static_cast<std::size_t>(v)] != kNone)
        throw InvalidInput("invalid-subset", std::string("bad or repeated ") + what + " id " + std::to_string(v));
      map[static_cast<std::size_t>(v)] = static_cast<Id>(out.size());
      out.push_back(root[static_cast<std::size_t>(v)]);
    }
  };
  take(xs, xmap, labels_.x, lab.x, "x");
  take(ys, ymap, labels_.y, lab.y, "y");
  take(cs, cmap, labels_.c, lab.c, "colour");
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    Id a = xmap[static_cast<std::size_t>(e.x)], b = ymap[static_cast<std::size_t>(e.y)],
       c = cmap[static_cast<std::size_t>(e.c)];
    if (a != kNone && b != kNone && c != kNone) kept.push_back({a, b, c});
  }
  return ColoredBipartiteGraph(static_cast<Id>(xs.size()), static_cast<Id>(ys.size()), static_cast<Id>(cs.size()),
                               std::move(kept), std::move(lab));
}

RootIndex::RootIndex(const ColoredBipartiteGraph& g) {
  auto fill = [](const std::vector<Id>& labels, std::vector<Id>& out) {
    Id top = -1;
    for (Id r : labels) top = std::max(top, r);
    out.assign(static_cast<std::size_t>(top + 1), kNone);
    for (std::size_t i = 0; i < labels.size(); ++i) out[static_cast<std::size_t>(labels[i])] = static_cast<Id>(i);
  };
  fill(g.labels().x, x_);
  fill(g.labels().y, y_);
  fill(g.labels().c, c_);
}

Id EdgeSet::max_degree() const {
  std::size_t best = 0;
  for (const auto& v : at_x_) best = std::max(best, v.size());
  for (const auto& v : at_y_) best = std::max(best, v.size());
  return static_cast<Id>(best);
}

std::vector<Edge> EdgeSet::edges() const {
  std::vector<Edge> out;
  for (const auto& v : at_x_) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

void EdgeSet::sort_lists() {
  for (auto& v : at_x_) std::sort(v.begin(), v.end(), [](const Edge& a, const Edge& b) { return a.y < b.y; });
  for (auto& v : at_y_) std::sort(v.begin(), v.end(), [](const Edge& a, const Edge& b) { return a.x < b.x; });
}

EdgeSet color_subgraph(const ColoredBipartiteGraph& g, std::span<const Id> colors, const std::vector<char>& x_mask,
                       const std::vector<char>& y_mask) {
  EdgeSet out(g.nx(), g.ny());
  for (Id c : colors) {
    for (std::int32_t i : g.color_class(c)) {
      const Edge& e = g.edge(i);
      if (!x_mask.empty() && !x_mask[static_cast<std::size_t>(e.x)]) continue;
      if (!y_mask.empty() && !y_mask[static_cast<std::size_t>(e.y)]) continue;
      out.add(e);
    }
  }
  out.sort_lists();
  return out;
}

}  // namespace rainbow
