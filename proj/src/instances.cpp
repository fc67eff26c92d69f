#include "rainbow/instances.hpp"

#include <algorithm>
#include <set>

namespace rainbow {

InvalidLatinArray::InvalidLatinArray(Id r, Id c, const std::string& why)
    : InvalidInput("invalid-latin-array",
                   "cell (" + std::to_string(r) + ", " + std::to_string(c) + "): " + why),
      row(r),
      col(c) {}

LatinArray::LatinArray(Id n, std::vector<Id> cells, Id num_symbols) : n_(n), cells_(std::move(cells)) {
  if (n < 0) throw InvalidInput("invalid-latin-array", "negative order");
  if (cells_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw InvalidInput("invalid-latin-array", "expected " + std::to_string(n * n) + " cells, got " +
                                                  std::to_string(cells_.size()));
  Id top = -1;
  for (Id r = 0; r < n; ++r)
    for (Id c = 0; c < n; ++c) {
      Id s = at(r, c);
      if (s < 0) throw InvalidLatinArray(r, c, "negative symbol");
      top = std::max(top, s);
    }
  num_symbols_ = num_symbols == kNone ? top + 1 : num_symbols;
  if (top >= num_symbols_) throw InvalidLatinArray(0, 0, "symbol exceeds declared symbol count");
  // Each symbol may occur once per row and once per column.
  std::vector<Id> seen(static_cast<std::size_t>(num_symbols_), -1);
  for (Id r = 0; r < n; ++r)
    for (Id c = 0; c < n; ++c) {
      Id& s = seen[static_cast<std::size_t>(at(r, c))];
      if (s == r) throw InvalidLatinArray(r, c, "symbol " + std::to_string(at(r, c)) + " repeats in row " + std::to_string(r));
      s = r;
    }
  std::fill(seen.begin(), seen.end(), -1);
  for (Id c = 0; c < n; ++c)
    for (Id r = 0; r < n; ++r) {
      Id& s = seen[static_cast<std::size_t>(at(r, c))];
      if (s == c) throw InvalidLatinArray(r, c, "symbol " + std::to_string(at(r, c)) + " repeats in column " + std::to_string(c));
      s = c;
    }
}

Id LatinArray::distinct_symbols() const {
  std::vector<char> used(static_cast<std::size_t>(num_symbols_), 0);
  for (Id s : cells_) used[static_cast<std::size_t>(s)] = 1;
  return static_cast<Id>(std::count(used.begin(), used.end(), 1));
}

bool LatinArray::is_latin_square() const { return distinct_symbols() == n_; }

SteinerTripleSystem::SteinerTripleSystem(Id n, std::vector<Triple> triples) : n_(n), triples_(std::move(triples)) {
  if (n < 0) throw InvalidInput("invalid-sts", "negative order");
  third_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kNone);
  for (Triple& t : triples_) {
    std::sort(t.begin(), t.end());
    if (t[0] < 0 || t[2] >= n || t[0] == t[1] || t[1] == t[2])
      throw InvalidInput("invalid-sts", "bad triple {" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                                            std::to_string(t[2]) + "}");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        Id& slot = third_[static_cast<std::size_t>(t[i]) * n + t[j]];
        if (slot != kNone)
          throw InvalidInput("invalid-sts", "pair {" + std::to_string(t[i]) + "," + std::to_string(t[j]) +
                                                "} lies in two triples");
        slot = t[3 - i - j];
      }
  }
  for (Id a = 0; a < n; ++a)
    for (Id b = a + 1; b < n; ++b)
      if (third(a, b) == kNone)
        throw InvalidInput("invalid-sts", "pair {" + std::to_string(a) + "," + std::to_string(b) + "} is uncovered");
  std::sort(triples_.begin(), triples_.end());
}

namespace {

void check_linear(Id n, std::vector<Triple>& edges) {
  std::set<std::pair<Id, Id>> pairs;
  for (Triple& t : edges) {
    std::sort(t.begin(), t.end());
    if (t[0] < 0 || t[2] >= n || t[0] == t[1] || t[1] == t[2])
      throw InvalidInput("invalid-hypergraph", "edge with repeated or out-of-range vertex");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!pairs.insert({t[i], t[j]}).second)
          throw InvalidInput("non-linear", "pair {" + std::to_string(t[i]) + "," + std::to_string(t[j]) +
                                               "} lies in two edges");
  }
  std::sort(edges.begin(), edges.end());
}

}  // namespace

void check_partition(Id n, const std::array<std::vector<Id>, 3>& parts, std::span<const Id> excluded) {
  std::vector<int> owner(static_cast<std::size_t>(std::max<Id>(n, 0)), -1);
  for (Id v : excluded) {
    if (v < 0 || v >= n) throw InvalidInput("not-a-partition", "vertex " + std::to_string(v) + " out of range");
    owner[static_cast<std::size_t>(v)] = 3;
  }
  for (int p = 0; p < 3; ++p)
    for (Id v : parts[static_cast<std::size_t>(p)]) {
      if (v < 0 || v >= n) throw InvalidInput("not-a-partition", "vertex " + std::to_string(v) + " out of range");
      if (owner[static_cast<std::size_t>(v)] != -1)
        throw InvalidInput("not-a-partition", "vertex " + std::to_string(v) + " appears in two parts");
      owner[static_cast<std::size_t>(v)] = p;
    }
  for (Id v = 0; v < n; ++v)
    if (owner[static_cast<std::size_t>(v)] == -1)
      throw InvalidInput("not-a-partition", "vertex " + std::to_string(v) + " is in no part");
}

LinearHypergraph3::LinearHypergraph3(Id num_vertices, std::vector<Triple> edges)
    : n_(num_vertices), edges_(std::move(edges)) {
  check_linear(n_, edges_);
}

LinearHypergraph3::LinearHypergraph3(Id num_vertices, std::vector<Triple> edges, std::array<std::vector<Id>, 3> parts)
    : n_(num_vertices), edges_(std::move(edges)), parts_(std::move(parts)), has_parts_(true) {
  check_linear(n_, edges_);
  check_partition(n_, parts_);
  std::vector<int> owner(static_cast<std::size_t>(n_));
  for (int p = 0; p < 3; ++p)
    for (Id v : parts_[static_cast<std::size_t>(p)]) owner[static_cast<std::size_t>(v)] = p;
  for (const Triple& t : edges_) {
    int mask = 0;
    for (Id v : t) mask |= 1 << owner[static_cast<std::size_t>(v)];
    if (mask != 7) throw InvalidInput("not-tripartite", "an edge does not meet all three parts");
  }
}

ColoredBipartiteGraph latin_to_graph(const LatinArray& L) {
  std::vector<Edge> edges;
  edges.reserve(L.cells().size());
  for (Id r = 0; r < L.n(); ++r)
    for (Id c = 0; c < L.n(); ++c) edges.push_back({r, c, L.at(r, c)});
  return ColoredBipartiteGraph(L.n(), L.n(), L.num_symbols(), std::move(edges));
}

LatinArray graph_to_latin(const ColoredBipartiteGraph& g) {
  if (g.nx() != g.ny()) throw InvalidInput("not-complete", "parts differ in size");
  const Id n = g.nx();
  std::vector<Id> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y) {
      Id c = g.color_between(x, y);
      if (c == kNone)
        throw InvalidInput("not-complete", "pair (" + std::to_string(x) + ", " + std::to_string(y) + ") is not an edge");
      cells[static_cast<std::size_t>(x) * n + y] = c;
    }
  return LatinArray(n, std::move(cells), g.num_colors());
}

namespace {

ColoredBipartiteGraph tripartite_graph(Id n, const std::vector<Triple>& triples, std::span<const Id> excluded,
                                       const std::array<std::vector<Id>, 3>& parts) {
  check_partition(n, parts, excluded);
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<Id> local(static_cast<std::size_t>(n));
  for (int p = 0; p < 3; ++p)
    for (std::size_t i = 0; i < parts[static_cast<std::size_t>(p)].size(); ++i) {
      Id v = parts[static_cast<std::size_t>(p)][i];
      owner[static_cast<std::size_t>(v)] = p;
      local[static_cast<std::size_t>(v)] = static_cast<Id>(i);
    }
  std::vector<Edge> edges;
  for (const Triple& t : triples) {
    Edge e;
    int mask = 0;
    for (Id v : t) {
      int p = owner[static_cast<std::size_t>(v)];
      if (p < 0) {
        mask = 0;
        break;
      }
      mask |= 1 << p;
      (p == 0 ? e.x : p == 1 ? e.y : e.c) = local[static_cast<std::size_t>(v)];
    }
    if (mask == 7) edges.push_back(e);
  }
  return ColoredBipartiteGraph(static_cast<Id>(parts[0].size()), static_cast<Id>(parts[1].size()),
                               static_cast<Id>(parts[2].size()), std::move(edges),
                               Labels{parts[0], parts[1], parts[2]});
}

}  // namespace

ColoredBipartiteGraph sts_to_graph(const SteinerTripleSystem& s, const std::array<std::vector<Id>, 3>& parts,
                                   std::span<const Id> excluded) {
  return tripartite_graph(s.n(), s.triples(), excluded, parts);
}

ColoredBipartiteGraph sts_shadow_graph(const SteinerTripleSystem& s) {
  std::vector<Edge> edges;
  for (Id a = 0; a < s.n(); ++a)
    for (Id b = 0; b < s.n(); ++b)
      if (a != b) edges.push_back({a, b, s.third(a, b)});
  return ColoredBipartiteGraph(s.n(), s.n(), s.n(), std::move(edges));
}

LinearHypergraph3 full_latin_to_hypergraph(const LatinArray& L) {
  const Id n = L.n(), m = L.num_symbols();
  std::vector<Triple> edges;
  std::array<std::vector<Id>, 3> parts;
  for (Id i = 0; i < n; ++i) {
    parts[0].push_back(i);
    parts[1].push_back(n + i);
  }
  for (Id s = 0; s < m; ++s) parts[2].push_back(2 * n + s);
  for (Id r = 0; r < n; ++r)
    for (Id c = 0; c < n; ++c) edges.push_back({r, n + c, 2 * n + L.at(r, c)});
  return LinearHypergraph3(2 * n + m, std::move(edges), std::move(parts));
}

ColoredBipartiteGraph hypergraph_to_graph(const LinearHypergraph3& h, const std::array<std::vector<Id>, 3>& parts,
                                          std::span<const Id> excluded) {
  return tripartite_graph(h.num_vertices(), h.edges(), excluded, parts);
}

}  // namespace rainbow
