#pragma once

#include <array>
#include <span>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// n x n array of non-negative symbols; no symbol repeats in a row or column.
// Symbols live in {0..num_symbols-1}; a Latin square has exactly n of them.
class LatinArray {
 public:
  LatinArray() = default;
  // Validates; throws InvalidLatinArray naming the first offending cell.
  LatinArray(Id n, std::vector<Id> cells, Id num_symbols = kNone);

  Id n() const noexcept { return n_; }
  Id num_symbols() const noexcept { return num_symbols_; }
  Id at(Id row, Id col) const { return cells_[static_cast<std::size_t>(row) * n_ + col]; }
  const std::vector<Id>& cells() const noexcept { return cells_; }
  // Number of distinct symbols that actually occur.
  Id distinct_symbols() const;
  bool is_latin_square() const;

 private:
  Id n_ = 0;
  Id num_symbols_ = 0;
  std::vector<Id> cells_;
};

class InvalidLatinArray : public InvalidInput {
 public:
  InvalidLatinArray(Id row, Id col, const std::string& why);
  Id row, col;
};

using Triple = std::array<Id, 3>;

// Set of triples on {0..n-1} with every pair in exactly one triple.
class SteinerTripleSystem {
 public:
  SteinerTripleSystem() = default;
  // Validates pair coverage; throws InvalidInput("invalid-sts") with a witness pair.
  SteinerTripleSystem(Id n, std::vector<Triple> triples);

  Id n() const noexcept { return n_; }
  const std::vector<Triple>& triples() const noexcept { return triples_; }
  // Third point of the triple through {a, b}.
  Id third(Id a, Id b) const { return third_[static_cast<std::size_t>(a) * n_ + b]; }

 private:
  Id n_ = 0;
  std::vector<Triple> triples_;
  std::vector<Id> third_;
};

// 3-uniform hypergraph in which two edges share at most one vertex. Optional
// tripartition: when present every edge has one vertex in each part.
class LinearHypergraph3 {
 public:
  LinearHypergraph3() = default;
  // Throws InvalidInput("non-linear") naming a pair in two edges.
  LinearHypergraph3(Id num_vertices, std::vector<Triple> edges);
  LinearHypergraph3(Id num_vertices, std::vector<Triple> edges, std::array<std::vector<Id>, 3> parts);

  Id num_vertices() const noexcept { return n_; }
  const std::vector<Triple>& edges() const noexcept { return edges_; }
  bool tripartite() const noexcept { return has_parts_; }
  const std::array<std::vector<Id>, 3>& parts() const noexcept { return parts_; }

 private:
  Id n_ = 0;
  std::vector<Triple> edges_;
  std::array<std::vector<Id>, 3> parts_;
  bool has_parts_ = false;
};

// Checks that the three lists partition {0..n-1} minus `excluded`; throws
// InvalidInput("not-a-partition").
void check_partition(Id n, const std::array<std::vector<Id>, 3>& parts, std::span<const Id> excluded = {});

// Row i -> X_i, column j -> Y_j, symbol L(i,j) -> colour of X_i Y_j.
ColoredBipartiteGraph latin_to_graph(const LatinArray& L);
// Inverse of latin_to_graph; needs |X| = |Y| and every pair an edge (else "not-complete").
LatinArray graph_to_latin(const ColoredBipartiteGraph& g);
// Edge ab of colour c for every triple {a,b,c} with a in A, b in B, c in C.
// Local ids follow the order of the part lists; labels are the STS points.
// Points listed in `excluded` belong to no part (their triples are dropped).
ColoredBipartiteGraph sts_to_graph(const SteinerTripleSystem& s, const std::array<std::vector<Id>, 3>& parts,
                                   std::span<const Id> excluded = {});
// X = Y = colours = all points; x-y coloured by the third point of their triple.
// This is K_{n,n} minus the perfect matching {x_i y_i}, properly n-coloured.
ColoredBipartiteGraph sts_shadow_graph(const SteinerTripleSystem& s);
// Vertices: rows 0..n-1, columns n..2n-1, symbols 2n..2n+m-1.
LinearHypergraph3 full_latin_to_hypergraph(const LatinArray& L);
// Parts become X, Y and the colours; labels are hypergraph vertex ids.
ColoredBipartiteGraph hypergraph_to_graph(const LinearHypergraph3& h, const std::array<std::vector<Id>, 3>& parts,
                                          std::span<const Id> excluded = {});

}  // namespace rainbow
