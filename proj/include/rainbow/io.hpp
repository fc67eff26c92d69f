#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"

namespace rainbow::io {

using nlohmann::json;

// Latin array: {"n": int, "cells": [[...], ...]} (optionally "symbols": int).
json to_json(const LatinArray& L);
LatinArray latin_from_json(const json& j);
// Plain CSV grid, one row per line.
std::string to_csv(const LatinArray& L);
LatinArray latin_from_csv(const std::string& text);

// Steiner triple system: {"n": int, "triples": [[a,b,c], ...]}.
json to_json(const SteinerTripleSystem& s);
SteinerTripleSystem sts_from_json(const json& j);

// Hypergraph: {"n": int, "edges": [[a,b,c], ...], "parts": [[...],[...],[...]]?}.
json to_json(const LinearHypergraph3& h);
LinearHypergraph3 hypergraph_from_json(const json& j);

// Graph: {"nx": int, "ny": int, "colours": int, "edges": [[x,y,c], ...]}.
json to_json(const ColoredBipartiteGraph& g);
ColoredBipartiteGraph graph_from_json(const json& j);

// Matching: [{"x": i, "y": j, "c": k}, ...].
json to_json(const RainbowMatching& m);
json edges_to_json(const std::vector<Edge>& edges);
std::vector<Edge> edges_from_json(const json& j);

// Triple lists (hypergraph matchings): [[a,b,c], ...] or {"triples": [...]}.
json triples_to_json(const std::vector<Triple>& triples);
std::vector<Triple> triples_from_json(const json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
json read_json(const std::string& path);

// Reads an instance file as a bipartite graph: accepts the graph format, a
// Latin array in JSON, or a CSV grid.
ColoredBipartiteGraph load_graph(const std::string& path);
// JSON or CSV Latin array, picked by content.
LatinArray load_latin(const std::string& path);

}  // namespace rainbow::io
