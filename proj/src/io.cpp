#include "rainbow/io.hpp"

#include <fstream>
#include <sstream>

namespace rainbow::io {

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput("parse-error", std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput("parse-error", std::string("field \"") + key + "\": " + e.what());
  }
}

Triple triple_of(const json& t) {
  if (!t.is_array() || t.size() != 3) throw InvalidInput("parse-error", "triple must be an array of three ids");
  return {t[0].get<Id>(), t[1].get<Id>(), t[2].get<Id>()};
}

std::array<std::vector<Id>, 3> parts_of(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput("parse-error", "\"parts\" must list three id arrays");
  return {j[0].get<std::vector<Id>>(), j[1].get<std::vector<Id>>(), j[2].get<std::vector<Id>>()};
}

bool looks_like_json(const std::string& text) {
  for (char ch : text) {
    if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') continue;
    return ch == '{' || ch == '[';
  }
  return false;
}

json parse(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput("parse-error", where + ": " + e.what());
  }
}

}  // namespace

json to_json(const LatinArray& L) {
  json cells = json::array();
  for (Id r = 0; r < L.n(); ++r) {
    json row = json::array();
    for (Id c = 0; c < L.n(); ++c) row.push_back(L.at(r, c));
    cells.push_back(std::move(row));
  }
  json j{{"n", L.n()}, {"cells", std::move(cells)}};
  if (L.num_symbols() != L.n()) j["symbols"] = L.num_symbols();
  return j;
}

LatinArray latin_from_json(const json& j) {
  const Id n = field<Id>(j, "n");
  const auto rows = field<std::vector<std::vector<Id>>>(j, "cells");
  if (rows.size() != static_cast<std::size_t>(n))
    throw InvalidInput("parse-error", "\"cells\" has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  std::vector<Id> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != static_cast<std::size_t>(n))
      throw InvalidInput("parse-error", "row " + std::to_string(r) + " has wrong length");
    cells.insert(cells.end(), rows[r].begin(), rows[r].end());
  }
  Id symbols = j.contains("symbols") ? j.at("symbols").get<Id>() : kNone;
  return LatinArray(n, std::move(cells), symbols);
}

std::string to_csv(const LatinArray& L) {
  std::string out;
  for (Id r = 0; r < L.n(); ++r) {
    for (Id c = 0; c < L.n(); ++c) {
      if (c) out += ',';
      out += std::to_string(L.at(r, c));
    }
    out += '\n';
  }
  return out;
}

LatinArray latin_from_csv(const std::string& text) {
  std::vector<Id> cells;
  std::istringstream in(text);
  std::string line;
  Id rows = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string tok;
    std::size_t count = 0;
    while (std::getline(ls, tok, ',')) {
      try {
        cells.push_back(static_cast<Id>(std::stol(tok)));
      } catch (const std::exception&) {
        throw InvalidInput("parse-error", "row " + std::to_string(rows) + ": bad entry \"" + tok + "\"");
      }
      ++count;
    }
    if (rows == 0) width = count;
    if (count != width) throw InvalidInput("parse-error", "row " + std::to_string(rows) + " has wrong length");
    ++rows;
  }
  if (static_cast<std::size_t>(rows) != width) throw InvalidInput("parse-error", "grid is not square");
  return LatinArray(rows, std::move(cells));
}

json to_json(const SteinerTripleSystem& s) {
  json t = json::array();
  for (const Triple& tr : s.triples()) t.push_back({tr[0], tr[1], tr[2]});
  return {{"n", s.n()}, {"triples", std::move(t)}};
}

SteinerTripleSystem sts_from_json(const json& j) {
  std::vector<Triple> triples;
  for (const json& t : field<json>(j, "triples")) triples.push_back(triple_of(t));
  return SteinerTripleSystem(field<Id>(j, "n"), std::move(triples));
}

json to_json(const LinearHypergraph3& h) {
  json e = json::array();
  for (const Triple& t : h.edges()) e.push_back({t[0], t[1], t[2]});
  json j{{"n", h.num_vertices()}, {"edges", std::move(e)}};
  if (h.tripartite()) j["parts"] = {h.parts()[0], h.parts()[1], h.parts()[2]};
  return j;
}

LinearHypergraph3 hypergraph_from_json(const json& j) {
  std::vector<Triple> edges;
  for (const json& t : field<json>(j, "edges")) edges.push_back(triple_of(t));
  const Id n = field<Id>(j, "n");
  if (j.contains("parts")) return LinearHypergraph3(n, std::move(edges), parts_of(j.at("parts")));
  return LinearHypergraph3(n, std::move(edges));
}

json to_json(const ColoredBipartiteGraph& g) {
  json e = json::array();
  for (const Edge& ed : g.edges()) e.push_back({ed.x, ed.y, ed.c});
  return {{"nx", g.nx()}, {"ny", g.ny()}, {"colours", g.num_colors()}, {"edges", std::move(e)}};
}

ColoredBipartiteGraph graph_from_json(const json& j) {
  std::vector<Edge> edges;
  for (const json& t : field<json>(j, "edges")) {
    Triple tr = triple_of(t);
    edges.push_back({tr[0], tr[1], tr[2]});
  }
  return ColoredBipartiteGraph(field<Id>(j, "nx"), field<Id>(j, "ny"), field<Id>(j, "colours"), std::move(edges));
}

json to_json(const RainbowMatching& m) { return edges_to_json(m.edges()); }

json edges_to_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({{"x", e.x}, {"y", e.y}, {"c", e.c}});
  return out;
}

std::vector<Edge> edges_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("parse-error", "matching must be a JSON array");
  std::vector<Edge> out;
  for (const json& e : j) out.push_back({field<Id>(e, "x"), field<Id>(e, "y"), field<Id>(e, "c")});
  return out;
}

json triples_to_json(const std::vector<Triple>& triples) {
  json out = json::array();
  for (const Triple& t : triples) out.push_back({t[0], t[1], t[2]});
  return out;
}

std::vector<Triple> triples_from_json(const json& j) {
  const json& list = j.is_object() ? field<json>(j, "triples") : j;
  if (!list.is_array()) throw InvalidInput("parse-error", "expected an array of triples");
  std::vector<Triple> out;
  for (const json& t : list) out.push_back(triple_of(t));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("io-error", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("io-error", "cannot write " + path);
  out << text;
}

json read_json(const std::string& path) { return parse(read_file(path), path); }

LatinArray load_latin(const std::string& path) {
  std::string text = read_file(path);
  if (looks_like_json(text)) return latin_from_json(parse(text, path));
  return latin_from_csv(text);
}

ColoredBipartiteGraph load_graph(const std::string& path) {
  std::string text = read_file(path);
  if (!looks_like_json(text)) return latin_to_graph(latin_from_csv(text));
  json j = parse(text, path);
  if (j.is_object() && j.contains("cells")) return latin_to_graph(latin_from_json(j));
  return graph_from_json(j);
}

}  // namespace rainbow::io
