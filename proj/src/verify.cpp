#include "rainbow/verify.hpp"

#include <algorithm>
#include <set>

#include "rainbow/io.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

namespace {

void add_issue(VerifyOutcome& out, const std::string& code, const std::string& message,
               std::vector<long long> witness = {}) {
  out.ok = false;
  out.diagnostic["issues"].push_back({{"code", code}, {"message", message}, {"witness", witness}});
}

}  // namespace

VerifyOutcome verify_edges(const ColoredBipartiteGraph& g, const std::vector<Edge>& edges) {
  VerifyOutcome out;
  out.diagnostic = {{"ok", true}, {"size", edges.size()}, {"issues", nlohmann::json::array()}};
  for (const Issue& issue : validate_matching(g, edges)) add_issue(out, issue.code, issue.message, issue.witness);
  out.diagnostic["ok"] = out.ok;
  return out;
}

VerifyOutcome verify_triples(Id n, const std::vector<Triple>& system, const std::vector<Triple>& claimed) {
  VerifyOutcome out;
  out.diagnostic = {{"ok", true}, {"size", claimed.size()}, {"issues", nlohmann::json::array()}};
  std::set<Triple> known;
  for (Triple t : system) {
    std::sort(t.begin(), t.end());
    known.insert(t);
  }
  std::vector<long long> owner(static_cast<std::size_t>(std::max<Id>(n, 0)), -1);
  for (std::size_t i = 0; i < claimed.size(); ++i) {
    Triple t = claimed[i];
    std::sort(t.begin(), t.end());
    const std::vector<long long> w{t[0], t[1], t[2]};
    if (!known.count(t)) {
      add_issue(out, "not-a-triple",
                "triple {" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
                    "} is not in the system",
                w);
      continue;
    }
    for (Id v : t) {
      auto& o = owner[static_cast<std::size_t>(v)];
      if (o >= 0)
        add_issue(out, "overlap",
                  "point " + std::to_string(v) + " is in claimed triples " + std::to_string(o) + " and " +
                      std::to_string(i),
                  {v, o, static_cast<long long>(i)});
      else
        o = static_cast<long long>(i);
    }
  }
  out.diagnostic["ok"] = out.ok;
  return out;
}

VerifyOutcome verify(const std::string& kind, const std::string& instance_path, const std::string& matching_path) {
  const nlohmann::json claim = io::read_json(matching_path);
  std::vector<Edge> edges;
  std::vector<Triple> triples;
  const bool triple_kind = kind == "steiner" || kind == "hypergraph";
  if (claim.is_object()) {
    if (triple_kind && claim.contains("triples"))
      triples = io::triples_from_json(claim.at("triples"));
    else if (claim.contains("matching"))
      edges = io::edges_from_json(claim.at("matching"));
    else
      throw InvalidInput("parse-error", matching_path + ": no \"matching\" or \"triples\" field");
  } else if (triple_kind) {
    triples = io::triples_from_json(claim);
  } else {
    edges = io::edges_from_json(claim);
  }

  VerifyOutcome out;
  if (kind == "latin" || kind == "array" || kind == "cyclic" || kind == "graph") {
    out = verify_edges(io::load_graph(instance_path), edges);
  } else if (kind == "steiner") {
    const SteinerTripleSystem s = io::sts_from_json(io::read_json(instance_path));
    out = verify_triples(s.n(), s.triples(), triples);
  } else if (kind == "hypergraph") {
    const LinearHypergraph3 h = io::hypergraph_from_json(io::read_json(instance_path));
    out = verify_triples(h.num_vertices(), h.edges(), triples);
  } else {
    throw InvalidInput("unknown-kind", "unknown instance kind '" + kind + "'");
  }
  if (claim.is_object() && claim.contains("size")) {
    const long long stated = claim.at("size").get<long long>();
    const long long actual = static_cast<long long>(triple_kind ? triples.size() : edges.size());
    if (stated != actual)
      add_issue(out, "size-mismatch",
                "report states size " + std::to_string(stated) + " but lists " + std::to_string(actual), {stated, actual});
  }
  out.diagnostic["ok"] = out.ok;
  out.diagnostic["kind"] = kind;
  return out;
}

}  // namespace rainbow
