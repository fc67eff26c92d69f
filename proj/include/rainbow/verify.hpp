#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/graph.hpp"
#include "rainbow/instances.hpp"

// Deliberately built on the core model and I/O only: nothing here may reach
// into the solver or search code whose output it is checking.
namespace rainbow {

struct VerifyOutcome {
  bool ok = true;
  nlohmann::json diagnostic;  // {"ok", "kind", "size", "issues": [{"code","message","witness"}]}
};
// Independent re-validation of a claimed matching; reads only the instance
// and the matching file (a solve report, an edge list or a triple list).
VerifyOutcome verify(const std::string& kind, const std::string& instance_path, const std::string& matching_path);
VerifyOutcome verify_edges(const ColoredBipartiteGraph& g, const std::vector<Edge>& edges);
VerifyOutcome verify_triples(Id n, const std::vector<Triple>& system, const std::vector<Triple>& claimed);

}  // namespace rainbow
