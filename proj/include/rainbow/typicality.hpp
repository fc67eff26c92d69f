#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/graph.hpp"

namespace rainbow {

// Closed bands of the form target * (1 +- n^-eps), n being the caller's
// reference scale rather than |X|.
struct TypicalityParams {
  double eps = 0.5;
  double p = 1.0;
  double n = 0;                  // 0 = use |X|
  long long sample_pairs = 0;    // >0: sample this many pairs per side when a side exceeds 1500
  std::uint64_t seed = 0;        // for pair sampling
};

// Worst item of one check: the one with the least slack to the band.
struct Witness {
  std::string check;    // e.g. "degree-X", "codegree-Y", "colour-size"
  std::string subject;  // e.g. "x=4", "pair (1,7)"
  double value = 0;
  double low = 0;
  double high = 0;
  double slack() const;
  bool inside() const;
};

struct TypicalityReport {
  std::string predicate;
  TypicalityParams params;
  bool pass = true;
  std::vector<Witness> witnesses;  // one per check performed
  double margin = 0;               // least slack over all checks; negative on failure
  bool sampled = false;
  std::string reading;             // how the predicate was interpreted
};

nlohmann::json to_json(const TypicalityReport& r);

TypicalityReport check_regular(const ColoredBipartiteGraph& g, const TypicalityParams& params);
TypicalityReport check_typical(const ColoredBipartiteGraph& g, const TypicalityParams& params);

enum class ColouredLevel { Regular, Typical };
// Coloured-regular: uncoloured regularity of G and of the colour shadows
// G_{X,C}, G_{Y,C}, plus |C| in the n-band and every colour class in the
// pn-band. Coloured-typical adds codegrees everywhere and the colour-pair
// intersections |V(c) ∩ V(c') ∩ X|, |V(c) ∩ V(c') ∩ Y| in the p^2 n band.
TypicalityReport check_coloured(const ColoredBipartiteGraph& g, const TypicalityParams& params, ColouredLevel level);

struct AuditResult {
  enum class Status { Pass, Fail, PreconditionViolated };
  Status status = Status::Pass;
  double measured = 0;
  double bound = 0;
  std::string note;
  bool within_bound() const { return measured <= bound * (1 + 1e-12) + 1e-9; }
};
const char* status_name(AuditResult::Status s);

// |e(A,B) - p|A||B|| against 2 |A|^(1/2) |B| gamma^(1/2) n^(1/2) p for A ⊆ X,
// B ⊆ Y. Preconditions |B| >= 1/(gamma p^2) and 8 n^-eps <= gamma; when they
// fail the measurement is still taken but the status says so.
AuditResult discrepancy_audit(const ColoredBipartiteGraph& h, std::span<const Id> a, std::span<const Id> b, double p,
                              double gamma, double n, double eps);

// Number of vertices of degree < p d / 2 in the subgraph spanned by the
// colours in `colours` (d = |colours|), against 32 n / (p^2 d).
// Precondition 16 <= 8 p^2 d <= n^eps.
AuditResult low_degree_census(const ColoredBipartiteGraph& g, std::span<const Id> colours, double p, double n,
                              double eps);

struct ColorClasses {
  std::vector<Id> large;   // more than (1 - eps0) n edges
  std::vector<Id> medium;  // small, at least n/12 edges
  std::vector<Id> tiny;    // fewer than n/12 edges
  Id t = 0;                // max(0, n - #large)
};
// Colours with no edges are ignored. n = 0 means |X|.
ColorClasses classify_colors(const ColoredBipartiteGraph& g, double eps0, double n = 0);

}  // namespace rainbow
