#include "rainbow/typicality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rainbow/rng.hpp"

namespace rainbow {

double Witness::slack() const { return std::min(value - low, high - value); }

bool Witness::inside() const {
  const double tol = 1e-9 * std::max(1.0, std::abs(high));
  return value >= low - tol && value <= high + tol;
}

nlohmann::json to_json(const TypicalityReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const Witness& x : r.witnesses)
    w.push_back({{"check", x.check}, {"subject", x.subject}, {"value", x.value}, {"low", x.low}, {"high", x.high},
                 {"inside", x.inside()}});
  return {{"version", 1},
          {"predicate", r.predicate},
          {"reading", r.reading},
          {"parameters", {{"eps", r.params.eps}, {"p", r.params.p}, {"n", r.params.n}, {"sample_pairs", r.params.sample_pairs}}},
          {"pass", r.pass},
          {"margin", r.margin},
          {"sampled", r.sampled},
          {"witnesses", std::move(w)}};
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

// Bipartite incidence structure A -- B (G itself or one of its colour shadows).
struct Incidence {
  std::string a_name, b_name;
  std::vector<std::vector<Id>> adj_a, adj_b;
};

Incidence from_graph(const ColoredBipartiteGraph& g) {
  Incidence inc{"X", "Y", std::vector<std::vector<Id>>(static_cast<std::size_t>(g.nx())),
                std::vector<std::vector<Id>>(static_cast<std::size_t>(g.ny()))};
  for (const Edge& e : g.edges()) {
    inc.adj_a[static_cast<std::size_t>(e.x)].push_back(e.y);
    inc.adj_b[static_cast<std::size_t>(e.y)].push_back(e.x);
  }
  return inc;
}

// Shadow on (side, active colours): v -- c when v has an edge of colour c.
Incidence shadow(const ColoredBipartiteGraph& g, Side s, const std::vector<Id>& colours) {
  std::vector<Id> local(static_cast<std::size_t>(g.num_colors()), kNone);
  for (std::size_t i = 0; i < colours.size(); ++i) local[static_cast<std::size_t>(colours[i])] = static_cast<Id>(i);
  Incidence inc{side_name(s), "C", std::vector<std::vector<Id>>(static_cast<std::size_t>(g.side_size(s))),
                std::vector<std::vector<Id>>(colours.size())};
  for (const Edge& e : g.edges()) {
    Id v = e.end(s), c = local[static_cast<std::size_t>(e.c)];
    inc.adj_a[static_cast<std::size_t>(v)].push_back(c);
    inc.adj_b[static_cast<std::size_t>(c)].push_back(v);
  }
  return inc;
}

class Checker {
 public:
  Checker(const TypicalityParams& p, const std::string& predicate) {
    report_.predicate = predicate;
    report_.params = p;
    scale_ = p.n;
    if (!(scale_ > 0)) throw PreconditionViolated("reference scale n must be positive");
    dev_ = std::pow(scale_, -p.eps);
    report_.params.n = scale_;
  }

  double scale() const { return scale_; }

  // Record value against target * (1 +- n^-eps) under `check`.
  void observe(const std::string& check, const std::string& subject, double value, double target) {
    Witness w{check, subject, value, target * (1 - dev_), target * (1 + dev_)};
    auto it = std::find_if(worst_.begin(), worst_.end(), [&](const Witness& x) { return x.check == check; });
    if (it == worst_.end())
      worst_.push_back(w);
    else if (w.slack() < it->slack())
      *it = w;
  }

  void sizes(const Incidence& inc, const std::string& prefix) {
    observe(prefix + "size-" + inc.a_name, "|" + inc.a_name + "|", static_cast<double>(inc.adj_a.size()), scale_);
    observe(prefix + "size-" + inc.b_name, "|" + inc.b_name + "|", static_cast<double>(inc.adj_b.size()), scale_);
  }

  void degrees(const Incidence& inc, const std::string& prefix) {
    const double target = report_.params.p * scale_;
    for (std::size_t v = 0; v < inc.adj_a.size(); ++v)
      observe(prefix + "degree-" + inc.a_name, inc.a_name + "=" + std::to_string(v),
              static_cast<double>(inc.adj_a[v].size()), target);
    for (std::size_t v = 0; v < inc.adj_b.size(); ++v)
      observe(prefix + "degree-" + inc.b_name, inc.b_name + "=" + std::to_string(v),
              static_cast<double>(inc.adj_b[v].size()), target);
  }

  // Same-side codegrees of the rows of `adj` (neighbours in a set of size `width`).
  void codegrees(const std::vector<std::vector<Id>>& adj, std::size_t width, const std::string& check,
                 const std::string& name) {
    const double target = report_.params.p * report_.params.p * scale_;
    const std::size_t words = (width + 63) / 64;
    std::vector<std::uint64_t> bits(adj.size() * words, 0);
    for (std::size_t v = 0; v < adj.size(); ++v)
      for (Id u : adj[v]) bits[v * words + static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
    auto codeg = [&](std::size_t a, std::size_t b) {
      int total = 0;
      for (std::size_t w = 0; w < words; ++w) total += std::popcount(bits[a * words + w] & bits[b * words + w]);
      return total;
    };
    auto label = [&](std::size_t a, std::size_t b) {
      return name + " pair (" + std::to_string(a) + ", " + std::to_string(b) + ")";
    };
    const std::size_t m = adj.size();
    if (m < 2) return;
    // Keep the pair of least slack locally; one observe() per check.
    const double low = target * (1 - dev_), high = target * (1 + dev_);
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 1;
    int bv = 0;
    auto consider = [&](std::size_t a, std::size_t b) {
      const int v = codeg(a, b);
      const double slack = std::min(v - low, high - v);
      if (slack < best) {
        best = slack;
        ba = a;
        bb = b;
        bv = v;
      }
    };
    if (report_.params.sample_pairs > 0 && m > 1500) {
      report_.sampled = true;
      Rng rng = Rng(report_.params.seed).fork(fnv1a(check));
      for (long long i = 0; i < report_.params.sample_pairs; ++i) {
        std::size_t a = rng.below(m), b = rng.below(m - 1);
        if (b >= a) ++b;
        consider(std::min(a, b), std::max(a, b));
      }
    } else {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) consider(a, b);
    }
    observe(check, label(ba, bb), bv, target);
  }

  void all_codegrees(const Incidence& inc, const std::string& prefix, const std::string& b_check = "") {
    codegrees(inc.adj_a, inc.adj_b.size(), prefix + "codegree-" + inc.a_name, inc.a_name);
    codegrees(inc.adj_b, inc.adj_a.size(), b_check.empty() ? prefix + "codegree-" + inc.b_name : b_check, inc.b_name);
  }

  TypicalityReport finish(std::string reading) {
    report_.reading = std::move(reading);
    report_.witnesses = worst_;
    report_.pass = true;
    report_.margin = std::numeric_limits<double>::infinity();
    for (const Witness& w : worst_) {
      report_.pass = report_.pass && w.inside();
      report_.margin = std::min(report_.margin, w.slack());
    }
    if (worst_.empty()) report_.margin = 0;
    return report_;
  }

 private:
  TypicalityReport report_;
  std::vector<Witness> worst_;
  double scale_ = 0, dev_ = 0;
};

TypicalityParams resolved(const ColoredBipartiteGraph& g, TypicalityParams p) {
  if (p.n <= 0) p.n = g.nx();
  return p;
}

}  // namespace

TypicalityReport check_regular(const ColoredBipartiteGraph& g, const TypicalityParams& params) {
  Checker ck(resolved(g, params), "regular");
  Incidence inc = from_graph(g);
  ck.sizes(inc, "");
  ck.degrees(inc, "");
  return ck.finish("part sizes in the n-band and every degree in the pn-band");
}

TypicalityReport check_typical(const ColoredBipartiteGraph& g, const TypicalityParams& params) {
  Checker ck(resolved(g, params), "typical");
  Incidence inc = from_graph(g);
  ck.sizes(inc, "");
  ck.degrees(inc, "");
  ck.all_codegrees(inc, "");
  return ck.finish("regular, plus every same-side codegree in the p^2 n band");
}

TypicalityReport check_coloured(const ColoredBipartiteGraph& g, const TypicalityParams& params, ColouredLevel level) {
  const bool typical = level == ColouredLevel::Typical;
  Checker ck(resolved(g, params), typical ? "coloured-typical" : "coloured-regular");
  Incidence inc = from_graph(g);
  const std::vector<Id> colours = g.active_colors();
  Incidence xc = shadow(g, Side::X, colours), yc = shadow(g, Side::Y, colours);
  ck.sizes(inc, "");
  ck.degrees(inc, "");
  ck.observe("colour-count", "|C|", static_cast<double>(colours.size()), ck.scale());
  for (Id c : colours)
    ck.observe("colour-size", "c=" + std::to_string(c), g.color_size(c), params.p * ck.scale());
  for (const auto* sh : {&xc, &yc}) {
    const std::string prefix = "shadow-" + sh->a_name + "C:";
    ck.degrees(*sh, prefix);
  }
  if (typical) {
    ck.all_codegrees(inc, "");
    ck.all_codegrees(xc, "shadow-XC:", "colour-pairs-X");
    ck.all_codegrees(yc, "shadow-YC:", "colour-pairs-Y");
  }
  return ck.finish(typical ? "coloured-typical read as: typical G; typical colour shadows G_{X,C}, G_{Y,C}; |C| in the "
                             "n-band; each colour class in the pn-band; colour-pair intersections on each side in "
                             "the p^2 n band"
                           : "coloured-regular read as: regular G; regular colour shadows G_{X,C}, G_{Y,C}; |C| in "
                             "the n-band; each colour class in the pn-band");
}

const char* status_name(AuditResult::Status s) {
  switch (s) {
    case AuditResult::Status::Pass: return "pass";
    case AuditResult::Status::Fail: return "fail";
    default: return "precondition-violated";
  }
}

AuditResult discrepancy_audit(const ColoredBipartiteGraph& h, std::span<const Id> a, std::span<const Id> b, double p,
                              double gamma, double n, double eps) {
  AuditResult r;
  long long count = 0;
  for (Id x : a)
    for (Id y : b)
      if (h.color_between(x, y) != kNone) ++count;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  r.measured = std::abs(static_cast<double>(count) - p * na * nb);
  r.bound = 2 * std::sqrt(na) * nb * std::sqrt(gamma) * std::sqrt(n) * p;
  if (nb < 1 / (gamma * p * p)) {
    r.status = AuditResult::Status::PreconditionViolated;
    r.note = "|B| below 1/(gamma p^2)";
  } else if (8 * std::pow(n, -eps) > gamma) {
    r.status = AuditResult::Status::PreconditionViolated;
    r.note = "gamma below 8 n^-eps";
  } else {
    r.status = r.within_bound() ? AuditResult::Status::Pass : AuditResult::Status::Fail;
  }
  return r;
}

AuditResult low_degree_census(const ColoredBipartiteGraph& g, std::span<const Id> colours, double p, double n,
                              double eps) {
  AuditResult r;
  const double d = static_cast<double>(colours.size());
  std::vector<int> dx(static_cast<std::size_t>(g.nx()), 0), dy(static_cast<std::size_t>(g.ny()), 0);
  for (Id c : colours)
    for (std::int32_t i : g.color_class(c)) {
      ++dx[static_cast<std::size_t>(g.edge(i).x)];
      ++dy[static_cast<std::size_t>(g.edge(i).y)];
    }
  const double cut = p * d / 2;
  long long low = 0;
  for (int v : dx) low += v < cut;
  for (int v : dy) low += v < cut;
  r.measured = static_cast<double>(low);
  r.bound = d > 0 ? 32 * n / (p * p * d) : std::numeric_limits<double>::infinity();
  const double mid = 8 * p * p * d;
  if (mid < 16 || mid > std::pow(n, eps)) {
    r.status = AuditResult::Status::PreconditionViolated;
    r.note = "needs 16 <= 8 p^2 d <= n^eps";
  } else {
    r.status = r.within_bound() ? AuditResult::Status::Pass : AuditResult::Status::Fail;
  }
  return r;
}

ColorClasses classify_colors(const ColoredBipartiteGraph& g, double eps0, double n) {
  if (n <= 0) n = g.nx();
  ColorClasses out;
  for (Id c = 0; c < g.num_colors(); ++c) {
    const double size = g.color_size(c);
    if (size == 0) continue;
    if (size > (1 - eps0) * n)
      out.large.push_back(c);
    else if (size < n / 12)
      out.tiny.push_back(c);
    else
      out.medium.push_back(c);
  }
  out.t = std::max<Id>(0, static_cast<Id>(std::llround(n)) - static_cast<Id>(out.large.size()));
  return out;
}

}  // namespace rainbow
