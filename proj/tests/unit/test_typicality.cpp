#include <doctest.h>

#include "rainbow/generators.hpp"
#include "rainbow/typicality.hpp"

using namespace rainbow;

namespace {
ColoredBipartiteGraph kn(Id n) { return latin_to_graph(cayley_cyclic(n)); }
}  // namespace

TEST_CASE("coloured K_nn is coloured (1,1,n)-typical") {
  for (Id n : {16, 20}) {
    TypicalityParams p;
    p.eps = 1;
    p.p = 1;
    CHECK(check_coloured(kn(n), p, ColouredLevel::Typical).pass);
    CHECK(check_coloured(kn(n), p, ColouredLevel::Regular).pass);
    CHECK(check_typical(kn(n), p).pass);
    CHECK(check_regular(kn(n), p).pass);
  }
}

TEST_CASE("K_nn minus a perfect matching has codegrees n-2") {
  const Id n = 20;
  std::vector<Edge> e;
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y)
      if (x != y) e.push_back({x, y, (x + y) % n});
  const ColoredBipartiteGraph g(n, n, n, e);
  TypicalityParams p;
  p.eps = 0.5;
  p.p = (n - 1.0) / n;
  const TypicalityReport r = check_typical(g, p);
  CHECK(r.pass);
  for (const Witness& w : r.witnesses)
    if (w.check.rfind("codegree", 0) == 0) CHECK(w.value == doctest::Approx(n - 2));
}

TEST_CASE("a star fails with a low-degree witness") {
  const Id n = 10;
  std::vector<Edge> e;
  for (Id y = 0; y < n; ++y) e.push_back({0, y, y});
  TypicalityParams p;
  p.p = 1;
  const TypicalityReport r = check_regular(ColoredBipartiteGraph(n, n, n, e), p);
  CHECK(!r.pass);
  CHECK(r.margin < 0);
  bool low = false;
  for (const Witness& w : r.witnesses) low = low || (!w.inside() && w.value == 0);
  CHECK(low);
}

TEST_CASE("fresh symbols break coloured regularity") {
  const ColoredBipartiteGraph g = latin_to_graph(augment_fresh_symbols(cayley_cyclic(4), 1));
  TypicalityParams p;
  p.p = 1;
  const TypicalityReport r = check_coloured(g, p, ColouredLevel::Regular);
  CHECK(!r.pass);
  bool fresh = false;
  for (const Witness& w : r.witnesses)
    if (!w.inside() && w.check == "colour-size") fresh = w.value == 1;
  CHECK(fresh);
  CHECK(!check_coloured(ColoredBipartiteGraph(4, 4, 0, {}), p, ColouredLevel::Regular).pass);
}

TEST_CASE("typicality is monotone in eps") {
  const ColoredBipartiteGraph g = latin_to_graph(random_latin(12, 4));
  TypicalityParams loose, tight;
  loose.eps = 0.5;
  tight.eps = 0.25;
  if (check_coloured(g, loose, ColouredLevel::Typical).pass) {
    CHECK(check_coloured(g, tight, ColouredLevel::Typical).pass);
    CHECK(check_coloured(g, loose, ColouredLevel::Regular).pass);
    CHECK(check_regular(g, loose).pass);
  }
}

TEST_CASE("discrepancy audit") {
  const Id n = 32;
  std::vector<Id> all(n);
  for (Id i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const AuditResult full = discrepancy_audit(kn(n), all, all, 1, 0.5, n, 0.5);
  CHECK(full.measured == 0);
  CHECK(full.within_bound());
  CHECK(discrepancy_audit(kn(n), {}, all, 1, 0.5, n, 0.5).measured == 0);

  // A dense 16x16 block planted in an otherwise 1-regular graph.
  std::vector<Edge> e;
  for (Id x = 0; x < 16; ++x)
    for (Id y = 0; y < 16; ++y) e.push_back({x, y, (x + y) % 16});
  for (Id x = 16; x < 256; ++x) e.push_back({x, x, 16 + x});
  const ColoredBipartiteGraph planted(256, 256, 272, e);
  std::vector<Id> block(16);
  for (Id i = 0; i < 16; ++i) block[static_cast<std::size_t>(i)] = i;
  const double p = static_cast<double>(e.size()) / (256.0 * 256.0);
  const AuditResult r = discrepancy_audit(planted, block, block, p, 8 * std::pow(256.0, -0.5), 256, 0.5);
  CHECK(!r.within_bound());
}

TEST_CASE("discrepancy audit on a Steiner-derived typical graph") {
  const ColoredBipartiteGraph g = sts_shadow_graph(bose_sts(27));
  Rng rng(8);
  const double n = 27, p = 26.0 / 27, eps = 0.5, gamma = 8 * std::pow(n, -eps);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Id> a, b;
    for (Id v = 0; v < 27; ++v) {
      if (rng.bernoulli(0.5)) a.push_back(v);
      if (rng.bernoulli(0.7)) b.push_back(v);
    }
    const AuditResult r = discrepancy_audit(g, a, b, p, gamma, n, eps);
    if (r.status == AuditResult::Status::PreconditionViolated) continue;
    ++checked;
    CHECK(r.within_bound());
  }
  CHECK(checked > 0);
}

TEST_CASE("low degree census") {
  const Id n = 64;
  std::vector<Id> all(n);
  for (Id i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const AuditResult r = low_degree_census(kn(n), all, 1, n, 1);
  CHECK(r.measured == 0);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    auto cols = all;
    rng.shuffle(cols);
    cols.resize(16);
    const AuditResult c = low_degree_census(kn(n), cols, 1, n, 1);
    CHECK(c.measured <= 32.0 * n / 16);
  }
  const AuditResult single = low_degree_census(kn(n), std::vector<Id>{0}, 1, n, 1);
  CHECK(single.status == AuditResult::Status::PreconditionViolated);
  CHECK(single.measured == 0);
}

TEST_CASE("colour classification") {
  const ColorClasses k = classify_colors(kn(16), 0.1);
  CHECK(k.large.size() == 16);
  CHECK(k.t == 0);
  // One-edge colours are tiny only once n/12 exceeds 1.
  const ColoredBipartiteGraph fresh = latin_to_graph(augment_fresh_symbols(cayley_cyclic(24), 2));
  const ColorClasses f = classify_colors(fresh, 0.1);
  CHECK(f.tiny.size() == 48);
  CHECK(f.large.size() == 24);
  const ColorClasses f8 = classify_colors(latin_to_graph(augment_fresh_symbols(cayley_cyclic(8), 2)), 0.1);
  CHECK(f8.tiny.empty());
  CHECK(f8.medium.size() == 24);  // 16 fresh plus 8 thinned symbols
  CHECK(f.large.size() + f.medium.size() + f.tiny.size() == fresh.active_colors().size());
  // A colour with ceil(n/12) edges is medium, not tiny.
  std::vector<Edge> e{{0, 0, 0}, {1, 1, 0}, {2, 2, 1}};
  const ColorClasses b = classify_colors(ColoredBipartiteGraph(24, 24, 2, e), 0.1);
  CHECK(b.medium == std::vector<Id>{0});
  CHECK(b.tiny == std::vector<Id>{1});
}
