#include "rainbow/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "rainbow/generators.hpp"
#include "rainbow/nibble.hpp"
#include "rainbow/typicality.hpp"

namespace rainbow {

namespace {

using Clock = std::chrono::steady_clock;

std::size_t at(Id i) { return static_cast<std::size_t>(i); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Attempt {
  SolveReport report;
  bool accept = false;  // good enough to stop restarting
};

// Runs attempts 0, 1, ... (in batches of cfg.jobs threads). The winner is the
// first attempt that is acceptable, otherwise the largest (earliest on ties),
// so the result does not depend on the batch size.
SolveReport best_of(const SolveConfig& cfg, const std::function<Attempt(int, Rng&)>& attempt) {
  const auto t0 = Clock::now();
  const int total = std::max(1, cfg.restarts);
  const int jobs = std::max(1, cfg.jobs);
  std::vector<std::optional<Attempt>> done(static_cast<std::size_t>(total));
  int ran = 0;
  std::optional<int> winner;
  while (ran < total && !winner) {
    const int batch = std::min(jobs, total - ran);
    auto work = [&](int r) {
      Rng rng = Rng(cfg.seed).fork(stream::kRestart + static_cast<std::uint64_t>(r));
      done[static_cast<std::size_t>(r)] = attempt(r, rng);
    };
    if (batch == 1) {
      work(ran);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(batch));
      for (int i = 0; i < batch; ++i)
        pool.emplace_back([&, i] {
          try {
            work(ran + i);
          } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
          }
        });
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (int r = ran; r < ran + batch; ++r)
      if (done[static_cast<std::size_t>(r)]->accept) {
        winner = r;
        break;
      }
    ran += batch;
  }
  if (!winner) {
    winner = 0;
    for (int r = 1; r < ran; ++r)
      if (done[static_cast<std::size_t>(r)]->report.size > done[static_cast<std::size_t>(*winner)]->report.size)
        winner = r;
  }
  SolveReport rep = std::move(done[static_cast<std::size_t>(*winner)]->report);
  rep.attempts = ran;
  rep.best_attempt = *winner;
  rep.seconds = seconds_since(t0);
  rep.seed = cfg.seed;
  rep.k = cfg.k;
  return rep;
}

void fill_balanced(SolveReport& rep, const ColoredBipartiteGraph& root, const SolveConfig& cfg) {
  rep.size = static_cast<long long>(rep.matching.size());
  rep.uncovered = rep.n - rep.size;
  rep.uncovered_x.clear();
  rep.uncovered_y.clear();
  rep.uncovered_colours.clear();
  for (Id x = 0; x < root.nx(); ++x)
    if (!rep.matching.covers(Side::X, x)) rep.uncovered_x.push_back(x);
  for (Id y = 0; y < root.ny(); ++y)
    if (!rep.matching.covers(Side::Y, y)) rep.uncovered_y.push_back(y);
  for (Id c = 0; c < root.num_colors(); ++c)
    if (root.color_size(c) > 0 && !rep.matching.uses_color(c)) rep.uncovered_colours.push_back(c);
  rep.bound = bound_value(static_cast<double>(rep.n), cfg.k);
  rep.within_bound = rep.uncovered <= rep.bound;
}

bool perfect(const RainbowMatching& m, const ColoredBipartiteGraph& g) {
  return m.size() >= std::min<std::size_t>(
                         {static_cast<std::size_t>(g.nx()), static_cast<std::size_t>(g.ny()), g.active_colors().size()});
}

void record_augment(SolveReport& rep, const AugmentResult& aug) {
  rep.exhausted = aug.exhausted;
  rep.shapes = aug.shapes;
  if (aug.timed_out) rep.notes.push_back("augmentation stopped at the time limit");
  if (!aug.ledger_ok) rep.notes.push_back("edit ledger exceeded the per-iteration cap");
}

AugmentBudget budget_for(const SolveConfig& cfg) {
  AugmentBudget b;
  b.d = cfg.d;
  b.wall_clock_s = cfg.time_limit_s;
  b.fallback_nodes = cfg.fallback_nodes;
  return b;
}


// Shared path of solve_steiner and the untyped solve_hypergraph: random
// thirds of the points (minus `dropped`), tripartite graph, pipeline, lift.
SolveReport solve_by_partition(const std::string& kind, Id n, const std::vector<Triple>& triples,
                               const std::vector<Id>& dropped, const SolveConfig& cfg) {
  std::set<Triple> known;
  for (Triple t : triples) {
    std::sort(t.begin(), t.end());
    known.insert(t);
  }
  const LinearHypergraph3 hg(n, triples);
  std::vector<Id> points;
  for (Id v = 0; v < n; ++v)
    if (std::find(dropped.begin(), dropped.end(), v) == dropped.end()) points.push_back(v);

  auto attempt = [&](int, Rng& rng) {
    Attempt a;
    SolveReport& rep = a.report;
    rep.kind = kind;
    rep.n = n;
    SplitSpec spec;
    spec.mode = SplitMode::ConditionedExact;
    Rng split_rng = rng.fork(stream::kSplit);
    const auto parts = random_split(points, spec, split_rng);
    const ColoredBipartiteGraph host = hypergraph_to_graph(hg, parts, dropped);
    PipelineRun run = run_pipeline(host, nullptr, cfg, rng);
    rep.stages = {{"nibble", run.after_nibble}, {"greedy", run.after_greedy},
                  {"augment", static_cast<long long>(run.matching.size())}};
    std::vector<char> covered(at(n), 0);
    for (const Edge& e : run.matching.raw()) {
      const Edge root = host.to_root(e);
      Triple t{root.x, root.y, root.c};
      std::sort(t.begin(), t.end());
      if (!known.count(t)) throw std::logic_error("lifted triple is not in the system");
      for (Id v : t) {
        if (covered[at(v)]) throw std::logic_error("lifted triples overlap");
        covered[at(v)] = 1;
      }
      rep.triples.push_back(t);
      rep.matching.add(root);
    }
    std::sort(rep.triples.begin(), rep.triples.end());
    rep.size = static_cast<long long>(rep.triples.size());
    rep.uncovered = n - 3 * rep.size;
    for (Id v = 0; v < n; ++v)
      if (!covered[at(v)]) rep.uncovered_points.push_back(v);
    record_augment(rep, run.augment);
    a.accept = rep.size >= n / 3 || rep.uncovered <= cfg.accept_uncovered;
    return a;
  };
  SolveReport rep = best_of(cfg, attempt);
  rep.bound = 3 * bound_value(n, cfg.k);
  rep.within_bound = rep.uncovered <= rep.bound;
  if (!dropped.empty())
    rep.notes.push_back("n = 1 mod 6: point " + std::to_string(dropped.front()) +
                        " is set aside before partitioning (any point would do; all have equal degree)");
  return rep;
}

}  // namespace

long long bound_value(double n, double k) {
  if (n < 3) return static_cast<long long>(std::max(0.0, n));
  return static_cast<long long>(std::ceil(k * std::log(n) / std::log(std::log(n)) - 1e-12));
}

PipelineRun run_pipeline(const ColoredBipartiteGraph& host, const ColoredBipartiteGraph* guide, const SolveConfig& cfg,
                         Rng& rng) {
  const ColoredBipartiteGraph& g = guide ? *guide : host;
  NibbleConfig nc;
  nc.q = cfg.q;
  nc.gamma = cfg.gamma;
  nc.max_rounds = cfg.max_rounds;
  Rng nibble_rng = rng.fork(stream::kNibble);
  const ThreeSplit ts = three_split_nibble(g, nc, nibble_rng);

  const RootIndex hidx(host);
  GuideStructure gs;
  gs.x_part.assign(at(host.nx()), -1);
  gs.y_part.assign(at(host.ny()), -1);
  gs.pool_colour.assign(at(host.num_colors()), 0);
  for (Id x = 0; x < g.nx(); ++x)
    if (Id hx = hidx.x(g.label(Side::X, x)); hx != kNone) gs.x_part[at(hx)] = ts.x_part[at(x)];
  for (Id y = 0; y < g.ny(); ++y)
    if (Id hy = hidx.y(g.label(Side::Y, y)); hy != kNone) gs.y_part[at(hy)] = ts.y_part[at(y)];
  for (Id c = 0; c < g.num_colors(); ++c)
    if (Id hc = hidx.c(g.color_label(c)); hc != kNone && g.color_size(c) > 0) gs.pool_colour[at(hc)] = 1;

  PipelineRun run;
  RainbowMatching m;
  const RainbowMatching nibbled = ts.combined();
  for (const Edge& e : nibbled.raw()) m.add(hidx.local(g.to_root(e)));
  run.after_nibble = static_cast<long long>(m.size());

  std::vector<std::int32_t> order(host.num_edges());
  std::iota(order.begin(), order.end(), 0);
  Rng greedy_rng = rng.fork(stream::kGreedy);
  greedy_rng.shuffle(order);
  for (std::int32_t idx : order)
    if (m.can_add(host.edge(idx))) m.add(host.edge(idx));
  run.after_greedy = static_cast<long long>(m.size());

  Rng aug_rng = rng.fork(stream::kAugment);
  run.augment = augment_to_max(host, gs, std::move(m), budget_for(cfg), aug_rng);
  run.matching = run.augment.matching;
  return run;
}

SolveReport solve_latin(const LatinArray& l, const SolveConfig& cfg) {
  if (!l.is_latin_square()) return solve_many_symbols(l, cfg);
  const ColoredBipartiteGraph host = latin_to_graph(l);
  auto attempt = [&](int, Rng& rng) {
    Attempt a;
    SolveReport& rep = a.report;
    rep.kind = "latin";
    rep.n = l.n();
    PipelineRun run = run_pipeline(host, nullptr, cfg, rng);
    rep.stages = {{"nibble", run.after_nibble}, {"greedy", run.after_greedy},
                  {"augment", static_cast<long long>(run.matching.size())}};
    rep.matching = run.matching;
    fill_balanced(rep, host, cfg);
    record_augment(rep, run.augment);
    a.accept = perfect(rep.matching, host) || rep.uncovered <= cfg.accept_uncovered;
    return a;
  };
  return best_of(cfg, attempt);
}

SolveReport solve_many_symbols(const LatinArray& l, const SolveConfig& cfg) {
  const ColoredBipartiteGraph host = latin_to_graph(l);
  const double n = l.n();
  const ColorClasses cls = classify_colors(host, cfg.eps0, n);
  if (cls.medium.empty() && cls.tiny.empty() && l.is_latin_square()) {
    SolveReport rep = solve_latin(l, cfg);
    rep.notes.push_back("no small colours: solved as a Latin square");
    return rep;
  }
  const int d = cfg.d > 0 ? cfg.d : default_pool_size(n);
  std::vector<char> large(at(host.num_colors()), 0);
  for (Id c : cls.large) large[at(c)] = 1;
  // V_small: vertices with more than 2 sqrt(eps0) n small-colour edges.
  const double small_limit = 2 * std::sqrt(cfg.eps0) * n;
  std::vector<int> small_x(at(host.nx()), 0), small_y(at(host.ny()), 0);
  for (const Edge& e : host.edges())
    if (!large[at(e.c)] && host.color_size(e.c) > 0) {
      ++small_x[at(e.x)];
      ++small_y[at(e.y)];
    }

  auto attempt = [&](int, Rng& rng) {
    Attempt a;
    SolveReport& rep = a.report;
    rep.kind = "array";
    rep.n = l.n();
    Rng small_rng = rng.fork(stream::kGenerate);
    const SmallColourResult m0 = small_color_matching(host, cfg.eps0, d, small_rng, n);
    if (!m0.feasible)
      rep.notes.push_back("small-colour target " + std::to_string(m0.target) + " not met; continuing with " +
                          std::to_string(m0.achieved));
    if (static_cast<double>(cls.large.size()) < (1 - cfg.eps0) * n)
      rep.notes.push_back("fewer than (1 - eps0) n large colours; pools are thin and the fallback search carries the run");

    std::vector<Id> xs, ys, cs, gx, gy, gc;
    for (Id x = 0; x < host.nx(); ++x)
      if (!m0.matching.covers(Side::X, x)) {
        xs.push_back(x);
        if (small_x[at(x)] <= small_limit) gx.push_back(x);
      }
    for (Id y = 0; y < host.ny(); ++y)
      if (!m0.matching.covers(Side::Y, y)) {
        ys.push_back(y);
        if (small_y[at(y)] <= small_limit) gy.push_back(y);
      }
    for (Id c = 0; c < host.num_colors(); ++c)
      if (!m0.matching.uses_color(c)) {
        cs.push_back(c);
        if (large[at(c)]) gc.push_back(c);
      }
    const ColoredBipartiteGraph rest = host.induced(xs, ys, cs);
    const ColoredBipartiteGraph guide = host.induced(gx, gy, gc);
    PipelineRun run = run_pipeline(rest, &guide, cfg, rng);

    rep.matching = m0.matching;
    for (const Edge& e : run.matching.raw()) rep.matching.add(rest.to_root(e));
    const auto base = static_cast<long long>(m0.matching.size());
    rep.stages = {{"small", base},
                  {"nibble", base + run.after_nibble},
                  {"greedy", base + run.after_greedy},
                  {"augment", static_cast<long long>(rep.matching.size())}};
    fill_balanced(rep, host, cfg);
    record_augment(rep, run.augment);
    a.accept = perfect(rep.matching, host) || rep.uncovered <= cfg.accept_uncovered;
    return a;
  };
  return best_of(cfg, attempt);
}

SolveReport solve_steiner(const SteinerTripleSystem& s, const SolveConfig& cfg) {
  std::vector<Id> dropped;
  if (s.n() % 6 == 1 && s.n() > 1) dropped.push_back(0);
  SolveReport rep = solve_by_partition("steiner", s.n(), s.triples(), dropped, cfg);
  return rep;
}

SolveReport solve_hypergraph(const LinearHypergraph3& h, const SolveConfig& cfg) {
  if (!h.tripartite()) {
    const Id n = h.num_vertices();
    const bool steiner = static_cast<long long>(h.edges().size()) * 6 == static_cast<long long>(n) * (n - 1);
    std::vector<Id> dropped;
    if (steiner && n % 6 == 1 && n > 1) dropped.push_back(0);
    SolveReport rep = solve_by_partition("hypergraph", n, h.edges(), dropped, cfg);
    return rep;
  }
  const ColoredBipartiteGraph host = hypergraph_to_graph(h, h.parts());
  TypicalityParams tp;
  tp.n = host.nx();
  tp.p = host.nx() && host.ny() ? static_cast<double>(host.num_edges()) / (static_cast<double>(host.nx()) * host.ny())
                                 : 0;
  tp.sample_pairs = 4000;
  tp.seed = cfg.seed;
  const nlohmann::json audit = to_json(check_typical(host, tp));

  auto attempt = [&](int, Rng& rng) {
    Attempt a;
    SolveReport& rep = a.report;
    rep.kind = "hypergraph";
    rep.n = host.nx();
    PipelineRun run = run_pipeline(host, nullptr, cfg, rng);
    rep.stages = {{"nibble", run.after_nibble}, {"greedy", run.after_greedy},
                  {"augment", static_cast<long long>(run.matching.size())}};
    std::vector<char> covered(at(h.num_vertices()), 0);
    for (const Edge& e : run.matching.raw()) {
      const Edge root = host.to_root(e);
      rep.matching.add(root);
      rep.triples.push_back({root.x, root.y, root.c});
      covered[at(root.x)] = covered[at(root.y)] = covered[at(root.c)] = 1;
    }
    std::sort(rep.triples.begin(), rep.triples.end());
    rep.size = static_cast<long long>(rep.triples.size());
    rep.uncovered = rep.n - rep.size;
    for (Id v = 0; v < h.num_vertices(); ++v)
      if (!covered[at(v)]) rep.uncovered_points.push_back(v);
    record_augment(rep, run.augment);
    a.accept = perfect(run.matching, host) || rep.uncovered <= cfg.accept_uncovered;
    return a;
  };
  SolveReport rep = best_of(cfg, attempt);
  rep.bound = bound_value(static_cast<double>(rep.n), cfg.k);
  rep.within_bound = rep.uncovered <= rep.bound;
  rep.premise_audit = audit;
  return rep;
}

nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json j;
  j["version"] = 1;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["stages"] = nlohmann::json::array();
  for (const Stage& s : r.stages) j["stages"].push_back({{"name", s.name}, {"size", s.size}});
  j["size"] = r.size;
  j["uncovered"] = r.uncovered;
  const bool triple_kind = r.kind == "steiner" || r.kind == "hypergraph";
  if (!triple_kind) {
    nlohmann::json m = nlohmann::json::array();
    for (const Edge& e : r.matching.edges()) m.push_back({{"x", e.x}, {"y", e.y}, {"c", e.c}});
    j["matching"] = m;
    j["uncovered_x"] = r.uncovered_x;
    j["uncovered_y"] = r.uncovered_y;
    j["uncovered_colours"] = r.uncovered_colours;
  } else {
    j["triples"] = r.triples;
    j["uncovered_points"] = r.uncovered_points;
  }
  j["seconds"] = r.seconds;
  j["seed"] = r.seed;
  j["k"] = r.k;
  j["bound"] = r.bound;
  j["within_bound"] = r.within_bound;
  j["exhausted"] = r.exhausted;
  j["attempts"] = r.attempts;
  j["best_attempt"] = r.best_attempt;
  j["plan_shapes"] = r.shapes;
  j["notes"] = r.notes;
  if (r.premise_audit) j["premise_audit"] = *r.premise_audit;
  return j;
}

}  // namespace rainbow
