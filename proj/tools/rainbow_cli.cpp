// rainbow: command-line front end. Data goes to stdout or the given paths,
// logs to stderr. Exit codes: 0 ok, 1 validation failure, 2 usage error,
// 3 infeasible precondition.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rainbow/augmentation.hpp"
#include "rainbow/expansion.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/io.hpp"
#include "rainbow/nibble.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solvers.hpp"
#include "rainbow/typicality.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kValidation = 1, kUsage = 2, kInfeasible = 3;

void log(const std::string& msg) { std::cerr << "rainbow: " << msg << '\n'; }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

// --cfg path per subcommand, applied after parsing.
std::map<CLI::App*, std::string> cfg_paths;

// key = value lines ('#' comments, '_' or '-' in keys); explicit flags win.
void apply_cfg(CLI::App* sub, const std::string& path) {
  std::istringstream in(io::read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    auto trim = [](std::string t) {
      const auto a = t.find_first_not_of(" \t\r"), b = t.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "cfg")
      throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(trim(line.substr(eq + 1)));
    opt->run_callback();
  }
}

void add_solve_options(CLI::App* sub, SolveConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Run seed");
  sub->add_option("--restarts", cfg.restarts, "Independent attempts (fresh partitions for triple systems)");
  sub->add_option("--k", cfg.k, "Bound constant for ceil(k ln n / ln ln n)");
  sub->add_option("--eps0", cfg.eps0, "Large-colour threshold");
  sub->add_option("--q", cfg.q, "Nibble bite parameter");
  sub->add_option("--gamma", cfg.gamma, "Nibble stops at |X|^-gamma uncovered");
  sub->add_option("--d", cfg.d, "Colour pool size (0 = ceil(ln n / ln ln n))");
  sub->add_option("--accept-uncovered", cfg.accept_uncovered, "Stop restarting at this many uncovered");
  sub->add_option("--time-limit", cfg.time_limit_s, "Seconds per attempt for the augmentation stage");
  sub->add_option("--fallback-nodes", cfg.fallback_nodes, "Node budget of the fallback search");
  sub->add_option("--jobs", cfg.jobs, "Attempts run concurrently");
  sub->add_option("--cfg", cfg_paths[sub], "key = value file mirroring these flags (flags override it)");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

ColoredBipartiteGraph load_any_graph(const std::string& path) { return io::load_graph(path); }

RainbowMatching load_matching(const std::string& path) {
  const json j = io::read_json(path);
  if (j.is_object() && j.contains("matching")) return RainbowMatching(io::edges_from_json(j.at("matching")));
  return RainbowMatching(io::edges_from_json(j));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rainbow matchings in properly edge-coloured bipartite graphs, Latin transversals and "
               "Steiner triple system matchings"};
  app.require_subcommand(1);

  if (const char* env = std::getenv("RAINBOW_SEED"))
    log(std::string("RAINBOW_SEED=") + env + " is informational only; pass --seed to set the seed");

  // gen
  std::string gen_kind = "random-latin", gen_out;
  int gen_n = 0, gen_r = -1;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"cyclic", "random-latin", "fresh-augment", "bose", "skolem"}));
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--r", gen_r, "Rows of fresh symbols (fresh-augment; default ceil(ln n / ln ln n))");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // solve / oracle
  SolveConfig solve_cfg;
  std::string solve_kind = "latin", solve_in, solve_report;
  auto* solve = app.add_subcommand("solve", "Run the solver pipeline on an instance");
  solve->add_option("--kind", solve_kind)->check(CLI::IsMember({"latin", "array", "steiner", "hypergraph"}));
  solve->add_option("--in", solve_in)->required();
  solve->add_option("--report", solve_report, "Report path (default stdout)");
  add_solve_options(solve, solve_cfg);

  std::string oracle_kind = "latin", oracle_in, oracle_report;
  int oracle_cap = 0;
  auto* oracle = app.add_subcommand("oracle", "Exact maximum by backtracking (small instances)");
  oracle->add_option("--kind", oracle_kind)->check(CLI::IsMember({"latin", "array", "graph", "steiner", "hypergraph"}));
  oracle->add_option("--in", oracle_in)->required();
  oracle->add_option("--cap", oracle_cap, "Size cap (default 9 for graphs, 15 for triple systems)");
  oracle->add_option("--report", oracle_report);

  // typicality
  std::string typ_in, typ_pred = "typical";
  TypicalityParams typ;
  auto* typicality = app.add_subcommand("typicality", "Check a regularity/typicality predicate");
  typicality->add_option("--in", typ_in)->required();
  typicality->add_option("--pred", typ_pred)
      ->check(CLI::IsMember({"regular", "typical", "coloured-regular", "coloured-typical"}));
  typicality->add_option("--eps", typ.eps);
  typicality->add_option("--p", typ.p);
  typicality->add_option("--n", typ.n);
  typicality->add_option("--sample", typ.sample_pairs, "Codegree pairs sampled per side above 1500 vertices");
  typicality->add_option("--seed", typ.seed);

  // nibble
  std::string nib_in, nib_stats, nib_out;
  NibbleConfig nib;
  std::uint64_t nib_seed = 0;
  auto* nibble = app.add_subcommand("nibble", "Iterated nibble on a coloured graph");
  nibble->add_option("--in", nib_in)->required();
  nibble->add_option("--q", nib.q);
  nibble->add_option("--rounds", nib.max_rounds);
  nibble->add_option("--stop", nib.stop_fraction, "Stop at this uncovered fraction (default |X|^-1/2)");
  nibble->add_option("--seed", nib_seed);
  nibble->add_option("--stats", nib_stats, "Per-round CSV path");
  nibble->add_option("--out", nib_out, "Matching JSON path (default stdout)");

  // expand
  std::string exp_in, exp_matching;
  ExpanderParams ep;
  int exp_t = 4, exp_trials = 10;
  std::uint64_t exp_seed = 0;
  auto* expand = app.add_subcommand("expand", "Probe the expansion of a colour pool against a matching");
  expand->add_option("--in", exp_in)->required();
  expand->add_option("--matching", exp_matching, "Matching JSON (default: a nibble matching)");
  expand->add_option("--d", ep.d);
  expand->add_option("--A", ep.A);
  expand->add_option("--eps", ep.eps);
  expand->add_option("--t", exp_t);
  expand->add_option("--trials", exp_trials);
  expand->add_option("--seed", exp_seed);

  // augment
  std::string aug_graph, aug_matching, aug_trace, aug_out;
  double aug_budget = 60;
  int aug_restarts = 2;
  std::uint64_t aug_seed = 0;
  auto* augment = app.add_subcommand("augment", "Grow a rainbow matching by switchings");
  augment->add_option("--input-graph", aug_graph)->required();
  augment->add_option("--input-matching", aug_matching, "Starting matching (default empty)");
  augment->add_option("--budget", aug_budget, "Wall-clock seconds");
  augment->add_option("--restarts", aug_restarts, "Pool rotations before the fallback search");
  augment->add_option("--seed", aug_seed);
  augment->add_option("--trace", aug_trace, "Per-iteration CSV path");
  augment->add_option("--out", aug_out, "Matching JSON path (default stdout)");

  // bench
  BenchSpec bench_spec;
  std::string bench_kinds = "latin", bench_grid, bench_seeds = "1", bench_out, bench_summary_path;
  auto* bench = app.add_subcommand("bench", "Scaling study: uncovered vs ceil(k ln n / ln ln n)");
  bench->add_option("--kinds", bench_kinds, "Comma list of latin,cyclic,array,steiner,hypergraph");
  bench->add_option("--grid", bench_grid, "Comma list of n values");
  bench->add_option("--seeds", bench_seeds, "Comma list of seeds");
  bench->add_option("--out", bench_out, "CSV path (default stdout)");
  bench->add_option("--summary", bench_summary_path, "Summary CSV path (default stderr)");
  bench->add_flag("--timing", bench_spec.timing, "Fill wall_ms (the CSV is then no longer byte-stable)");
  add_solve_options(bench, bench_spec.cfg);

  // verify
  std::string ver_kind = "latin", ver_instance, ver_matching;
  auto* verify_cmd = app.add_subcommand("verify", "Re-validate a claimed matching independently of the solver");
  verify_cmd->add_option("--kind", ver_kind)
      ->check(CLI::IsMember({"latin", "array", "cyclic", "graph", "steiner", "hypergraph"}));
  verify_cmd->add_option("--instance", ver_instance)->required();
  verify_cmd->add_option("--matching", ver_matching)->required();

  try {
    app.parse(argc, argv);
    for (auto& [sub, path] : cfg_paths)
      if (sub->parsed() && !path.empty()) apply_cfg(sub, path);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const Error& e) {
    log(e.code() + ": " + e.what());
    return kUsage;
  }

  try {
    if (*gen) {
      std::string text;
      if (gen_kind == "cyclic") text = io::to_json(cayley_cyclic(gen_n)).dump() + "\n";
      if (gen_kind == "random-latin") text = io::to_json(random_latin(gen_n, gen_seed)).dump() + "\n";
      if (gen_kind == "fresh-augment")
        text = io::to_json(augment_fresh_symbols(random_latin(gen_n, gen_seed),
                                                 gen_r >= 0 ? gen_r : std::min(gen_n, default_pool_size(gen_n))))
                   .dump() +
               "\n";
      if (gen_kind == "bose") text = io::to_json(bose_sts(gen_n)).dump() + "\n";
      if (gen_kind == "skolem") text = io::to_json(skolem_sts(gen_n)).dump() + "\n";
      emit(gen_out, text);
      return kOk;
    }
    if (*solve) {
      SolveReport rep;
      if (solve_kind == "latin") rep = solve_latin(io::load_latin(solve_in), solve_cfg);
      if (solve_kind == "array") rep = solve_many_symbols(io::load_latin(solve_in), solve_cfg);
      if (solve_kind == "steiner") rep = solve_steiner(io::sts_from_json(io::read_json(solve_in)), solve_cfg);
      if (solve_kind == "hypergraph")
        rep = solve_hypergraph(io::hypergraph_from_json(io::read_json(solve_in)), solve_cfg);
      log(solve_kind + ": size " + std::to_string(rep.size) + ", uncovered " + std::to_string(rep.uncovered) +
          ", bound " + std::to_string(rep.bound) + (rep.within_bound ? " (within)" : " (exceeded)"));
      for (const auto& note : rep.notes) log(note);
      emit(solve_report, to_json(rep).dump(2) + "\n");
      return kOk;
    }
    if (*oracle) {
      OracleOptions opt;
      opt.cap = oracle_cap;
      OracleResult r;
      if (oracle_kind == "latin" || oracle_kind == "array") r = brute_force_max(io::load_latin(oracle_in), opt);
      if (oracle_kind == "graph") r = brute_force_max(io::load_graph(oracle_in), opt);
      if (oracle_kind == "steiner") r = brute_force_max(io::sts_from_json(io::read_json(oracle_in)), opt);
      if (oracle_kind == "hypergraph") r = brute_force_max(io::hypergraph_from_json(io::read_json(oracle_in)), opt);
      json j{{"version", 1}, {"kind", oracle_kind}, {"size", r.size}, {"nodes", r.nodes}};
      if (oracle_kind == "steiner" || oracle_kind == "hypergraph")
        j["triples"] = r.triples;
      else
        j["matching"] = io::edges_to_json(r.edges);
      emit(oracle_report, j.dump(2) + "\n");
      return kOk;
    }
    if (*typicality) {
      const ColoredBipartiteGraph g = load_any_graph(typ_in);
      TypicalityReport rep;
      if (typ_pred == "regular") rep = check_regular(g, typ);
      if (typ_pred == "typical") rep = check_typical(g, typ);
      if (typ_pred == "coloured-regular") rep = check_coloured(g, typ, ColouredLevel::Regular);
      if (typ_pred == "coloured-typical") rep = check_coloured(g, typ, ColouredLevel::Typical);
      std::cout << to_json(rep).dump(2) << '\n';
      return kOk;
    }
    if (*nibble) {
      const ColoredBipartiteGraph g = load_any_graph(nib_in);
      Rng rng(nib_seed);
      const NibbleResult res = iterated_nibble(g, nib, rng);
      if (!nib_stats.empty()) {
        std::ostringstream os;
        os << "round,chosen,kept,uncovered\n";
        for (const RoundStat& s : res.rounds) os << s.round << ',' << s.chosen << ',' << s.kept << ',' << s.uncovered << '\n';
        io::write_file(nib_stats, os.str());
      }
      log("nibble: " + std::to_string(res.matching.size()) + " edges in " + std::to_string(res.rounds.size()) +
          " rounds" + (res.stalled ? " (stalled)" : "") + (res.exhausted ? " (exhausted)" : ""));
      emit(nib_out, json{{"version", 1}, {"size", res.matching.size()}, {"matching", io::to_json(res.matching)}}.dump(2) + "\n");
      return kOk;
    }
    if (*expand) {
      const ColoredBipartiteGraph g = load_any_graph(exp_in);
      Rng rng(exp_seed);
      RainbowMatching m;
      if (!exp_matching.empty()) {
        m = load_matching(exp_matching);
      } else {
        Rng nrng = rng.fork(stream::kNibble);
        m = iterated_nibble(g, NibbleConfig{}, nrng).matching;
      }
      std::vector<Id> unused;
      for (Id c = 0; c < g.num_colors(); ++c)
        if (!m.uses_color(c) && g.color_size(c) > 0) unused.push_back(c);
      Rng crng = rng.fork(stream::kSplit);
      crng.shuffle(unused);
      unused.resize(std::min<std::size_t>(unused.size(), static_cast<std::size_t>(ep.d)));
      const EdgeSet d = color_subgraph(g, unused);
      Rng prng = rng.fork(stream::kProbe);
      const ProbeReport rep = expander_probe(d, m, ep, exp_trials, prng, exp_t);
      json trials = json::array();
      for (const ProbeTrial& t : rep.trials)
        trials.push_back({{"side", side_name(t.side)}, {"s", t.s.size()}, {"container", t.container_size},
                          {"subset", t.subset.size()}, {"reach_unpadded", t.reach_unpadded}, {"reach", t.reach},
                          {"fraction", t.fraction}, {"pass", t.pass}});
      std::cout << json{{"version", 1},          {"d", ep.d},
                        {"A", ep.A},             {"eps", ep.eps},
                        {"t", rep.t},            {"pool_colours", unused},
                        {"matching_size", m.size()}, {"s_size", rep.s_size},
                        {"target_size", rep.target_size}, {"min_fraction", rep.min_fraction},
                        {"mean_fraction", rep.mean_fraction}, {"passed", rep.passed},
                        {"trials", trials}}
                       .dump(2)
                << '\n';
      return kOk;
    }
    if (*augment) {
      const ColoredBipartiteGraph g = load_any_graph(aug_graph);
      RainbowMatching m;
      if (!aug_matching.empty()) m = load_matching(aug_matching);
      Rng rng(aug_seed);
      SplitSpec spec;
      spec.mode = SplitMode::ConditionedExact;
      auto owner = [&](Id n) {
        std::vector<Id> ids(static_cast<std::size_t>(n));
        for (Id i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
        Rng srng = rng.fork(stream::kSplit + static_cast<std::uint64_t>(n));
        const auto parts = random_split(ids, spec, srng);
        std::vector<int> out(static_cast<std::size_t>(n), -1);
        for (int p = 0; p < 3; ++p)
          for (Id v : parts[static_cast<std::size_t>(p)]) out[static_cast<std::size_t>(v)] = p;
        return out;
      };
      const GuideStructure guide = whole_graph_guide(g, owner(g.nx()), owner(g.ny()));
      AugmentBudget budget;
      budget.wall_clock_s = aug_budget;
      budget.rotations = aug_restarts;
      Rng arng = rng.fork(stream::kAugment);
      const AugmentResult res = augment_to_max(g, guide, m, budget, arng);
      if (!aug_trace.empty()) {
        std::ostringstream os;
        os << "iter,plan_shape,p1,p2,p3,ledger\n";
        for (const TraceRow& t : res.trace)
          os << t.iter << ',' << t.shape << ',' << t.p1 << ',' << t.p2 << ',' << t.p3 << ',' << t.ledger << '\n';
        io::write_file(aug_trace, os.str());
      }
      log("augment: " + std::to_string(m.size()) + " -> " + std::to_string(res.matching.size()) + " in " +
          std::to_string(res.iterations) + " iterations" + (res.exhausted ? " (exhausted)" : "") +
          (res.timed_out ? " (time limit)" : ""));
      emit(aug_out, json{{"version", 1},
                         {"size", res.matching.size()},
                         {"ledger", res.ledger},
                         {"ledger_cap", res.ledger_cap},
                         {"exhausted", res.exhausted},
                         {"matching", io::to_json(res.matching)}}
                            .dump(2) +
                        "\n");
      return kOk;
    }
    if (*bench) {
      bench_spec.kinds = split_list(bench_kinds);
      for (const auto& s : split_list(bench_grid)) bench_spec.grid.push_back(std::stoll(s));
      for (const auto& s : split_list(bench_seeds)) bench_spec.seeds.push_back(std::stoull(s));
      bench_spec.jobs = bench_spec.cfg.jobs;
      const auto rows = bench_scaling(bench_spec);
      emit(bench_out, bench_csv(rows));
      const std::string summary = bench_summary(rows);
      if (bench_summary_path.empty())
        std::cerr << summary;
      else
        io::write_file(bench_summary_path, summary);
      return kOk;
    }
    if (*verify_cmd) {
      const VerifyOutcome out = verify(ver_kind, ver_instance, ver_matching);
      std::cout << out.diagnostic.dump(2) << '\n';
      return out.ok ? kOk : kValidation;
    }
  } catch (const PreconditionViolated& e) {
    log(e.code() + ": " + e.what());
    return kInfeasible;
  } catch (const TooLarge& e) {
    log(e.code() + ": " + e.what());
    return kInfeasible;
  } catch (const Error& e) {
    log(e.code() + ": " + e.what());
    return e.code() == "io-error" ? kUsage : kValidation;
  } catch (const std::invalid_argument& e) {
    log(std::string("bad argument: ") + e.what());
    return kUsage;
  }
  return kUsage;
}
