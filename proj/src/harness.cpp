#include "rainbow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "rainbow/augmentation.hpp"
#include "rainbow/generators.hpp"

namespace rainbow {

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

Instance make_instance(const std::string& kind, long long n, std::uint64_t seed) {
  const Id size = static_cast<Id>(n);
  if (kind == "latin") return random_latin(size, seed);
  if (kind == "cyclic") return cayley_cyclic(size);
  if (kind == "array") return augment_fresh_symbols(random_latin(size, seed), std::min<Id>(size, default_pool_size(n)));
  if (kind == "hypergraph") return full_latin_to_hypergraph(random_latin(size, seed));
  if (kind == "steiner") {
    if (n % 6 == 3) return bose_sts(size);
    if (n % 6 == 1) return skolem_sts(size);
    throw InvalidInput("bad-residue", "no Steiner triple system on " + std::to_string(n) + " points (need 1 or 3 mod 6)");
  }
  throw InvalidInput("unknown-kind", "unknown instance kind '" + kind + "'");
}

SolveReport solve_instance(const std::string& kind, const Instance& inst, const SolveConfig& cfg) {
  if (const auto* l = std::get_if<LatinArray>(&inst))
    return kind == "array" ? solve_many_symbols(*l, cfg) : solve_latin(*l, cfg);
  if (const auto* s = std::get_if<SteinerTripleSystem>(&inst)) return solve_steiner(*s, cfg);
  return solve_hypergraph(std::get<LinearHypergraph3>(inst), cfg);
}

double aks_reference(double n) { return 0.5 * std::sqrt(n) * std::pow(std::log(n), 1.5); }

std::vector<BenchRow> bench_scaling(const BenchSpec& spec) {
  struct Cell {
    std::string kind;
    long long n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& kind : spec.kinds)
    for (long long n : spec.grid)
      for (std::uint64_t seed : spec.seeds) cells.push_back({kind, n, seed});
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.kind, a.n, a.seed) < std::tie(b.kind, b.n, b.seed);
  });
  std::vector<BenchRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const Cell& c = cells[i];
        SolveConfig cfg = spec.cfg;
        cfg.seed = c.seed;
        cfg.jobs = 1;
        const auto t0 = std::chrono::steady_clock::now();
        const SolveReport rep = solve_instance(c.kind, make_instance(c.kind, c.n, c.seed), cfg);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        BenchRow& row = rows[i];
        row.n = c.n;
        row.kind = c.kind;
        row.seed = c.seed;
        row.uncovered = c.kind == "steiner" ? c.n / 3 - rep.size : rep.uncovered;
        row.bound_value = bound_value(static_cast<double>(c.n), cfg.k);
        row.within_bound = row.uncovered <= row.bound_value;
        row.wall_ms = spec.timing ? ms : 0;
        for (const Stage& s : rep.stages) row.stages.push_back(s.size);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "n,kind,seed,uncovered,bound_value,within_bound,wall_ms,stage_sizes\n";
  for (const BenchRow& r : rows) {
    os << r.n << ',' << r.kind << ',' << r.seed << ',' << r.uncovered << ',' << r.bound_value << ','
       << (r.within_bound ? "true" : "false") << ',' << fixed(r.wall_ms, 3) << ',';
    for (std::size_t i = 0; i < r.stages.size(); ++i) os << (i ? "/" : "") << r.stages[i];
    os << '\n';
  }
  return os.str();
}

std::string bench_summary(const std::vector<BenchRow>& rows) {
  struct Agg {
    int runs = 0;
    long long max_uncovered = 0;
    long long bound = 0;
    bool all_within = true;
  };
  std::map<std::pair<std::string, long long>, Agg> agg;
  for (const BenchRow& r : rows) {
    Agg& a = agg[{r.kind, r.n}];
    a.max_uncovered = a.runs ? std::max(a.max_uncovered, r.uncovered) : r.uncovered;
    ++a.runs;
    a.bound = r.bound_value;
    a.all_within = a.all_within && r.within_bound;
  }
  std::ostringstream os;
  os << "kind,n,runs,max_uncovered,bound_value,all_within,max_uncovered_points,aks_reference\n";
  for (const auto& [key, a] : agg) {
    os << key.first << ',' << key.second << ',' << a.runs << ',' << a.max_uncovered << ',' << a.bound << ','
       << (a.all_within ? "true" : "false") << ',';
    if (key.first == "steiner")
      os << (key.second % 3 + 3 * a.max_uncovered) << ',' << fixed(aks_reference(static_cast<double>(key.second)), 3);
    else
      os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace rainbow
