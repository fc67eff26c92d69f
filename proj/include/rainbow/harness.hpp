#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rainbow/instances.hpp"
#include "rainbow/solvers.hpp"

namespace rainbow {

// One (kind, n, seed) cell of the scaling study. Column order of the CSV.
struct BenchRow {
  long long n = 0;
  std::string kind;
  std::uint64_t seed = 0;
  long long uncovered = 0;    // n - |M|; triple deficit floor(n/3) - |M| for steiner
  long long bound_value = 0;  // ceil(k ln n / ln ln n)
  bool within_bound = false;  // uncovered <= bound_value
  double wall_ms = 0;         // 0 unless timing is requested (keeps the CSV byte-stable)
  std::vector<long long> stages;
};

struct BenchSpec {
  std::vector<std::string> kinds;  // latin, cyclic, array, steiner, hypergraph
  std::vector<long long> grid;
  std::vector<std::uint64_t> seeds;
  SolveConfig cfg;                 // cfg.seed is replaced by each cell's seed
  int jobs = 1;                    // cells solved concurrently
  bool timing = false;
};

using Instance = std::variant<LatinArray, SteinerTripleSystem, LinearHypergraph3>;
// Generated instance for a bench cell. steiner: Bose for n = 3 mod 6, Skolem
// for n = 1 mod 6; array: random Latin square with ceil(ln n / ln ln n) rows
// of fresh symbols; hypergraph: the tripartite hypergraph of a random square.
Instance make_instance(const std::string& kind, long long n, std::uint64_t seed);
SolveReport solve_instance(const std::string& kind, const Instance& inst, const SolveConfig& cfg);

// Rows sorted by (kind, n, seed).
std::vector<BenchRow> bench_scaling(const BenchSpec& spec);
std::string bench_csv(const std::vector<BenchRow>& rows);
// Per (kind, n): runs, max uncovered, bound, all within; steiner rows also
// get max uncovered points and the reference 0.5 n^(1/2) (ln n)^(3/2).
std::string bench_summary(const std::vector<BenchRow>& rows);
double aks_reference(double n);

}  // namespace rainbow
