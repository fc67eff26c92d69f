#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solvers.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;

namespace {
bool disjoint_members(const SteinerTripleSystem& s, const std::vector<Triple>& triples) {
  std::set<Id> used;
  for (const Triple& t : triples) {
    if (s.third(t[0], t[1]) != t[2]) return false;
    for (Id v : t)
      if (!used.insert(v).second) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("oracle agrees with the permutation scan") {
  CHECK(brute_force_max(cayley_cyclic(4)).size == 3);
  CHECK(oracle::permutation_scan(cayley_cyclic(4)) == 3);
  CHECK(brute_force_max(cayley_cyclic(5)).size == 5);
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const LatinArray l = random_latin(3 + static_cast<Id>(s % 5), s);
    const OracleResult r = brute_force_max(l);
    CHECK(r.size == oracle::permutation_scan(l));
    CHECK(validate_matching(latin_to_graph(l), r.edges).empty());
    CHECK(static_cast<long long>(r.edges.size()) == r.size);
  }
}

TEST_CASE("oracle on triple systems") {
  // Any two lines of the Fano plane meet, so one triple is the most.
  const SteinerTripleSystem fano = skolem_sts(7);
  CHECK(oracle::subset_scan(fano.triples()) == 1);
  CHECK(brute_force_max(fano).size == 1);
  const SteinerTripleSystem nine = bose_sts(9);
  CHECK(oracle::subset_scan(nine.triples()) == 3);
  CHECK(brute_force_max(nine).size == 3);
  CHECK(disjoint_members(nine, brute_force_max(nine).triples));
  CHECK(brute_force_max(bose_sts(15)).size == 5);
}

TEST_CASE("oracle caps") {
  CHECK_THROWS_AS(brute_force_max(cayley_cyclic(10)), TooLarge);
  CHECK_THROWS_AS(brute_force_max(bose_sts(21)), TooLarge);
  OracleOptions early;
  early.stop_at = 4;
  const OracleResult r = brute_force_max(random_latin(9, 3), early);
  CHECK(r.size >= 4);
}

TEST_CASE("bound value") {
  CHECK(bound_value(64, 3) == static_cast<long long>(std::ceil(3 * std::log(64.0) / std::log(std::log(64.0)))));
  CHECK(bound_value(256, 3) == 10);
  CHECK(bound_value(2, 3) == 2);
}

TEST_CASE("solve_latin on cyclic tables") {
  SolveConfig cfg;
  cfg.restarts = 8;
  const SolveReport five = solve_latin(cayley_cyclic(5), cfg);
  CHECK(five.size == 5);
  CHECK(five.uncovered == 0);
  CHECK(verify_edges(latin_to_graph(cayley_cyclic(5)), five.matching.edges()).ok);
  const SolveReport four = solve_latin(cayley_cyclic(4), cfg);
  CHECK(four.size == 3);
  CHECK(four.exhausted);
  for (std::size_t i = 1; i < five.stages.size(); ++i) CHECK(five.stages[i].size >= five.stages[i - 1].size);
}

TEST_CASE("solve_latin on random squares of order 32") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const LatinArray l = random_latin(32, s);
    SolveConfig cfg;
    cfg.seed = s;
    cfg.restarts = 4;
    cfg.accept_uncovered = 1;
    const SolveReport r = solve_latin(l, cfg);
    CHECK(r.size >= 31);
    CHECK(r.uncovered == 32 - r.size);
    CHECK(r.within_bound);
    CHECK(verify_edges(latin_to_graph(l), r.matching.edges()).ok);
  }
}

TEST_CASE("solves are reproducible from the seed") {
  SolveConfig cfg;
  cfg.seed = 77;
  cfg.restarts = 3;
  const LatinArray l = random_latin(20, 4);
  CHECK(solve_latin(l, cfg).matching == solve_latin(l, cfg).matching);
  cfg.jobs = 3;
  SolveConfig serial = cfg;
  serial.jobs = 1;
  CHECK(solve_latin(l, cfg).matching == solve_latin(l, serial).matching);
}

TEST_CASE("many-symbol arrays") {
  // All n^2 cells distinct: any perfect matching is rainbow.
  std::vector<Id> cells(36);
  for (Id i = 0; i < 36; ++i) cells[static_cast<std::size_t>(i)] = i;
  CHECK(solve_many_symbols(LatinArray(6, cells), SolveConfig{}).size == 6);

  const Id n = 64;
  const LatinArray l = augment_fresh_symbols(random_latin(n, 5), 3);
  const SolveReport r = solve_many_symbols(l, SolveConfig{});
  CHECK(r.size == n);
  CHECK(verify_edges(latin_to_graph(l), r.matching.edges()).ok);

  const SolveReport square = solve_many_symbols(cayley_cyclic(7), SolveConfig{});
  CHECK(square.size == 7);
}

TEST_CASE("Steiner systems") {
  SolveConfig cfg;
  const SolveReport fano = solve_steiner(skolem_sts(7), cfg);
  CHECK(fano.size == 1);
  const SolveReport nine = solve_steiner(bose_sts(9), cfg);
  CHECK(nine.size == 3);
  CHECK(disjoint_members(bose_sts(9), nine.triples));
  const SolveReport three = solve_steiner(bose_sts(3), cfg);
  CHECK(three.size == 1);
  const SteinerTripleSystem big = bose_sts(81);
  const SolveReport r = solve_steiner(big, cfg);
  CHECK(disjoint_members(big, r.triples));
  CHECK(r.uncovered == 81 - 3 * r.size);
  CHECK(r.uncovered <= r.bound);
}

TEST_CASE("hypergraph entry points") {
  const LatinArray l = random_latin(12, 8);
  SolveConfig cfg;
  cfg.seed = 3;
  const SolveReport a = solve_latin(l, cfg);
  const SolveReport b = solve_hypergraph(full_latin_to_hypergraph(l), cfg);
  CHECK(a.size == b.size);
  CHECK(b.premise_audit.has_value());

  const SteinerTripleSystem s = bose_sts(27);
  const SolveReport st = solve_steiner(s, cfg);
  const SolveReport hg = solve_hypergraph(LinearHypergraph3(27, s.triples()), cfg);
  CHECK(st.triples == hg.triples);

  const LinearHypergraph3 h81 = full_latin_to_hypergraph(random_latin(81, 2));
  const SolveReport big = solve_hypergraph(h81, cfg);
  CHECK(81 - big.size <= bound_value(81, 3));
}

TEST_CASE("report json") {
  SolveConfig cfg;
  const SolveReport r = solve_latin(cayley_cyclic(5), cfg);
  const auto j = to_json(r);
  CHECK(j["version"] == 1);
  CHECK(j["size"] == 5);
  CHECK(j["matching"].size() == 5);
  CHECK(j.contains("stages"));
}
