#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/oracle.hpp"

using namespace rainbow;

TEST_CASE("cyclic tables") {
  const LatinArray z = cayley_cyclic(6);
  for (Id i = 0; i < 6; ++i)
    for (Id j = 0; j < 6; ++j) CHECK(z.at(i, j) == (i + j) % 6);
  CHECK(cayley_cyclic(1).cells() == std::vector<Id>{0});
  // Odd order: the diagonal 2i mod n is a full transversal.
  std::set<Id> diag;
  for (Id i = 0; i < 5; ++i) diag.insert(cayley_cyclic(5).at(i, i));
  CHECK(diag.size() == 5);
  CHECK(oracle::permutation_scan(cayley_cyclic(4)) == 3);
}

TEST_CASE("random latin squares are valid and reproducible") {
  CHECK(random_latin(1, 5).cells() == std::vector<Id>{0});
  const LatinArray a = random_latin(6, 1), b = random_latin(6, 2);
  CHECK(a.is_latin_square());
  CHECK(b.is_latin_square());
  CHECK(a.cells() != b.cells());
  CHECK(random_latin(9, 77).cells() == random_latin(9, 77).cells());
}

TEST_CASE("random latin squares of order 4 have uniform cell marginals") {
  // 10^4 samples; each (cell, symbol) count is Binomial(N, 1/4).
  const int samples = 10000;
  std::vector<int> count(16 * 4, 0);
  for (int s = 0; s < samples; ++s) {
    const LatinArray l = random_latin(4, 100000 + static_cast<std::uint64_t>(s), 64);
    for (Id c = 0; c < 16; ++c) ++count[static_cast<std::size_t>(c * 4 + l.cells()[static_cast<std::size_t>(c)])];
  }
  const double mean = samples / 4.0, sd = std::sqrt(samples * 0.25 * 0.75);
  for (int v : count) CHECK(std::abs(v - mean) <= 3 * sd + 1);
}

TEST_CASE("fresh symbols") {
  const LatinArray z = cayley_cyclic(4);
  CHECK(augment_fresh_symbols(z, 0).cells() == z.cells());
  const LatinArray all = augment_fresh_symbols(z, 4);
  CHECK(std::set<Id>(all.cells().begin(), all.cells().end()).size() == 16);
  const LatinArray one = augment_fresh_symbols(z, 1);
  for (Id j = 0; j < 4; ++j) CHECK(one.at(0, j) >= 4);
  // Z4 has no full transversal; with one fresh row it does.
  CHECK(brute_force_max(one).size == 4);
  CHECK_THROWS_AS(augment_fresh_symbols(z, 5), InvalidInput);
  CHECK_THROWS_AS(augment_fresh_symbols(z, -1), InvalidInput);
}

TEST_CASE("Steiner constructions cover every pair once") {
  for (Id n : {3, 9, 15, 21, 27, 33}) {
    const SteinerTripleSystem s = bose_sts(n);
    CHECK(static_cast<long long>(s.triples().size()) == n * (n - 1) / 6);
    CHECK(oracle::covers_pairs_once(n, s.triples()));
  }
  for (Id n : {7, 13, 19, 25, 31}) {
    const SteinerTripleSystem s = skolem_sts(n);
    CHECK(static_cast<long long>(s.triples().size()) == n * (n - 1) / 6);
    CHECK(oracle::covers_pairs_once(n, s.triples()));
  }
  const auto three = bose_sts(3).triples();
  REQUIRE(three.size() == 1);
  Triple t = three[0];
  std::sort(t.begin(), t.end());
  CHECK(t == Triple{0, 1, 2});
  CHECK_THROWS_AS(bose_sts(7), InvalidInput);
  CHECK_THROWS_AS(skolem_sts(9), InvalidInput);
}

TEST_CASE("random splits") {
  Rng rng(5);
  SplitSpec cond;
  cond.mode = SplitMode::ConditionedExact;
  std::map<std::vector<Id>, int> seen;
  const std::vector<Id> three{0, 1, 2};
  for (int i = 0; i < 600; ++i) {
    const auto parts = random_split(three, cond, rng);
    std::vector<Id> owner(3);
    for (int p = 0; p < 3; ++p) {
      REQUIRE(parts[static_cast<std::size_t>(p)].size() == 1);
      owner[static_cast<std::size_t>(p)] = parts[static_cast<std::size_t>(p)][0];
    }
    ++seen[owner];
  }
  CHECK(seen.size() == 6);

  const auto none = random_split(std::vector<Id>{}, cond, rng);
  for (const auto& p : none) CHECK(p.empty());

  std::vector<Id> big(999);
  for (Id i = 0; i < 999; ++i) big[static_cast<std::size_t>(i)] = i;
  const auto parts = random_split(big, cond, rng);
  for (const auto& p : parts) CHECK(p.size() == 333);
  std::vector<Id> merged;
  for (const auto& p : parts) merged.insert(merged.end(), p.begin(), p.end());
  std::sort(merged.begin(), merged.end());
  CHECK(merged == big);

  SplitSpec wrong = cond;
  wrong.sizes = {1, 1, 1};
  CHECK_THROWS_AS(random_split(big, wrong, rng), InvalidInput);

  SplitSpec indep;
  const auto loose = random_split(big, indep, rng);
  CHECK(loose[0].size() + loose[1].size() + loose[2].size() == 999);
}
