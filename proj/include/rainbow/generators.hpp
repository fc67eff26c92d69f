#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rainbow/instances.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

// Addition table of Z_n: L(i, j) = (i + j) mod n.
LatinArray cayley_cyclic(Id n);

// Random Latin square from the Jacobson-Matthews Markov chain, started at the
// cyclic square. mix_steps < 0 means the default n^3. The chain keeps running
// past mix_steps until it sits at a proper square.
LatinArray random_latin(Id n, std::uint64_t seed, long long mix_steps = -1);

// Replaces rows 0..r-1 with fresh symbols; new ids continue after the
// existing symbol range. r outside [0, n] throws InvalidInput("out-of-range").
LatinArray augment_fresh_symbols(const LatinArray& L, Id r);

// Bose construction from the idempotent commutative quasigroup on Z_{2v+1};
// n = 6v + 3. Point (x, i) has id x + i(2v+1).
SteinerTripleSystem bose_sts(Id n);
// Skolem construction from the half-idempotent commutative quasigroup on
// Z_{2v}; n = 6v + 1. Point (x, i) has id x + 2v*i, the extra point is n-1.
SteinerTripleSystem skolem_sts(Id n);

enum class SplitMode { Independent, ConditionedExact };

struct SplitSpec {
  std::array<double, 3> probabilities{1.0 / 3, 1.0 / 3, 1.0 / 3};
  SplitMode mode = SplitMode::Independent;
  // Target sizes for the conditioned mode; when empty they are derived from
  // the probabilities (floors, remainder to the largest fractional parts).
  std::vector<Id> sizes;
};

// Three-way random partition of `items`, each list in increasing order.
// Independent: each item picks part i with probability p_i. Conditioned: the
// same law conditioned on the part sizes, which is a uniformly random
// assignment with those sizes (sampled directly by shuffle-and-cut).
std::array<std::vector<Id>, 3> random_split(std::span<const Id> items, const SplitSpec& spec, Rng& rng);

// Target sizes the conditioned mode uses for a universe of the given size.
std::array<Id, 3> split_sizes(Id total, const SplitSpec& spec);

}  // namespace rainbow
