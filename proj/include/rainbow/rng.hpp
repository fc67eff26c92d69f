#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rainbow {

// Finalizer of SplitMix64 (Stafford's mix13 variant).
std::uint64_t mix64(std::uint64_t z) noexcept;

// Hash a (seed, label) pair into an independent stream key.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept;

// Counter-based SplitMix64: output i of a stream with key k is
// mix64(k + (i + 1) * golden_gamma). Nothing here depends on the standard
// library's distributions, so a fixed seed reproduces bit-for-bit on every
// platform. Stage-specific streams are obtained with fork(label).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : key_(seed) {}

  std::uint64_t next() noexcept;
  std::uint64_t operator()() noexcept { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  // Uniform in [0, bound); bound must be positive. Lemire's rejection method.
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

  Rng fork(std::uint64_t label) const noexcept { return Rng(derive_seed(key_, label)); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t draws() const noexcept { return counter_; }

  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream labels for the pipeline stages; forked from the run seed.
namespace stream {
inline constexpr std::uint64_t kSplit = 0x5311;
inline constexpr std::uint64_t kNibble = 0x2b17e;
inline constexpr std::uint64_t kGreedy = 0x62ee;
inline constexpr std::uint64_t kAugment = 0xa06;
inline constexpr std::uint64_t kRestart = 0x7e57;
inline constexpr std::uint64_t kProbe = 0x960b;
inline constexpr std::uint64_t kGenerate = 0x6e9;
}  // namespace stream

}  // namespace rainbow
