#include "rainbow/generators.hpp"

#include <algorithm>
#include <cmath>

namespace rainbow {

LatinArray cayley_cyclic(Id n) {
  if (n < 1) throw InvalidInput("out-of-range", "order must be positive");
  std::vector<Id> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return LatinArray(n, std::move(cells));
}

namespace {

// Incidence cube of a (possibly improper) Latin square, stored line by line.
// Every line (fixed row/col, row/sym or col/sym) holds one or two positive
// cells; an improper square has a single -1 cell whose three lines hold two.
class JacobsonMatthews {
 public:
  explicit JacobsonMatthews(Id n) : n_(n), rc_(cells()), rs_(cells()), cs_(cells()) {
    for (Id r = 0; r < n; ++r)
      for (Id c = 0; c < n; ++c) put(r, c, (r + c) % n);
  }

  void step(Rng& rng) {
    Id r, c, s, r2, c2, s2;
    if (!improper_) {
      do {
        r = draw(rng);
        c = draw(rng);
        s = draw(rng);
      } while (value(r, c, s) != 0);
      s2 = rc_[idx(r, c)].first();
      c2 = rs_[idx(r, s)].first();
      r2 = cs_[idx(c, s)].first();
    } else {
      r = bad_[0];
      c = bad_[1];
      s = bad_[2];
      s2 = rc_[idx(r, c)].pick(rng);
      c2 = rs_[idx(r, s)].pick(rng);
      r2 = cs_[idx(c, s)].pick(rng);
    }
    bump(r, c, s, +1);
    bump(r, c2, s2, +1);
    bump(r2, c, s2, +1);
    bump(r2, c2, s, +1);
    bump(r, c, s2, -1);
    bump(r, c2, s, -1);
    bump(r2, c, s, -1);
    bump(r2, c2, s2, -1);
  }

  bool proper() const { return !improper_; }

  std::vector<Id> square() const {
    std::vector<Id> out(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    for (Id r = 0; r < n_; ++r)
      for (Id c = 0; c < n_; ++c) out[idx(r, c)] = rc_[idx(r, c)].first();
    return out;
  }

 private:
  struct Line {
    Id v[2] = {kNone, kNone};
    int count = 0;
    Id first() const { return v[0]; }
    Id pick(Rng& rng) const { return v[rng.below(2)]; }
    bool has(Id a) const { return (count > 0 && v[0] == a) || (count > 1 && v[1] == a); }
    void insert(Id a) { v[count++] = a; }
    void erase(Id a) {
      if (v[0] == a) v[0] = v[1];
      v[1] = kNone;
      --count;
    }
  };

  std::size_t cells() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
  std::size_t idx(Id a, Id b) const { return static_cast<std::size_t>(a) * n_ + b; }
  Id draw(Rng& rng) const { return static_cast<Id>(rng.below(static_cast<std::uint64_t>(n_))); }

  int value(Id r, Id c, Id s) const {
    if (improper_ && bad_[0] == r && bad_[1] == c && bad_[2] == s) return -1;
    return rc_[idx(r, c)].has(s) ? 1 : 0;
  }
  void put(Id r, Id c, Id s) {
    rc_[idx(r, c)].insert(s);
    rs_[idx(r, s)].insert(c);
    cs_[idx(c, s)].insert(r);
  }
  void take(Id r, Id c, Id s) {
    rc_[idx(r, c)].erase(s);
    rs_[idx(r, s)].erase(c);
    cs_[idx(c, s)].erase(r);
  }
  void bump(Id r, Id c, Id s, int delta) {
    int v = value(r, c, s);
    if (delta > 0) {
      if (v == -1)
        improper_ = false;
      else
        put(r, c, s);
    } else {
      if (v == 1) {
        take(r, c, s);
      } else {
        improper_ = true;
        bad_ = {r, c, s};
      }
    }
  }

  Id n_;
  std::vector<Line> rc_, rs_, cs_;
  bool improper_ = false;
  std::array<Id, 3> bad_{kNone, kNone, kNone};
};

}  // namespace

LatinArray random_latin(Id n, std::uint64_t seed, long long mix_steps) {
  if (n < 1) throw InvalidInput("out-of-range", "order must be positive");
  if (mix_steps < 0) mix_steps = static_cast<long long>(n) * n * n;
  Rng rng = Rng(seed).fork(stream::kGenerate);
  JacobsonMatthews chain(n);
  if (n > 1) {
    for (long long i = 0; i < mix_steps; ++i) chain.step(rng);
    while (!chain.proper()) chain.step(rng);
  }
  return LatinArray(n, chain.square());
}

LatinArray augment_fresh_symbols(const LatinArray& L, Id r) {
  if (r < 0 || r > L.n())
    throw InvalidInput("out-of-range", "fresh row count " + std::to_string(r) + " outside [0, " +
                                           std::to_string(L.n()) + "]");
  const Id n = L.n(), base = L.num_symbols();
  std::vector<Id> cells = L.cells();
  for (Id i = 0; i < r; ++i)
    for (Id j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = base + i * n + j;
  return LatinArray(n, std::move(cells), base + r * n);
}

SteinerTripleSystem bose_sts(Id n) {
  if (n < 3 || n % 6 != 3) throw InvalidInput("bad-residue", "Bose construction needs n = 3 (mod 6), got " + std::to_string(n));
  const Id m = n / 3;  // 2v + 1
  const Id half = (m + 1) / 2;  // inverse of 2 modulo m
  auto op = [&](Id a, Id b) { return static_cast<Id>((static_cast<long long>(a + b) * half) % m); };
  auto pt = [&](Id x, Id i) { return x + (i % 3) * m; };
  std::vector<Triple> t;
  for (Id x = 0; x < m; ++x) t.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
  for (Id i = 0; i < 3; ++i)
    for (Id x = 0; x < m; ++x)
      for (Id y = x + 1; y < m; ++y) t.push_back({pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
  return SteinerTripleSystem(n, std::move(t));
}

SteinerTripleSystem skolem_sts(Id n) {
  if (n < 7 || n % 6 != 1) {
    if (n == 1) return SteinerTripleSystem(1, {});
    throw InvalidInput("bad-residue", "Skolem construction needs n = 1 (mod 6), got " + std::to_string(n));
  }
  const Id v = (n - 1) / 6, m = 2 * v;
  auto op = [&](Id a, Id b) {
    Id s = (a + b) % m;
    return s % 2 == 0 ? s / 2 : (s - 1) / 2 + v;
  };
  auto pt = [&](Id x, Id i) { return x + (i % 3) * m; };
  const Id inf = n - 1;
  std::vector<Triple> t;
  for (Id x = 0; x < v; ++x) t.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
  for (Id i = 0; i < 3; ++i)
    for (Id x = 0; x < v; ++x) t.push_back({inf, pt(x + v, i), pt(x, i + 1)});
  for (Id i = 0; i < 3; ++i)
    for (Id x = 0; x < m; ++x)
      for (Id y = x + 1; y < m; ++y) t.push_back({pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
  return SteinerTripleSystem(n, std::move(t));
}

std::array<Id, 3> split_sizes(Id total, const SplitSpec& spec) {
  if (!spec.sizes.empty()) {
    if (spec.sizes.size() != 3) throw InvalidInput("bad-split", "sizes must list three parts");
    long long sum = 0;
    for (Id s : spec.sizes) {
      if (s < 0) throw InvalidInput("bad-split", "negative part size");
      sum += s;
    }
    if (sum != total)
      throw InvalidInput("bad-split", "part sizes sum to " + std::to_string(sum) + ", universe has " + std::to_string(total));
    return {spec.sizes[0], spec.sizes[1], spec.sizes[2]};
  }
  std::array<Id, 3> out{};
  std::array<double, 3> frac{};
  Id used = 0;
  for (int i = 0; i < 3; ++i) {
    double want = spec.probabilities[static_cast<std::size_t>(i)] * total;
    out[static_cast<std::size_t>(i)] = static_cast<Id>(std::floor(want));
    frac[static_cast<std::size_t>(i)] = want - std::floor(want);
    used += out[static_cast<std::size_t>(i)];
  }
  while (used < total) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (frac[static_cast<std::size_t>(i)] > frac[static_cast<std::size_t>(best)]) best = i;
    ++out[static_cast<std::size_t>(best)];
    frac[static_cast<std::size_t>(best)] = -1;
    ++used;
  }
  return out;
}

std::array<std::vector<Id>, 3> random_split(std::span<const Id> items, const SplitSpec& spec, Rng& rng) {
  double sum = 0;
  for (double p : spec.probabilities) {
    if (p < 0) throw InvalidInput("bad-split", "negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("bad-split", "probabilities must sum to 1");
  std::array<std::vector<Id>, 3> parts;
  if (spec.mode == SplitMode::Independent) {
    for (Id v : items) {
      double u = rng.uniform();
      int p = u < spec.probabilities[0] ? 0 : u < spec.probabilities[0] + spec.probabilities[1] ? 1 : 2;
      parts[static_cast<std::size_t>(p)].push_back(v);
    }
  } else {
    auto sizes = split_sizes(static_cast<Id>(items.size()), spec);
    std::vector<Id> order(items.begin(), items.end());
    rng.shuffle(order);
    auto it = order.begin();
    for (int p = 0; p < 3; ++p) {
      auto end = it + sizes[static_cast<std::size_t>(p)];
      parts[static_cast<std::size_t>(p)].assign(it, end);
      it = end;
    }
  }
  for (auto& p : parts) std::sort(p.begin(), p.end());
  return parts;
}

}  // namespace rainbow
