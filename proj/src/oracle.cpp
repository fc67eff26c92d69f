#include "rainbow/oracle.hpp"

#include <algorithm>

#include "rainbow/errors.hpp"

namespace rainbow {

namespace {

std::size_t at(Id i) { return static_cast<std::size_t>(i); }

class GraphSearch {
 public:
  GraphSearch(const ColoredBipartiteGraph& g, long long stop_at)
      : g_(g), used_y_(at(g.ny()), 0), used_c_(at(g.num_colors()), 0), stop_at_(stop_at) {
    free_c_ = static_cast<long long>(g.active_colors().size());
    upper_ = std::min<long long>({g.nx(), g.ny(), free_c_});
  }

  OracleResult run() {
    rec(0);
    OracleResult r;
    r.size = static_cast<long long>(best_.size());
    r.edges = best_;
    std::sort(r.edges.begin(), r.edges.end());
    r.nodes = nodes_;
    r.stopped_early = stop_at_ > 0 && r.size >= stop_at_ && r.size < upper_;
    return r;
  }

 private:
  bool done() const {
    const auto have = static_cast<long long>(best_.size());
    return have >= upper_ || (stop_at_ > 0 && have >= stop_at_);
  }

  void rec(Id x) {
    ++nodes_;
    const auto cur = static_cast<long long>(chosen_.size());
    if (cur > static_cast<long long>(best_.size())) best_ = chosen_;
    if (done() || x >= g_.nx()) return;
    const long long room = std::min<long long>({g_.nx() - x, g_.ny() - cur, free_c_ - cur});
    if (cur + room <= static_cast<long long>(best_.size())) return;
    for (std::int32_t idx : g_.incident(Side::X, x)) {
      const Edge& e = g_.edge(idx);
      if (used_y_[at(e.y)] || used_c_[at(e.c)]) continue;
      used_y_[at(e.y)] = used_c_[at(e.c)] = 1;
      chosen_.push_back(e);
      rec(x + 1);
      chosen_.pop_back();
      used_y_[at(e.y)] = used_c_[at(e.c)] = 0;
      if (done()) return;
    }
    // Leaving x unmatched: only useful if the rest can still beat the best.
    if (cur + std::min<long long>({g_.nx() - x - 1, g_.ny() - cur, free_c_ - cur}) > static_cast<long long>(best_.size()))
      rec(x + 1);
  }

  const ColoredBipartiteGraph& g_;
  std::vector<char> used_y_, used_c_;
  std::vector<Edge> chosen_, best_;
  long long free_c_ = 0, upper_ = 0, nodes_ = 0, stop_at_ = 0;
};

class TripleSearch {
 public:
  TripleSearch(Id n, const std::vector<Triple>& triples, long long stop_at)
      : n_(n), triples_(triples), incident_(at(n)), state_(at(n), 0), stop_at_(stop_at) {
    for (std::size_t i = 0; i < triples.size(); ++i)
      for (Id v : triples[i]) incident_[at(v)].push_back(i);
    upper_ = std::min<long long>(n / 3, static_cast<long long>(triples.size()));
  }

  OracleResult run() {
    rec(0, n_);
    OracleResult r;
    r.size = static_cast<long long>(best_.size());
    for (std::size_t i : best_) {
      Triple t = triples_[i];
      std::sort(t.begin(), t.end());
      r.triples.push_back(t);
    }
    std::sort(r.triples.begin(), r.triples.end());
    r.nodes = nodes_;
    r.stopped_early = stop_at_ > 0 && r.size >= stop_at_ && r.size < upper_;
    return r;
  }

 private:
  bool done() const {
    const auto have = static_cast<long long>(best_.size());
    return have >= upper_ || (stop_at_ > 0 && have >= stop_at_);
  }

  // state: 0 open, 1 covered, 2 deliberately left uncovered
  void rec(Id from, long long open) {
    ++nodes_;
    const auto cur = static_cast<long long>(chosen_.size());
    if (cur > static_cast<long long>(best_.size())) best_ = chosen_;
    if (done() || cur + open / 3 <= static_cast<long long>(best_.size())) return;
    Id v = from;
    while (v < n_ && state_[at(v)] != 0) ++v;
    if (v >= n_) return;
    for (std::size_t i : incident_[at(v)]) {
      const Triple& t = triples_[i];
      if (state_[at(t[0])] || state_[at(t[1])] || state_[at(t[2])]) continue;
      for (Id w : t) state_[at(w)] = 1;
      chosen_.push_back(i);
      rec(v + 1, open - 3);
      chosen_.pop_back();
      for (Id w : t) state_[at(w)] = 0;
      if (done()) return;
    }
    state_[at(v)] = 2;
    rec(v + 1, open - 1);
    state_[at(v)] = 0;
  }

  Id n_;
  const std::vector<Triple>& triples_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<char> state_;
  std::vector<std::size_t> chosen_, best_;
  long long upper_ = 0, nodes_ = 0, stop_at_ = 0;
};

void check_cap(long long size, int cap, const char* what) {
  if (size > cap)
    throw TooLarge(std::string(what) + " of size " + std::to_string(size) + " exceeds the oracle cap " +
                   std::to_string(cap));
}

}  // namespace

OracleResult brute_force_max(const ColoredBipartiteGraph& g, const OracleOptions& opt) {
  check_cap(g.nx(), opt.cap > 0 ? opt.cap : kGraphOracleCap, "graph side");
  return GraphSearch(g, opt.stop_at).run();
}

OracleResult brute_force_max(const LatinArray& l, const OracleOptions& opt) {
  return brute_force_max(latin_to_graph(l), opt);
}

OracleResult brute_force_max(const SteinerTripleSystem& s, const OracleOptions& opt) {
  check_cap(s.n(), opt.cap > 0 ? opt.cap : kTripleOracleCap, "triple system");
  return TripleSearch(s.n(), s.triples(), opt.stop_at).run();
}

OracleResult brute_force_max(const LinearHypergraph3& h, const OracleOptions& opt) {
  check_cap(h.num_vertices(), opt.cap > 0 ? opt.cap : kTripleOracleCap, "hypergraph");
  return TripleSearch(h.num_vertices(), h.edges(), opt.stop_at).run();
}

}  // namespace rainbow
