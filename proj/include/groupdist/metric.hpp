#pragma once

// Hamming distance between multiplication tables, minimized over relabelings,
// and the overlap between groups of possibly different order.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "groupdist/group.hpp"

namespace groupdist {

struct DistanceResult {
  std::int64_t value = 0;
  Bijection witness;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
  double elapsed_seconds = 0.0;
};

struct OverlapResult {
  std::int64_t value = 0;
  Injection witness;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
  double elapsed_seconds = 0.0;
};

inline std::int64_t table_distance(const GroupTable& a, const GroupTable& b) {
  if (a.order() != b.order()) throw Error("table_distance: size mismatch");
  std::int64_t d = 0;
  const auto& ca = a.cells();
  const auto& cb = b.cells();
  for (std::size_t i = 0; i < ca.size(); ++i) d += ca[i] != cb[i];
  return d;
}

// #{(x,y) : m(x o y) = m(x) * m(y)} for a total map m.
inline std::int64_t agreement_under_map(const GroupTable& g, const GroupTable& k,
                                        const ElementMap& m) {
  if (m.domain_size != g.order() || m.codomain_size != k.order() || !m.is_total())
    throw Error("agreement_under_map: map must be total from g to k");
  const int n = g.order();
  std::int64_t agree = 0;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) agree += m(g.op(x, y)) == k.op(m(x), m(y));
  return agree;
}

inline std::int64_t distance_under_map(const GroupTable& a, const GroupTable& b,
                                       const Bijection& m) {
  if (a.order() != b.order()) throw Error("distance_under_map: size mismatch");
  if (!m.is_bijection() || m.domain_size != a.order())
    throw Error("distance_under_map: map is not a bijection");
  const std::int64_t n = a.order();
  return n * n - agreement_under_map(a, b, m);
}

namespace detail {

inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling; independent of the standard library's distributions
  // so seeded runs agree across toolchains.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do r = rng();
  while (r >= limit);
  return r % bound;
}

template <class T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng_below(rng, i)]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact search

enum class BoundMode {
  kNone,     // exhaustive enumeration, no pruning
  kDecided,  // disagreements among pairs whose three elements are all assigned
  kDemand,   // kDecided plus forced losses of pairs with a single unassigned element
};

struct SearchOptions {
  std::uint64_t budget = 1'000'000'000ULL;
  BoundMode bound = BoundMode::kDemand;
  // Initial incumbent; the search only looks for strictly better maps.
  std::optional<ElementMap> incumbent;
};

struct SearchResult {
  std::int64_t disagreements = 0;
  ElementMap witness;
  bool complete = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Minimizes #{(x,y) : phi(x o y) != phi(x) * phi(y)} over injections
// phi : g -> k by depth-first branch and bound. Elements of g are assigned in
// a static order; pairs are charged when their last element is assigned.
class InjectionSearch {
 public:
  InjectionSearch(const GroupTable& g, const GroupTable& k, SearchOptions opts)
      : g_(g), k_(k), opts_(std::move(opts)), n_(g.order()), m_(k.order()) {
    if (n_ > m_) throw Error("injection search: |g| > |k|");
    k_inv_ = k_.inverses();
    build_order();
    build_pair_lists();
  }

  const std::vector<Elem>& order() const { return order_; }

  SearchResult run() {
    img_.assign(n_, kUndefined);
    owner_.assign(m_, kUndefined);
    demand_.assign(n_, 0);
    best_cnt_.assign(n_, 0);
    cnt_.assign(static_cast<std::size_t>(n_) * m_, 0);
    slack_ = 0;
    decided_ = 0;
    nodes_ = 0;
    aborted_ = false;

    const std::int64_t all_pairs = static_cast<std::int64_t>(n_) * n_;
    if (opts_.incumbent) {
      const ElementMap& inc = *opts_.incumbent;
      if (!inc.is_total() || !inc.is_injective() || inc.domain_size != n_ || inc.codomain_size != m_)
        throw Error("injection search: incumbent is not a total injection");
      best_ = all_pairs - agreement_under_map(g_, k_, inc);
      best_map_ = inc.images;
    } else {
      best_ = all_pairs + 1;
      best_map_.clear();
    }
    dfs(0);
    SearchResult r;
    r.disagreements = best_;
    r.witness = ElementMap{n_, m_, best_map_};
    r.complete = !aborted_;
    r.nodes = nodes_;
    return r;
  }

 private:
  struct Pair {
    Elem a, b, c;
  };
  // A pair with exactly one unassigned element, known once every other
  // element of the pair is assigned.
  struct Demand {
    Elem a, b, c;
    Elem target;  // the element still unassigned
    std::uint8_t kind;
  };
  enum : std::uint8_t { kTargetA, kTargetB, kTargetC, kNeedIdentityA, kNeedIdentityB };

  void build_order() {
    std::vector<char> placed(n_);
    order_.clear();
    pos_.assign(n_, -1);
    for (int step = 0; step < n_; ++step) {
      int best_gain = -1;
      Elem pick = kUndefined;
      for (Elem x = 0; x < n_; ++x) {
        if (placed[x]) continue;
        // Triples (a, b, a o b) that become fully assigned when x is added.
        int gain = 0;
        auto in = [&](Elem z) { return placed[z] || z == x; };
        for (Elem a = 0; a < n_; ++a) {
          if (!in(a)) continue;
          for (Elem b = 0; b < n_; ++b) {
            if (!in(b)) continue;
            const Elem c = g_.op(a, b);
            if (!in(c)) continue;
            if (a == x || b == x || c == x) ++gain;
          }
        }
        if (gain > best_gain) {
          best_gain = gain;
          pick = x;
        }
      }
      placed[pick] = 1;
      pos_[pick] = step;
      order_.push_back(pick);
    }
  }

  void build_pair_lists() {
    complete_at_.assign(n_, {});
    demand_at_.assign(n_, {});
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) {
        const Elem c = g_.op(a, b);
        const Elem last = std::max({pos_[a], pos_[b], pos_[c]});
        complete_at_[last].push_back({a, b, c});
        const Elem target = order_[last];
        const int occurrences = (a == target) + (b == target) + (c == target);
        int second = -1;
        for (Elem z : {a, b, c})
          if (z != target) second = std::max(second, pos_[z]);
        if (second < 0) continue;
        Demand d{a, b, c, target, 0};
        if (occurrences == 1) {
          d.kind = a == target ? kTargetA : b == target ? kTargetB : kTargetC;
        } else if (a == target && c == target) {
          d.kind = kNeedIdentityB;  // a o b = a forces phi(b) = e
        } else if (b == target && c == target) {
          d.kind = kNeedIdentityA;
        } else {
          continue;  // a = b = target: a square-root condition, not single-valued
        }
        demand_at_[second].push_back(d);
      }
  }

  std::int64_t pair_cost(const Pair& p) const {
    return img_[p.c] != k_.op(img_[p.a], img_[p.b]);
  }

  std::int64_t completion_cost(int depth) const {
    std::int64_t cost = 0;
    for (const Pair& p : complete_at_[depth]) cost += pair_cost(p);
    return cost;
  }

  struct CountChange {
    std::size_t cell;
    Elem target;
    int old_best;
  };

  // Registers the demands that become known at this depth on the undo
  // stacks. Returns the increase in slack.
  std::int64_t push_demands(int depth) {
    std::int64_t delta = 0;
    for (const Demand& d : demand_at_[depth]) {
      Elem want = kUndefined;
      switch (d.kind) {
        case kTargetC: want = k_.op(img_[d.a], img_[d.b]); break;
        case kTargetA: want = k_.op(img_[d.c], k_inv_[img_[d.b]]); break;
        case kTargetB: want = k_.op(k_inv_[img_[d.a]], img_[d.c]); break;
        case kNeedIdentityA:
          if (img_[d.a] == k_.identity()) continue;
          break;
        case kNeedIdentityB:
          if (img_[d.b] == k_.identity()) continue;
          break;
      }
      ++demand_[d.target];
      bumped_.push_back(d.target);
      ++delta;
      // Demands for a value already taken can never be met.
      if (want != kUndefined && owner_[want] == kUndefined) {
        const std::size_t cell = static_cast<std::size_t>(d.target) * m_ + want;
        const int c = ++cnt_[cell];
        changes_.push_back({cell, d.target, best_cnt_[d.target]});
        if (c > best_cnt_[d.target]) {
          best_cnt_[d.target] = c;
          --delta;
        }
      }
    }
    return delta;
  }

  void pop_demands(std::size_t change_mark, std::size_t bump_mark) {
    while (changes_.size() > change_mark) {
      const CountChange& ch = changes_.back();
      --cnt_[ch.cell];
      best_cnt_[ch.target] = ch.old_best;
      changes_.pop_back();
    }
    while (bumped_.size() > bump_mark) {
      --demand_[bumped_.back()];
      bumped_.pop_back();
    }
  }

  void dfs(int depth) {
    if (depth == n_) {
      if (decided_ < best_) {
        best_ = decided_;
        best_map_ = img_;
      }
      return;
    }
    const Elem x = order_[depth];
    const bool prune = opts_.bound != BoundMode::kNone;
    const bool use_demands = opts_.bound == BoundMode::kDemand;
    const std::int64_t own_slack = use_demands ? demand_[x] - best_cnt_[x] : 0;
    const std::int64_t base = decided_ + slack_ - own_slack;

    // Candidate images, cheapest completion first; ties by ascending index.
    std::vector<std::pair<std::int64_t, Elem>> cands;
    cands.reserve(m_);
    for (Elem v = 0; v < m_; ++v) {
      if (owner_[v] != kUndefined) continue;
      img_[x] = v;
      const std::int64_t cost = completion_cost(depth);
      img_[x] = kUndefined;
      if (prune && base + cost >= best_) continue;
      cands.emplace_back(cost, v);
    }
    std::sort(cands.begin(), cands.end());

    for (const auto& [cost, v] : cands) {
      if (prune && base + cost >= best_) break;
      if (nodes_ >= opts_.budget) {
        aborted_ = true;
        return;
      }
      ++nodes_;
      img_[x] = v;
      owner_[v] = x;
      decided_ += cost;
      slack_ -= own_slack;
      const std::size_t change_mark = changes_.size(), bump_mark = bumped_.size();
      const std::int64_t added = use_demands ? push_demands(depth) : 0;
      slack_ += added;
      if (!prune || decided_ + slack_ < best_) dfs(depth + 1);
      pop_demands(change_mark, bump_mark);
      slack_ -= added;
      slack_ += own_slack;
      decided_ -= cost;
      owner_[v] = kUndefined;
      img_[x] = kUndefined;
      if (aborted_) return;
    }
  }

  const GroupTable& g_;
  const GroupTable& k_;
  SearchOptions opts_;
  int n_, m_;
  std::vector<Elem> k_inv_;
  std::vector<Elem> order_;
  std::vector<int> pos_;
  std::vector<std::vector<Pair>> complete_at_;
  std::vector<std::vector<Demand>> demand_at_;

  std::vector<Elem> img_, owner_;
  std::vector<int> demand_, best_cnt_, cnt_;
  std::int64_t slack_ = 0, decided_ = 0;
  std::int64_t best_ = 0;
  std::vector<Elem> best_map_;
  std::vector<CountChange> changes_;
  std::vector<Elem> bumped_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

inline SearchResult min_disagreement_injection(const GroupTable& g, const GroupTable& k,
                                               const SearchOptions& opts) {
  return detail::InjectionSearch(g, k, opts).run();
}

// ---------------------------------------------------------------------------
// Local search

namespace detail {

// Multi-restart first-improvement descent over injections g -> k, stored as
// a permutation p of k's indices with phi(x) = p[x]. Moves are
// transpositions of p with at least one position inside g.
class LocalSearch {
 public:
  LocalSearch(const GroupTable& g, const GroupTable& k) : g_(g), k_(k), n_(g.order()), m_(k.order()) {
    if (n_ > m_) throw Error("local search: |g| > |k|");
    g_inv_ = g_.inverses();
    stamp_.assign(static_cast<std::size_t>(n_) * n_, 0);
  }

  std::int64_t cost(const std::vector<Elem>& p) const {
    std::int64_t c = 0;
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y) c += p[g_.op(x, y)] != k_.op(p[x], p[y]);
    return c;
  }

  // Cost of the pairs touching u or v (both positions < n_ where present).
  std::int64_t local_cost(const std::vector<Elem>& p, Elem u, Elem v) {
    ++epoch_;
    std::int64_t c = 0;
    auto visit = [&](Elem x, Elem y) {
      const std::size_t id = static_cast<std::size_t>(x) * n_ + y;
      if (stamp_[id] == epoch_) return;
      stamp_[id] = epoch_;
      c += p[g_.op(x, y)] != k_.op(p[x], p[y]);
    };
    for (Elem w : {u, v}) {
      if (w >= n_) continue;
      for (Elem t = 0; t < n_; ++t) {
        visit(w, t);
        visit(t, w);
        visit(t, g_.op(g_inv_[t], w));
      }
    }
    return c;
  }

  // Returns the local optimum cost; p is updated in place.
  std::int64_t descend(std::vector<Elem>& p, std::int64_t current) {
    // Enumerate moves (u, v), u < n_, u < v < m_, cyclically from the last
    // improvement; stop after a full pass without improvement.
    std::vector<std::pair<Elem, Elem>> moves;
    for (Elem u = 0; u < n_; ++u)
      for (Elem v = u + 1; v < m_; ++v) moves.emplace_back(u, v);
    if (moves.empty()) return current;
    std::size_t idx = 0, since_improvement = 0;
    while (since_improvement < moves.size()) {
      const auto [u, v] = moves[idx];
      const std::int64_t before = local_cost(p, u, v);
      std::swap(p[u], p[v]);
      const std::int64_t after = local_cost(p, u, v);
      if (after < before) {
        current += after - before;
        since_improvement = 0;
      } else {
        std::swap(p[u], p[v]);
        ++since_improvement;
      }
      idx = (idx + 1) % moves.size();
    }
    return current;
  }

 private:
  const GroupTable& g_;
  const GroupTable& k_;
  int n_, m_;
  std::vector<Elem> g_inv_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

struct HeuristicOutcome {
  std::int64_t disagreements;
  ElementMap witness;
  std::uint64_t moves_evaluated;
};

inline HeuristicOutcome local_search(const GroupTable& g, const GroupTable& k, std::uint64_t seed,
                                     int restarts) {
  const int n = g.order(), m = k.order();
  LocalSearch ls(g, k);
  std::mt19937_64 rng(seed);
  std::vector<Elem> best_p;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<Elem> p(m);
  const int runs = std::max(restarts, 1);
  for (int r = 0; r < runs; ++r) {
    std::iota(p.begin(), p.end(), 0);
    // The first start is the given labeling; the rest are seeded shuffles.
    if (r > 0) seeded_shuffle(p, rng);
    const std::int64_t c = ls.descend(p, ls.cost(p));
    if (c < best) {
      best = c;
      best_p = p;
    }
  }
  ElementMap w{n, m, std::vector<Elem>(best_p.begin(), best_p.begin() + n)};
  return {best, std::move(w), static_cast<std::uint64_t>(runs)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public solvers

inline DistanceResult min_distance_heuristic(const GroupTable& a, const GroupTable& b,
                                             std::uint64_t seed, int restarts) {
  if (a.order() != b.order()) throw Error("min_distance_heuristic: size mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  auto out = detail::local_search(a, b, seed, restarts);
  DistanceResult r;
  r.value = out.disagreements;
  r.witness = std::move(out.witness);
  r.exact = false;
  r.nodes_explored = out.moves_evaluated;
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Restarts of the local search used to seed the exact solvers' incumbent.
inline constexpr int kIncumbentRestarts = 8;
inline constexpr std::uint64_t kIncumbentSeed = 0x5eed;

inline DistanceResult min_distance_exact(const GroupTable& a, const GroupTable& b,
                                         std::uint64_t budget = 1'000'000'000ULL,
                                         BoundMode bound = BoundMode::kDemand) {
  if (a.order() != b.order()) throw Error("min_distance_exact: size mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  SearchOptions opts;
  opts.budget = budget;
  opts.bound = bound;
  if (bound != BoundMode::kNone)
    opts.incumbent = detail::local_search(a, b, kIncumbentSeed, kIncumbentRestarts).witness;
  const SearchResult s = min_disagreement_injection(a, b, opts);
  DistanceResult r;
  r.value = s.disagreements;
  r.witness = s.witness;
  r.exact = s.complete;
  r.nodes_explored = s.nodes;
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Maximum over total injections phi : g -> k of #{(x,y) : phi(x o y) = phi(x) * phi(y)}.
inline OverlapResult overlap_exact(const GroupTable& g, const GroupTable& k,
                                   std::uint64_t budget = 1'000'000'000ULL,
                                   BoundMode bound = BoundMode::kDemand) {
  if (g.order() > k.order()) throw Error("overlap_exact: |g| > |k|");
  const auto t0 = std::chrono::steady_clock::now();
  SearchOptions opts;
  opts.budget = budget;
  opts.bound = bound;
  if (bound != BoundMode::kNone)
    opts.incumbent = detail::local_search(g, k, kIncumbentSeed, kIncumbentRestarts).witness;
  const SearchResult s = min_disagreement_injection(g, k, opts);
  const std::int64_t n = g.order();
  OverlapResult r;
  r.value = n * n - s.disagreements;
  r.witness = s.witness;
  r.exact = s.complete;
  r.nodes_explored = s.nodes;
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline OverlapResult overlap_heuristic(const GroupTable& g, const GroupTable& k, std::uint64_t seed,
                                       int restarts) {
  if (g.order() > k.order()) throw Error("overlap_heuristic: |g| > |k|");
  const auto t0 = std::chrono::steady_clock::now();
  auto out = detail::local_search(g, k, seed, restarts);
  const std::int64_t n = g.order();
  OverlapResult r;
  r.value = n * n - out.disagreements;
  r.witness = std::move(out.witness);
  r.exact = false;
  r.nodes_explored = out.moves_evaluated;
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------
// Bound verdicts

enum class Outcome { kPass, kFail, kNotApplicable };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kPass: return "pass";
    case Outcome::kFail: return "fail";
    case Outcome::kNotApplicable: return "not-applicable";
  }
  return "unknown";
}

struct BoundVerdict {
  bool embeddable = false;
  bool equal_order = false;
  std::int64_t n = 0;  // |g|
  std::int64_t overlap = 0;
  bool exact = false;
  // Overlap bound 7/9 |g|^2 as an exact fraction.
  std::int64_t overlap_bound_num = 0;
  std::int64_t overlap_bound_den = 9;
  bool overlap_ok = false;
  // Equal orders only: distance = n^2 - overlap.
  std::int64_t distance = 0;
  bool distance_two_ninths_ok = false;  // 9 d >= 2 n^2
  bool distance_one_ninth_ok = false;   // 9 d > n^2
  Outcome outcome = Outcome::kNotApplicable;
  std::uint64_t nodes = 0;
  ElementMap witness;
};

inline bool overlap_within_bound(std::int64_t overlap, std::int64_t n) { return 9 * overlap <= 7 * n * n; }
inline bool distance_meets_two_ninths(std::int64_t d, std::int64_t n) { return 9 * d >= 2 * n * n; }
inline bool distance_exceeds_one_ninth(std::int64_t d, std::int64_t n) { return 9 * d > n * n; }

// Checks the overlap bound for a pair with |g| <= |k|, and for equal orders
// the distance bounds 2/9 n^2 and (strictly) 1/9 n^2. Pairs where g embeds in
// k fall outside the hypothesis and are reported not-applicable.
inline BoundVerdict check_bounds(const GroupTable& g, const GroupTable& k,
                                       std::uint64_t budget = 1'000'000'000ULL) {
  if (g.order() > k.order()) throw Error("check_bounds: |g| > |k|");
  BoundVerdict v;
  v.n = g.order();
  v.equal_order = g.order() == k.order();
  v.overlap_bound_num = 7 * v.n * v.n;
  v.embeddable = find_subgroup_embedding(g, k).has_value();
  if (v.embeddable) {
    v.overlap = v.n * v.n;
    v.exact = true;
    v.outcome = Outcome::kNotApplicable;
    return v;
  }
  const OverlapResult ov = overlap_exact(g, k, budget);
  v.overlap = ov.value;
  v.exact = ov.exact;
  v.nodes = ov.nodes_explored;
  v.witness = ov.witness;
  v.overlap_ok = overlap_within_bound(v.overlap, v.n);
  bool ok = v.overlap_ok;
  if (v.equal_order) {
    v.distance = v.n * v.n - v.overlap;
    v.distance_two_ninths_ok = distance_meets_two_ninths(v.distance, v.n);
    v.distance_one_ninth_ok = distance_exceeds_one_ninth(v.distance, v.n);
    ok = ok && v.distance_two_ninths_ok && v.distance_one_ninth_ok;
  }
  // A non-exhaustive search only bounds the overlap from below; it can
  // refute the bound but not confirm it.
  if (!ok)
    v.outcome = Outcome::kFail;
  else
    v.outcome = v.exact ? Outcome::kPass : Outcome::kNotApplicable;
  return v;
}

}  // namespace groupdist
