#pragma once

// Self-correction of near-homomorphisms by plurality decoding, with exact
// integer checks of the 7/9, 2/3 and 5/9 thresholds.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "groupdist/group.hpp"
#include "groupdist/metric.hpp"

namespace groupdist {

// An exact fraction; comparisons against thresholds are cross-multiplied.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // this > p/q
  bool exceeds(std::int64_t p, std::int64_t q) const { return num * q > p * den; }
  // this >= p/q
  bool at_least(std::int64_t p, std::int64_t q) const { return num * q >= p * den; }
  double approx() const { return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// A total map f : G -> K, not necessarily a homomorphism.
struct NoisyMap {
  GroupTable source;
  GroupTable target;
  std::vector<Elem> images;

  NoisyMap() = default;
  NoisyMap(GroupTable g, GroupTable k, std::vector<Elem> imgs)
      : source(std::move(g)), target(std::move(k)), images(std::move(imgs)) {
    if (images.size() != static_cast<std::size_t>(source.order()))
      throw Error("NoisyMap: image count differs from |G|");
    for (Elem v : images)
      if (v < 0 || v >= target.order()) throw Error("NoisyMap: image out of range");
  }

  static NoisyMap from(const GroupTable& g, const GroupTable& k, const ElementMap& m) {
    return NoisyMap(g, k, m.images);
  }

  ElementMap as_map() const { return {source.order(), target.order(), images}; }
};

inline Ratio pair_agreement(const NoisyMap& f) {
  const std::int64_t n = f.source.order();
  return {agreement_under_map(f.source, f.target, f.as_map()), n * n};
}

struct SampledAgreement {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double estimate() const { return samples ? static_cast<double>(hits) / samples : 0.0; }
};

inline SampledAgreement sampled_agreement(const NoisyMap& f, std::uint64_t samples,
                                          std::uint64_t seed) {
  if (samples == 0) throw Error("sampled_agreement: need at least one sample");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint64_t>(f.source.order());
  SampledAgreement s{0, samples};
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto x = static_cast<Elem>(detail::rng_below(rng, n));
    const auto y = static_cast<Elem>(detail::rng_below(rng, n));
    s.hits += f.images[f.source.op(x, y)] == f.target.op(f.images[x], f.images[y]);
  }
  return s;
}

struct HomomorphismCheck {
  bool ok = true;
  // Lexicographically first violating pair.
  std::optional<std::pair<Elem, Elem>> counterexample;
};

inline HomomorphismCheck is_homomorphism(const std::vector<Elem>& m, const GroupTable& g,
                                         const GroupTable& k) {
  if (m.size() != static_cast<std::size_t>(g.order()))
    throw Error("is_homomorphism: map length differs from |G|");
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      if (m[g.op(x, y)] != k.op(m[x], m[y])) return {false, std::make_pair(x, y)};
  return {};
}

inline Ratio point_agreement(const std::vector<Elem>& f, const std::vector<Elem>& h) {
  if (f.size() != h.size()) throw Error("point_agreement: length mismatch");
  std::int64_t same = 0;
  for (std::size_t i = 0; i < f.size(); ++i) same += f[i] == h[i];
  return {same, static_cast<std::int64_t>(f.size())};
}

struct CorrectionReport {
  Ratio pair_agreement;
  std::vector<Elem> decoded;
  std::vector<int> plurality_counts;
  std::vector<char> tie_flags;
  HomomorphismCheck hom;
  Ratio point_agreement;

  // 9 num > 7 den
  bool pair_above_seven_ninths = false;
  // 3 count > 2 |G| for every element
  bool plurality_above_two_thirds = false;
  // 9 num >= 5 den
  bool point_at_least_five_ninths = false;

  bool is_hom() const { return hom.ok; }
  int min_plurality() const {
    int m = std::numeric_limits<int>::max();
    for (int c : plurality_counts) m = std::min(m, c);
    return m;
  }
};

// h(x) = the most frequent value of f(x o y) * f(y)^-1 over y in G. Ties go to
// the smallest target index and are flagged.
inline CorrectionReport plurality_decode(const NoisyMap& f) {
  const GroupTable& g = f.source;
  const GroupTable& k = f.target;
  const int n = g.order(), m = k.order();
  const std::vector<Elem> k_inv = k.inverses();

  CorrectionReport r;
  r.pair_agreement = pair_agreement(f);
  r.decoded.assign(n, kUndefined);
  r.plurality_counts.assign(n, 0);
  r.tie_flags.assign(n, 0);

  std::vector<int> tally(m);
  for (Elem x = 0; x < n; ++x) {
    std::fill(tally.begin(), tally.end(), 0);
    for (Elem y = 0; y < n; ++y) ++tally[k.op(f.images[g.op(x, y)], k_inv[f.images[y]])];
    Elem winner = 0;
    for (Elem v = 1; v < m; ++v)
      if (tally[v] > tally[winner]) winner = v;
    int holders = 0;
    for (Elem v = 0; v < m; ++v) holders += tally[v] == tally[winner];
    r.decoded[x] = winner;
    r.plurality_counts[x] = tally[winner];
    r.tie_flags[x] = holders > 1;
  }

  r.hom = is_homomorphism(r.decoded, g, k);
  r.point_agreement = point_agreement(f.images, r.decoded);
  r.pair_above_seven_ninths = r.pair_agreement.exceeds(7, 9);
  r.plurality_above_two_thirds = true;
  for (int c : r.plurality_counts)
    if (3 * static_cast<std::int64_t>(c) <= 2 * static_cast<std::int64_t>(n))
      r.plurality_above_two_thirds = false;
  r.point_at_least_five_ninths = r.point_agreement.at_least(5, 9);
  return r;
}

struct CorrectionVerdict {
  CorrectionReport report;
  bool applicable = false;
  Outcome outcome = Outcome::kNotApplicable;
};

// When pair agreement exceeds 7/9, the decoded map must be a homomorphism,
// every plurality must exceed 2/3 |G|, and point agreement must reach 5/9.
inline CorrectionVerdict check_correction(const NoisyMap& f) {
  CorrectionVerdict v;
  v.report = plurality_decode(f);
  v.applicable = v.report.pair_above_seven_ninths;
  if (!v.applicable) {
    v.outcome = Outcome::kNotApplicable;
  } else {
    const bool ok = v.report.is_hom() && v.report.plurality_above_two_thirds &&
                    v.report.point_at_least_five_ninths;
    v.outcome = ok ? Outcome::kPass : Outcome::kFail;
  }
  return v;
}

// Replaces the images of `points` distinct seeded-random source elements by
// uniformly random different target values.
inline NoisyMap corrupt(const NoisyMap& h, int points, std::uint64_t seed) {
  const int n = h.source.order(), m = h.target.order();
  if (points < 0 || points > n) throw Error("corrupt: points must lie in 0..|G|");
  if (points > 0 && m < 2) throw Error("corrupt: target group has no alternative values");
  std::mt19937_64 rng(seed);
  std::vector<Elem> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  detail::seeded_shuffle(idx, rng);
  NoisyMap out = h;
  for (int i = 0; i < points; ++i) {
    const Elem x = idx[i];
    auto v = static_cast<Elem>(detail::rng_below(rng, static_cast<std::uint64_t>(m - 1)));
    if (v >= h.images[x]) ++v;
    out.images[x] = v;
  }
  return out;
}

}  // namespace groupdist
