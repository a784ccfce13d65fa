#pragma once

// Overlap witnesses (gamma, kappa, S, Z), the matched region G0, extension of
// partial injections, and recovery of a subgroup embedding from a
// near-embedding.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupdist/blr.hpp"
#include "groupdist/group.hpp"

namespace groupdist {

// Raised when a check that must hold under a satisfied hypothesis fails.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Pairs are stored explicitly only up to this order; above it only the count.
inline constexpr int kMaxStoredZOrder = 32;

struct OverlapWitness {
  int s_size = 0;
  int g_size = 0;
  int k_size = 0;
  std::vector<Elem> gamma;  // G -> S
  std::vector<Elem> kappa;  // K -> S
  std::vector<std::pair<Elem, Elem>> z_pairs;
  bool z_stored = true;
  std::vector<Elem> g0;
  std::int64_t agreement_count = 0;
};

namespace detail {

inline std::vector<Elem> invert_into(const std::vector<Elem>& inj, int target_size) {
  std::vector<Elem> inv(target_size, kUndefined);
  for (Elem x = 0; x < static_cast<Elem>(inj.size()); ++x) inv[inj[x]] = x;
  return inv;
}

}  // namespace detail

// Builds the witness for arbitrary injections gamma : G -> S, kappa : K -> S.
inline OverlapWitness witness_from_embeddings(const GroupTable& g, const GroupTable& k, int s_size,
                                              std::vector<Elem> gamma, std::vector<Elem> kappa) {
  if (s_size < std::max(g.order(), k.order())) throw Error("overlap witness: |S| < max(|G|, |K|)");
  const ElementMap gm{g.order(), s_size, gamma}, km{k.order(), s_size, kappa};
  if (!gm.is_total() || !gm.is_injective()) throw Error("overlap witness: gamma is not an injection");
  if (!km.is_total() || !km.is_injective()) throw Error("overlap witness: kappa is not an injection");

  OverlapWitness w;
  w.s_size = s_size;
  w.g_size = g.order();
  w.k_size = k.order();
  w.gamma = std::move(gamma);
  w.kappa = std::move(kappa);
  w.z_stored = g.order() <= kMaxStoredZOrder;

  const std::vector<Elem> kappa_inv = detail::invert_into(w.kappa, s_size);
  for (Elem x = 0; x < g.order(); ++x)
    if (kappa_inv[w.gamma[x]] != kUndefined) w.g0.push_back(x);

  for (Elem x : w.g0)
    for (Elem y : w.g0) {
      const Elem xk = kappa_inv[w.gamma[x]], yk = kappa_inv[w.gamma[y]];
      if (w.gamma[g.op(x, y)] != w.kappa[k.op(xk, yk)]) continue;
      ++w.agreement_count;
      if (w.z_stored) w.z_pairs.emplace_back(x, y);
    }
  std::sort(w.z_pairs.begin(), w.z_pairs.end());
  return w;
}

// S = K, kappa = identity, gamma = phi.
inline OverlapWitness witness_from_injection(const Injection& phi, const GroupTable& g,
                                             const GroupTable& k) {
  if (g.order() > k.order()) throw Error("witness_from_injection: |G| > |K|");
  if (phi.domain_size != g.order() || phi.codomain_size != k.order() || !phi.is_total() ||
      !phi.is_injective())
    throw Error("witness_from_injection: phi is not a total injection G -> K");
  return witness_from_embeddings(g, k, k.order(), phi.images, ElementMap::identity(k.order()).images);
}

// Re-checks every witness invariant, including membership of each stored pair.
inline std::optional<std::string> witness_problem(const OverlapWitness& w, const GroupTable& g,
                                                  const GroupTable& k) {
  if (w.g_size != g.order() || w.k_size != k.order()) return "group sizes do not match";
  if (w.s_size < std::max(w.g_size, w.k_size)) return "|S| < max(|G|, |K|)";
  const ElementMap gm{w.g_size, w.s_size, w.gamma}, km{w.k_size, w.s_size, w.kappa};
  if (!gm.is_total() || !gm.is_injective()) return "gamma is not an injection";
  if (!km.is_total() || !km.is_injective()) return "kappa is not an injection";
  const std::vector<Elem> kappa_inv = detail::invert_into(w.kappa, w.s_size);
  std::vector<Elem> g0;
  for (Elem x = 0; x < w.g_size; ++x)
    if (kappa_inv[w.gamma[x]] != kUndefined) g0.push_back(x);
  if (g0 != w.g0) return "g0 differs from the preimage of kappa's image";
  if (w.z_stored) {
    if (static_cast<std::int64_t>(w.z_pairs.size()) != w.agreement_count)
      return "agreement count differs from |Z|";
    for (const auto& [x, y] : w.z_pairs) {
      const Elem xk = kappa_inv[w.gamma[x]], yk = kappa_inv[w.gamma[y]];
      if (xk == kUndefined || yk == kUndefined) return "pair in Z outside g0";
      if (w.gamma[g.op(x, y)] != w.kappa[k.op(xk, yk)]) return "pair in Z violates the product equation";
    }
  }
  return std::nullopt;
}

// x -> kappa^-1(gamma(x)) on g0.
inline PartialInjection partial_from_witness(const OverlapWitness& w) {
  const ElementMap gm{w.g_size, w.s_size, w.gamma}, km{w.k_size, w.s_size, w.kappa};
  if (!gm.is_total() || !gm.is_injective() || !km.is_total() || !km.is_injective())
    throw Error("partial_from_witness: gamma/kappa are not injections");
  const std::vector<Elem> kappa_inv = detail::invert_into(w.kappa, w.s_size);
  PartialInjection p = ElementMap::empty(w.g_size, w.k_size);
  for (Elem x : w.g0) {
    const Elem xk = kappa_inv[w.gamma[x]];
    if (xk == kUndefined) throw Error("partial_from_witness: g0 element outside kappa's image");
    p.images[x] = xk;
  }
  return p;
}

// Undefined elements take, in ascending source order, the smallest unused
// codomain index.
inline Injection extend_partial_injection(const PartialInjection& p, const GroupTable& g,
                                          const GroupTable& k) {
  if (g.order() > k.order()) throw Error("extend_partial_injection: |G| > |K|, no injection exists");
  if (p.domain_size != g.order() || p.codomain_size != k.order() || !p.is_injective())
    throw Error("extend_partial_injection: not a partial injection G -> K");
  Injection out = p;
  std::vector<char> used(k.order());
  for (Elem v : p.images)
    if (v != kUndefined) used[v] = 1;
  Elem next = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    if (out.images[x] != kUndefined) continue;
    while (used[next]) ++next;
    out.images[x] = next;
    used[next] = 1;
  }
  return out;
}

struct RecoveryRecord {
  Ratio pair_agreement;
  bool applicable = false;  // pair agreement > 7/9
  CorrectionReport report;
  std::vector<Elem> psi;
  std::int64_t disagreement = 0;  // #{x : psi(x) != phi(x)}
  std::vector<Elem> image;        // sorted image of psi in K
  bool image_is_subgroup = false;
  bool recovered = false;
};

inline bool is_subgroup(const std::vector<Elem>& subset, const GroupTable& k) {
  std::vector<char> in(k.order());
  for (Elem v : subset) in[v] = 1;
  if (!in[k.identity()]) return false;
  for (Elem a : subset) {
    if (!in[k.inverse(a)]) return false;
    for (Elem b : subset)
      if (!in[k.op(a, b)]) return false;
  }
  return true;
}

// Decodes phi; when its pair agreement exceeds 7/9 the decoded map must be an
// injective homomorphism within 4/9 |G| of phi whose image is a subgroup of K.
// Violations under the hypothesis throw InvariantViolation.
inline RecoveryRecord recover_embedding(const GroupTable& g, const GroupTable& k,
                                        const Injection& phi) {
  if (phi.domain_size != g.order() || phi.codomain_size != k.order() || !phi.is_total() ||
      !phi.is_injective())
    throw Error("recover_embedding: phi is not a total injection G -> K");
  RecoveryRecord r;
  const NoisyMap f(g, k, phi.images);
  r.report = plurality_decode(f);
  r.pair_agreement = r.report.pair_agreement;
  r.applicable = r.pair_agreement.exceeds(7, 9);
  r.psi = r.report.decoded;
  for (Elem x = 0; x < g.order(); ++x) r.disagreement += r.psi[x] != phi(x);
  r.image = r.psi;
  std::sort(r.image.begin(), r.image.end());
  r.image.erase(std::unique(r.image.begin(), r.image.end()), r.image.end());
  r.image_is_subgroup = is_subgroup(r.image, k);
  if (!r.applicable) return r;

  const std::string pair = g.name() + " -> " + k.name();
  if (!r.report.is_hom()) throw InvariantViolation("recover_embedding " + pair + ": decoded map is not a homomorphism");
  if (9 * r.disagreement >= 4 * static_cast<std::int64_t>(g.order()))
    throw InvariantViolation("recover_embedding " + pair + ": decoded map differs from phi on >= 4/9 of G");
  if (static_cast<int>(r.image.size()) != g.order())
    throw InvariantViolation("recover_embedding " + pair + ": decoded map is not injective");
  if (!r.image_is_subgroup)
    throw InvariantViolation("recover_embedding " + pair + ": image is not a subgroup");
  r.recovered = true;
  return r;
}

}  // namespace groupdist
