#pragma once

// JSON records for solver results, correction reports and recovered
// embeddings. Fractions are always emitted as integer {num, den} pairs.

#include <string>
#include <vector>

#include "groupdist/blr.hpp"
#include "groupdist/embed.hpp"
#include "groupdist/metric.hpp"
#include "json.hpp"

namespace groupdist {

using Json = nlohmann::ordered_json;

inline Json to_json(const Ratio& r) { return Json{{"num", r.num}, {"den", r.den}}; }

inline Json to_json(const DistanceResult& r, const GroupTable& a, const GroupTable& b,
                    bool include_timing = false) {
  const std::int64_t n = a.order();
  Json j;
  j["pair"] = {a.name(), b.name()};
  j["order"] = n;
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["bound_num"] = 2 * n * n;
  j["bound_den"] = 9;
  j["pass"] = distance_meets_two_ninths(r.value, n) && distance_exceeds_one_ninth(r.value, n);
  j["nodes"] = r.nodes_explored;
  j["witness"] = r.witness.images;
  if (include_timing) j["seconds"] = r.elapsed_seconds;
  return j;
}

inline Json to_json(const OverlapResult& r, const GroupTable& g, const GroupTable& k,
                    bool include_timing = false) {
  const std::int64_t n = g.order();
  Json j;
  j["pair"] = {g.name(), k.name()};
  j["order"] = n;
  j["order_k"] = k.order();
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["bound_num"] = 7 * n * n;
  j["bound_den"] = 9;
  j["pass"] = r.exact && overlap_within_bound(r.value, n);
  j["nodes"] = r.nodes_explored;
  j["witness"] = r.witness.images;
  if (include_timing) j["seconds"] = r.elapsed_seconds;
  return j;
}

inline Json to_json(const CorrectionReport& r) {
  Json j;
  j["pair_agreement"] = to_json(r.pair_agreement);
  j["decoded"] = r.decoded;
  j["plurality_counts"] = r.plurality_counts;
  std::vector<int> ties;
  for (std::size_t i = 0; i < r.tie_flags.size(); ++i)
    if (r.tie_flags[i]) ties.push_back(static_cast<int>(i));
  j["tied_elements"] = ties;
  j["is_hom"] = r.is_hom();
  if (r.hom.counterexample)
    j["counterexample"] = {r.hom.counterexample->first, r.hom.counterexample->second};
  else
    j["counterexample"] = nullptr;
  j["point_agreement"] = to_json(r.point_agreement);
  j["thresholds"] = {
      {"pair_above_7_9", r.pair_above_seven_ninths},
      {"plurality_above_2_3", r.plurality_above_two_thirds},
      {"point_at_least_5_9", r.point_at_least_five_ninths},
  };
  return j;
}

inline Json to_json(const RecoveryRecord& r) {
  Json j;
  j["pair_agreement"] = to_json(r.pair_agreement);
  j["applicable"] = r.applicable;
  j["recovered"] = r.recovered;
  j["psi"] = r.psi;
  j["d"] = r.disagreement;
  j["image"] = r.image;
  j["image_is_subgroup"] = r.image_is_subgroup;
  return j;
}

inline Json to_json(const OverlapWitness& w) {
  Json j;
  j["s_size"] = w.s_size;
  j["gamma"] = w.gamma;
  j["kappa"] = w.kappa;
  j["g0"] = w.g0;
  j["agreement_count"] = w.agreement_count;
  if (w.z_stored) {
    Json z = Json::array();
    for (const auto& [x, y] : w.z_pairs) z.push_back({x, y});
    j["z_pairs"] = std::move(z);
  }
  return j;
}

// Flattens a list of flat JSON objects into CSV: a header row from the first
// object's keys, arrays joined by spaces, objects as num/den.
inline std::string to_csv(const std::vector<Json>& rows) {
  if (rows.empty()) return "";
  auto cell = [](const Json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!s.empty()) s += ' ';
        s += e.is_string() ? e.get<std::string>() : e.dump();
      }
      return s;
    }
    if (v.is_object() && v.contains("num") && v.contains("den"))
      return v["num"].dump() + "/" + v["den"].dump();
    return v.dump();
  };
  std::string out;
  bool first = true;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!first) out += ',';
    out += it.key();
    first = false;
  }
  out += '\n';
  for (const Json& row : rows) {
    first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
      if (!first) out += ',';
      out += row.contains(it.key()) ? cell(row[it.key()]) : std::string();
      first = false;
    }
    out += '\n';
  }
  return out;
}

}  // namespace groupdist
