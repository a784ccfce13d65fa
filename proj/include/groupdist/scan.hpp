#pragma once

// Bound-verification scan over catalog pairs.
//
// Same-order non-isomorphic pairs get a minimum-distance record checked
// against 9 d >= 2 n^2 and 9 d > n^2. Cross-order pairs |G| < |K| <= 12 where
// G does not embed in K get an exact overlap record checked against
// 9 overlap <= 7 |G|^2. Heuristic distance records (large orders) only assert
// the lower-bound direction on their best-found value.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "groupdist/catalog.hpp"
#include "groupdist/metric.hpp"
#include "groupdist/report.hpp"

namespace groupdist {

enum class SolveMode { kExact, kHeuristic };

struct ScanOptions {
  int max_order = 10;
  bool include_27 = false;
  SolveMode mode = SolveMode::kExact;
  // Same-order pairs above this order are searched heuristically.
  int exact_max_order = 10;
  std::uint64_t budget = 1'000'000'000ULL;
  std::uint64_t seed = 1;
  int restarts = 32;
  int jobs = 1;
  bool timings = false;
};

inline constexpr int kMaxCrossOrder = 12;
inline constexpr int kMaxExactOrder = 12;

struct ScanRecord {
  std::string kind;  // "distance" or "overlap"
  std::string name_a, name_b;
  int order_a = 0, order_b = 0;
  bool related = false;  // isomorphic (distance) or embeddable (overlap)
  std::int64_t value = 0;
  bool exact = false;
  std::int64_t bound_num = 0, bound_den = 9;
  bool pass = false;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  std::vector<Elem> witness;
};

struct ScanSummary {
  std::int64_t pairs_checked = 0;
  std::int64_t failures = 0;
  // Minimum over records of (distance - 2n^2/9) or (7|G|^2/9 - overlap).
  std::int64_t min_margin_num = 0;
  std::int64_t min_margin_den = 9;
};

struct ScanReport {
  std::vector<ScanRecord> records;
  ScanSummary summary;
};

// Recomputes a record's verdict from its own integers.
inline bool recompute_pass(const ScanRecord& r) {
  if (r.kind == "distance")
    return r.value * r.bound_den >= r.bound_num &&
           distance_exceeds_one_ninth(r.value, r.order_a);
  return r.exact && r.value * r.bound_den <= r.bound_num;
}

inline std::int64_t margin_num(const ScanRecord& r) {
  return r.kind == "distance" ? r.value * r.bound_den - r.bound_num : r.bound_num - r.value * r.bound_den;
}

namespace detail {

struct ScanJob {
  const CatalogEntry* a;
  const CatalogEntry* b;
  bool distance;
  bool exact;
};

inline ScanRecord run_job(const ScanJob& job, const ScanOptions& opts, std::uint64_t seed) {
  ScanRecord r;
  r.name_a = job.a->name;
  r.name_b = job.b->name;
  r.order_a = job.a->order;
  r.order_b = job.b->order;
  const std::int64_t n = r.order_a;
  if (job.distance) {
    r.kind = "distance";
    r.related = is_isomorphic(job.a->table, job.b->table);
    const DistanceResult d = job.exact ? min_distance_exact(job.a->table, job.b->table, opts.budget)
                                       : min_distance_heuristic(job.a->table, job.b->table, seed,
                                                                opts.restarts);
    r.value = d.value;
    r.exact = d.exact;
    r.bound_num = 2 * n * n;
    r.nodes = d.nodes_explored;
    r.seconds = d.elapsed_seconds;
    r.witness = d.witness.images;
  } else {
    r.kind = "overlap";
    r.related = false;
    const OverlapResult o = overlap_exact(job.a->table, job.b->table, opts.budget);
    r.value = o.value;
    r.exact = o.exact;
    r.bound_num = 7 * n * n;
    r.nodes = o.nodes_explored;
    r.seconds = o.elapsed_seconds;
    r.witness = o.witness.images;
  }
  r.bound_den = 9;
  r.pass = recompute_pass(r);
  return r;
}

}  // namespace detail

inline void check_scan_options(const ScanOptions& opts) {
  if (opts.max_order < 1 || opts.max_order > 15)
    throw Error("max order " + std::to_string(opts.max_order) +
                " is not covered by the catalog (supported: 1..15, plus --include-27)");
  if (opts.exact_max_order > kMaxExactOrder)
    throw Error("exact search is limited to orders <= " + std::to_string(kMaxExactOrder));
  if (opts.jobs < 1) throw Error("jobs must be positive");
}

inline ScanReport run_scan(const ScanOptions& opts) {
  check_scan_options(opts);
  std::vector<detail::ScanJob> jobs;
  std::vector<int> orders;
  for (int n = 1; n <= opts.max_order; ++n) orders.push_back(n);
  if (opts.include_27) orders.push_back(27);
  const auto& cat = catalog();
  for (int n : orders) {
    const bool exact = opts.mode == SolveMode::kExact && n <= opts.exact_max_order;
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = i + 1; j < cat.size(); ++j)
        if (cat[i].order == n && cat[j].order == n) jobs.push_back({&cat[i], &cat[j], true, exact});
  }
  const int cross_max = std::min(opts.max_order, kMaxCrossOrder);
  for (const CatalogEntry& g : cat)
    for (const CatalogEntry& k : cat) {
      if (!(g.order < k.order && k.order <= cross_max)) continue;
      if (find_subgroup_embedding(g.table, k.table)) continue;
      jobs.push_back({&g, &k, false, true});
    }

  std::vector<ScanRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      records[i] = detail::run_job(jobs[i], opts, opts.seed + i);
  };
  const int threads = std::min<int>(opts.jobs, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::stable_sort(records.begin(), records.end(), [](const ScanRecord& x, const ScanRecord& y) {
    return std::tie(x.order_a, x.name_a, x.name_b) < std::tie(y.order_a, y.name_a, y.name_b);
  });

  ScanReport report;
  report.summary.pairs_checked = static_cast<std::int64_t>(records.size());
  bool first = true;
  for (const ScanRecord& r : records) {
    report.summary.failures += !r.pass;
    const std::int64_t m = margin_num(r);
    if (first || m < report.summary.min_margin_num) report.summary.min_margin_num = m;
    first = false;
  }
  report.records = std::move(records);
  return report;
}

inline Json to_json(const ScanRecord& r, bool include_timing) {
  Json j;
  j["kind"] = r.kind;
  j["pair"] = {r.name_a, r.name_b};
  j["name_a"] = r.name_a;
  j["name_b"] = r.name_b;
  j["order"] = r.order_a;
  j["order_b"] = r.order_b;
  if (r.kind == "distance") {
    j["isomorphic"] = r.related;
    j["embeddable"] = nullptr;
  } else {
    j["isomorphic"] = nullptr;
    j["embeddable"] = r.related;
  }
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["bound_num"] = r.bound_num;
  j["bound_den"] = r.bound_den;
  j["pass"] = r.pass;
  j["nodes"] = r.nodes;
  if (include_timing) j["seconds"] = r.seconds;
  j["witness"] = r.witness;
  return j;
}

inline Json to_json(const ScanReport& report, bool include_timing) {
  Json j;
  Json recs = Json::array();
  for (const ScanRecord& r : report.records) recs.push_back(to_json(r, include_timing));
  j["records"] = std::move(recs);
  j["summary"] = {
      {"pairs_checked", report.summary.pairs_checked},
      {"failures", report.summary.failures},
      {"min_margin", {{"num", report.summary.min_margin_num}, {"den", report.summary.min_margin_den}}},
  };
  return j;
}

}  // namespace groupdist
