// groupdist: catalog tables, distance/overlap solvers, self-correction
// experiments and the bound-verification scan.
//
// Exit codes: 0 success, 1 a bound or threshold check failed, 2 usage, parse
// or validation error, 3 size mismatch.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "groupdist/blr.hpp"
#include "groupdist/catalog.hpp"
#include "groupdist/embed.hpp"
#include "groupdist/group.hpp"
#include "groupdist/metric.hpp"
#include "groupdist/report.hpp"
#include "groupdist/scan.hpp"

namespace gd = groupdist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitSize = 3;

struct InputError : gd::Error {
  using gd::Error::Error;
};

// A table source is a readable file or a catalog name.
gd::GroupTable load(const std::string& source) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source);
    if (!in) throw InputError("cannot read " + source);
    gd::GroupTable g = gd::parse_table(in);
    if (g.name().empty()) g = g.renamed(std::filesystem::path(source).stem().string());
    return g;
  }
  try {
    return gd::by_name(source).table;
  } catch (const gd::Error& e) {
    throw InputError(std::string("'") + source + "' is neither a readable table file nor a catalog name: " +
                     e.what());
  }
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw InputError("cannot write " + output);
  out << text;
}

std::string render(const std::vector<gd::Json>& rows, const gd::Json& doc, const std::string& format) {
  if (format == "csv") return gd::to_csv(rows);
  return doc.dump(2) + "\n";
}

struct Common {
  std::uint64_t seed = 1;
  std::uint64_t budget = 1'000'000'000ULL;
  std::string output;
  std::string format = "json";
  bool exact = false;
  bool heuristic = false;
  int restarts = 32;
  std::uint64_t samples = 0;
  bool timings = false;
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--budget", c.budget, "branch-and-bound node budget");
  cmd->add_option("-o,--output", c.output, "output path (default stdout)");
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* ex = cmd->add_flag("--exact", c.exact, "exact branch and bound (default)");
  cmd->add_flag("--heuristic", c.heuristic, "multi-restart local search")->excludes(ex);
  cmd->add_option("--restarts", c.restarts, "local search restarts")->check(CLI::PositiveNumber);
  cmd->add_flag("--timings", c.timings, "include wall-clock seconds in reports");
}

int cmd_gen(const std::string& name, const std::string& output) {
  const gd::CatalogEntry& e = gd::by_name(name);
  emit(gd::serialize(e.table), output);
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  gd::GroupTable g;
  try {
    g = gd::parse_table_shape(in);
  } catch (const gd::ParseError& e) {
    std::cout << path << ": invalid\n  " << e.what() << "\n";
    return kExitInput;
  }
  const gd::Verdict v = gd::validate(g);
  if (v.ok()) {
    std::cout << path << ": ok (order " << g.order() << ", identity " << g.identity() << ")\n";
    return kExitOk;
  }
  std::cout << path << ": invalid\n";
  for (const gd::Violation& viol : v.violations) {
    std::cout << "  " << gd::to_string(viol.kind) << ": " << viol.message << " [witness";
    for (gd::Elem w : viol.witness)
      if (w != gd::kUndefined) std::cout << ' ' << w;
    std::cout << "]\n";
  }
  return kExitInput;
}

int cmd_distance(const std::string& src_a, const std::string& src_b, const Common& c) {
  const gd::GroupTable a = load(src_a), b = load(src_b);
  if (a.order() != b.order()) {
    std::cerr << "distance: orders differ (" << a.order() << " vs " << b.order() << ")\n";
    return kExitSize;
  }
  const gd::DistanceResult r = c.heuristic ? gd::min_distance_heuristic(a, b, c.seed, c.restarts)
                                           : gd::min_distance_exact(a, b, c.budget);
  gd::Json j = gd::to_json(r, a, b, c.timings);
  const bool iso = gd::is_isomorphic(a, b);
  j["isomorphic"] = iso;
  if (iso) {
    j["bound_num"] = nullptr;
    j["bound_den"] = nullptr;
    j["pass"] = nullptr;
  }
  emit(render({j}, j, c.format), c.output);
  return kExitOk;
}

int cmd_overlap(const std::string& src_g, const std::string& src_k, const Common& c) {
  const gd::GroupTable g = load(src_g), k = load(src_k);
  if (g.order() > k.order()) {
    std::cerr << "overlap: |G| = " << g.order() << " exceeds |K| = " << k.order() << "\n";
    return kExitSize;
  }
  const gd::OverlapResult r = c.heuristic ? gd::overlap_heuristic(g, k, c.seed, c.restarts)
                                          : gd::overlap_exact(g, k, c.budget);
  gd::Json j = gd::to_json(r, g, k, c.timings);
  const bool embeddable = gd::find_subgroup_embedding(g, k).has_value();
  j["embeddable"] = embeddable;
  if (embeddable) j["pass"] = nullptr;
  if (c.format == "json" && g.order() <= gd::kMaxStoredZOrder)
    j["overlap_witness"] = gd::to_json(gd::witness_from_injection(r.witness, g, k));
  emit(render({j}, j, c.format), c.output);
  return kExitOk;
}

int cmd_correct(const std::string& src_g, const std::string& src_k, int points, int trials,
                const Common& c) {
  const gd::GroupTable g = load(src_g), k = load(src_k);
  if (points < 0 || points > g.order()) throw InputError("--points must lie in 0..|G|");
  // Base homomorphism: an embedding when one exists, otherwise the trivial map.
  std::vector<gd::Elem> base(g.order(), k.identity());
  std::string base_kind = "trivial";
  if (g.order() <= k.order()) {
    if (auto emb = gd::find_subgroup_embedding(g, k)) {
      base = emb->images;
      base_kind = "embedding";
    }
  }
  const gd::NoisyMap h(g, k, base);

  std::vector<gd::Json> rows;
  gd::Json trial_docs = gd::Json::array();
  int applicable = 0, passed = 0, failed = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    const gd::NoisyMap f = gd::corrupt(h, points, seed);
    const gd::CorrectionVerdict v = gd::check_correction(f);
    applicable += v.applicable;
    passed += v.outcome == gd::Outcome::kPass;
    failed += v.outcome == gd::Outcome::kFail;
    gd::Json row;
    row["trial"] = t;
    row["seed"] = seed;
    row["points"] = points;
    row["pair_agreement"] = gd::to_json(v.report.pair_agreement);
    row["applicable"] = v.applicable;
    row["is_hom"] = v.report.is_hom();
    row["min_plurality"] = v.report.min_plurality();
    row["point_agreement"] = gd::to_json(v.report.point_agreement);
    row["outcome"] = std::string(gd::to_string(v.outcome));
    if (c.samples > 0) row["sampled_agreement"] = {{"num", gd::sampled_agreement(f, c.samples, seed).hits},
                                                   {"den", c.samples}};
    rows.push_back(row);
    gd::Json full = row;
    full["report"] = gd::to_json(v.report);
    trial_docs.push_back(std::move(full));
  }
  gd::Json doc;
  doc["g"] = g.name();
  doc["k"] = k.name();
  doc["base"] = base_kind;
  doc["trials"] = std::move(trial_docs);
  doc["summary"] = {{"trials", trials}, {"applicable", applicable}, {"passed", passed}, {"failed", failed}};
  emit(render(rows, doc, c.format), c.output);
  return failed > 0 ? kExitCheckFailed : kExitOk;
}

int cmd_scan(gd::ScanOptions opts, const Common& c) {
  opts.mode = c.heuristic ? gd::SolveMode::kHeuristic : gd::SolveMode::kExact;
  opts.budget = c.budget;
  opts.seed = c.seed;
  opts.restarts = c.restarts;
  opts.timings = c.timings;
  try {
    gd::check_scan_options(opts);
  } catch (const gd::Error& e) {
    throw InputError(e.what());
  }
  const gd::ScanReport report = gd::run_scan(opts);
  const gd::Json doc = gd::to_json(report, opts.timings);
  std::vector<gd::Json> rows;
  for (const auto& r : doc["records"]) rows.push_back(r);
  emit(render(rows, doc, c.format), c.output);
  std::cerr << "scan: " << report.summary.pairs_checked << " pairs, " << report.summary.failures
            << " failures\n";
  return report.summary.failures > 0 ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distances between finite group multiplication tables"};
  app.require_subcommand(1);

  std::string name, path, output, src_a, src_b;
  Common common;

  auto* gen = app.add_subcommand("gen", "write a catalog group as a table file");
  gen->add_option("name", name, "catalog name")->required();
  gen->add_option("-o,--output", output, "output path (default stdout)");

  auto* val = app.add_subcommand("validate", "check a table file against the group axioms");
  val->add_option("file", path, "table file")->required();

  Common dist_c, over_c, corr_c, scan_c;
  auto* dist = app.add_subcommand("distance", "minimum table distance over relabelings");
  dist->add_option("a", src_a, "table file or catalog name")->required();
  dist->add_option("b", src_b, "table file or catalog name")->required();
  add_solver_flags(dist, dist_c);

  std::string over_g, over_k;
  auto* over = app.add_subcommand("overlap", "maximum agreement over injections G -> K");
  over->add_option("g", over_g, "table file or catalog name")->required();
  over->add_option("k", over_k, "table file or catalog name")->required();
  add_solver_flags(over, over_c);

  std::string corr_g, corr_k;
  int points = 0, trials = 1;
  auto* corr = app.add_subcommand("correct", "corrupt a homomorphism and self-correct it");
  corr->add_option("g", corr_g, "table file or catalog name")->required();
  corr->add_option("k", corr_k, "table file or catalog name")->required();
  corr->add_option("--points", points, "number of corrupted images");
  corr->add_option("--trials", trials, "number of seeded trials")->check(CLI::PositiveNumber);
  corr->add_option("--seed", corr_c.seed, "RNG seed of the first trial");
  corr->add_option("--samples", corr_c.samples, "also report a sampled agreement estimate");
  corr->add_option("-o,--output", corr_c.output, "output path (default stdout)");
  corr->add_option("--format", corr_c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  gd::ScanOptions scan_opts;
  auto* scan = app.add_subcommand("scan", "verify the distance and overlap bounds over the catalog");
  scan->add_option("--max-order", scan_opts.max_order, "largest order scanned (1..15)");
  scan->add_flag("--include-27", scan_opts.include_27, "add the order-27 pairs (heuristic)");
  scan->add_option("--exact-max-order", scan_opts.exact_max_order,
                   "largest same-order size solved exactly (default 10, at most 12)");
  scan->add_option("--jobs", scan_opts.jobs, "pairs solved concurrently")->check(CLI::PositiveNumber);
  add_solver_flags(scan, scan_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen) return cmd_gen(name, output);
    if (*val) return cmd_validate(path);
    if (*dist) return cmd_distance(src_a, src_b, dist_c);
    if (*over) return cmd_overlap(over_g, over_k, over_c);
    if (*corr) return cmd_correct(corr_g, corr_k, points, trials, corr_c);
    if (*scan) return cmd_scan(scan_opts, scan_c);
  } catch (const gd::InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const gd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
