#pragma once

// Verification sweeps (criterion vs oracle over a family's parameter space) and
// the sparse-form search. Instances are evaluated in parallel and emitted in
// canonical order, so output does not depend on the thread count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scrpp/families.hpp"
#include "scrpp/report.hpp"

namespace scrpp {

enum class OutputFormat { jsonl, csv };

struct SweepConfig {
  std::vector<std::string> families;
  std::vector<std::uint64_t> q_list;
  bool exhaustive = false;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  int delta_rand = 0;
  std::string output;
  OutputFormat format = OutputFormat::jsonl;
  unsigned threads = 0;  // 0: hardware concurrency
  /// thm3.2 has no finite space; it always draws this many random instances.
  std::uint64_t random_instances = 500;
  int max_irreducible_degree = 4;
  int max_linear_power = 5;

  /// Throws std::invalid_argument on an invalid combination.
  void validate() const;
};

struct SweepResult {
  std::vector<FamilySummary> summaries;
  std::vector<std::string> findings;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Families whose disagreements are known inconsistencies of the printed statements.
bool is_whitelisted(const std::string& family);

/// Field for a prime power q with the default moduli.
FieldSpec default_spec(std::uint64_t q);

unsigned resolve_threads(unsigned requested);

std::vector<PermReport> evaluate(const FamilyContext& ctx, const std::string& family,
                                 const std::vector<ParamMap>& instances, unsigned threads);

/// The instances a sweep visits for one family at one field (exhaustive space or a seeded sample).
std::vector<ParamMap> sweep_instances(const FamilyContext& ctx, const std::string& family, const SweepConfig& cfg);

/// Runs the sweep; `sink` receives every report in canonical order.
SweepResult run_sweep(const SweepConfig& cfg, const std::function<void(const PermReport&)>& sink);

/// Plain-text summary: per-family counts, findings, warnings, failures.
std::string format_summary(const SweepResult& result);

struct SearchHit {
  PermReport report;
  /// Other instances (family and parameters) that induce the same function.
  std::vector<std::string> same_function_as;
};

/// Predicted-and-verified PPs with exactly `terms` terms, one per distinct function.
std::vector<SearchHit> search(const FamilyContext& ctx, std::size_t terms, unsigned threads);

std::string to_json_line(const SearchHit& hit);

}  // namespace scrpp
