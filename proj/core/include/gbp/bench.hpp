#pragma once

#include <optional>

#include "gbp/generate.hpp"
#include "gbp/model.hpp"
#include "gbp/scheme.hpp"

namespace gbp {

struct AlgoSpec {
  std::string algorithm;  // exact | bruteforce | balanced | firstfit | aptas
  std::string order = "decreasing";  // firstfit
  std::uint64_t seed = 0;            // firstfit random order
  Rational epsilon{3, 10};           // aptas
  Budgets budgets;                   // aptas
  int max_items = 20;                // exact
  std::string label() const;
};

struct BenchRow {
  std::string instance;
  std::string family;
  int n_items = 0;
  int n_groups = 0;
  std::string algorithm;
  int bins = 0;
  int lower_bound = 0;
  std::optional<int> exact_opt;  // filled when some exact run proved it
  std::string ratio;             // bins / max(lower bound, exact opt)
  double runtime_ms = 0;         // CSV only; the JSON report is deterministic
};

struct BenchConfig {
  std::vector<GenSpec> instances;
  std::vector<AlgoSpec> algorithms;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string to_csv() const;   // includes runtime_ms
  std::string to_json() const;  // authoritative, byte-identical across runs
};

BenchConfig bench_config_from_json(const std::string& text);

// Runs every (instance, algorithm) pair, verifies each packing (an infeasible
// solver output is a contract breach and throws), and aggregates. When
// seed_override is set it replaces every instance seed (GBP_SEED).
BenchReport run_bench(const BenchConfig& config,
                      std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace gbp
