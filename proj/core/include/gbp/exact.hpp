#pragma once

#include <chrono>
#include <optional>

#include "gbp/model.hpp"

namespace gbp {

struct SolveLimits {
  int max_items = 20;
  long long node_budget = 50'000'000;
  std::chrono::milliseconds time_budget{60'000};
  std::optional<int> target_bins;  // decision variant: stop at <= target
};

struct ExactResult {
  int opt = 0;
  Packing packing;
  bool proven_optimal = false;
  long long nodes_explored = 0;
};

// Branch and bound; items in non-increasing size order, children place the
// item in each open bin lacking its group (bins with identical content
// multisets deduplicated) plus one new bin. Incumbent seeded from
// balanced_coloring. When a budget runs out the best incumbent is returned
// with proven_optimal = false.
ExactResult solve_exact(const Instance& inst, const SolveLimits& limits = {});

struct FeasibleInResult {
  std::optional<Packing> packing;  // a feasible packing into <= m bins
  bool proven = true;              // false when a budget cut the search
};

// Monotone in m: a witness for m is a witness for m+1.
FeasibleInResult feasible_in(const Instance& inst, int m, const SolveLimits& limits = {});

// Exhaustive enumeration of set partitions filtered by feasibility.
// Ground truth for solve_exact; requires N <= 10.
ExactResult solve_bruteforce(const Instance& inst);

}  // namespace gbp
