#pragma once

#include <optional>

#include "gbp/classify.hpp"
#include "gbp/model.hpp"

namespace gbp {

struct Budgets {
  long long pattern_budget = 5000;
  long long assignment_budget = 50000;
  long long enum_budget = 8;
  // testing aids
  bool force_pipeline = false;  // ignore the applicability threshold
  std::optional<int> alpha_override;
};

struct DiscardCounters {
  int shifting = 0;            // linear shifting + shift&swap class discards
  int medium_small_group = 0;  // mediums of small groups, routed straight out
  int representative = 0;      // optimal-phase shifting discards
  int eviction = 0;
  int fractional = 0;
  int greedy_conflict = 0;
  int total() const {
    return shifting + medium_small_group + representative + eviction + fractional +
           greedy_conflict;
  }
};

struct ExtraBinCounters {
  int padding = 0;
  int t_prime = 0;
  int greedy_extra = 0;
  int discard_pool = 0;
  int fallback = 0;
  int total() const { return padding + t_prime + greedy_extra + discard_pool + fallback; }
};

struct SchemeReport {
  Rational epsilon;
  int opt_guess_used = 0;
  int k = 0;
  int lower_bound = 0;
  int core_bins = 0;
  int total_bins = 0;
  ExtraBinCounters extra_bins;
  DiscardCounters discarded_items;
  bool pipeline_used = false;
  bool fallback_used = false;       // output is the BalancedColoring packing
  bool small_fallback_used = false;  // small items went through the fallback
  bool patterns_exhaustive = true;
  bool assignments_exhaustive = true;
  bool enum_exhaustive = true;
  int distinct_rounded_sizes = 0;
  std::vector<std::string> guess_log;
  // wall times, milliseconds; excluded from the canonical JSON so identical
  // runs serialize identically
  double ms_classify = 0, ms_patterns = 0, ms_small = 0, ms_total = 0;

  std::string ratio_vs_lower_bound() const;  // exact "p/q"
};

// Canonical JSON; deterministic for identical inputs. Timings included only
// when with_timings is set.
std::string scheme_report_to_json(const SchemeReport& rep, bool with_timings = false);

// The full scheme: guess OPT ascending; per guess find k, classify, shift
// large groups, Shift&Swap the small-group large items, enumerate pattern
// assignments, resolve conflicts by Swapping, pack small items, repack all
// discards with BalancedColoring into extra bins. Falls back to plain
// BalancedColoring when the applicability threshold fails or every guess is
// rejected, and always returns the better of pipeline and fallback.
std::pair<Packing, SchemeReport> run_aptas(const Instance& inst, const Rational& epsilon,
                                           const Budgets& budgets = {});

// BalancedColoring over the pool items (original sizes and groups); the
// returned bins are appended beyond the core boundary by the caller.
std::vector<std::vector<int>> pack_discards(const Instance& inst,
                                            const std::vector<int>& pool);

// Exposed for tests: run the guess loop and report every rejection.
std::pair<Packing, SchemeReport> opt_guess_loop(const Instance& inst, const Rational& epsilon,
                                                const Budgets& budgets);

}  // namespace gbp
