#pragma once

#include <optional>
#include <set>

#include "gbp/classify.hpp"
#include "gbp/lp.hpp"
#include "gbp/model.hpp"

namespace gbp {

// Working state of one bin between the pattern phase and the final packing.
struct BinState {
  enum class Origin { Core, Padding, TPrime, GreedyExtra, Fallback };
  Rational free;               // current free capacity (against assumed_cap)
  Rational assumed_cap;        // f(t) for padding/extra bins, 1 for core/t'
  std::set<int> blocked_groups;  // pattern labels + committed small groups
  std::set<int> il_groups;       // small groups holding a large 'u' item here
  // small ids placed by the optimal phase, with the accounted (class-rounded)
  // size that was charged against `free`
  std::vector<std::pair<int, Rational>> committed;
  std::vector<int> final_items;  // small ids placed by the greedy phase
  int pattern_id = -1;
  Origin origin = Origin::Core;
};

// Bins sharing (pattern, committed content, free capacity); all members have
// identical free capacity and identical per-group non-'u' content.
struct BinTypeView {
  std::vector<int> bins;  // indices into the bin array
  Rational free;
  std::map<int, int> content_per_bin;  // group -> items per member bin (0/1)
  int pattern_id = -1;
};

std::vector<BinTypeView> compute_bin_types(const std::vector<BinState>& bins);

struct SmallItemParams {
  ClassParams cls;
  int alpha;  // iterations of the optimal phase, floor(1/eps)+5 by default
};

int default_alpha(const Rational& eps);

struct SmallBudgets {
  long long enum_budget = 8;  // max optimal-phase outcomes explored
};

// Trace of one optimal-phase guess, for reports and oracle tests.
struct GuessTrace {
  int iteration = 0;
  int type_first_bin = -1;
  std::vector<int> significant_groups;
  std::map<int, int> items_per_group;
  std::vector<Rational> class_boundaries;  // representative sizes
};

struct EnumOutcome {
  std::vector<BinState> bins;
  std::vector<char> in_e_alpha;  // per bin: 0 < f^a < eps f^{a-1} all the way down
  std::vector<int> rep_discards;
  std::map<int, int> rep_discards_per_group;
  int padding_bins_added = 0;
  std::vector<GuessTrace> trace;
};

// Iterative guessing over types with tight free capacity: per iteration and
// type, choose significant groups and item counts, shift the chosen items by
// representatives (largest class discarded), and commit the survivors into
// the type's bins. The all-skip guess comes first and is always present.
std::vector<EnumOutcome> recursive_enum(const std::vector<int>& small_ids,
                                        const std::vector<BinState>& bins,
                                        const Instance& inst, const SmallItemParams& params,
                                        const SmallBudgets& budgets);

struct EvictResult {
  bool ok = true;
  std::vector<int> evicted;
};

// From every bin still tight after the optimal phase, evict the largest
// committed small item of size >= f^alpha_b / eps whose group has had fewer
// than eps*OPT evictions. Failure signals guess rejection.
EvictResult evict_phase(EnumOutcome& outcome, const Instance& inst,
                        const SmallItemParams& params);

// Polytope over the remaining small items and the final types (append a
// t'-type of ceil(eps*opt) empty unit bins before calling).
PartitionPolytope build_partition_polytope(const std::vector<int>& item_ids,
                                           const std::vector<BinTypeView>& types,
                                           const Instance& inst, const Rational& eps);

struct TypePartition {
  std::vector<std::vector<int>> items_per_type;
  std::vector<int> fractional_discards;
};

// Integral coordinates define the per-type item sets; items with any
// fractional coordinate are discarded (at most 2|T|^2 of them).
TypePartition partition_items(const VertexSolution& v, const PartitionPolytope& P);

// Per-type item state for the greedy phase, detached from BinState so the
// packing guarantee can be exercised standalone.
struct GreedyBin {
  Rational cap;             // f(t)
  std::set<int> il_groups;  // conflicting small item gets discarded
};

struct GreedyPacked {
  std::vector<std::vector<int>> per_bin;  // parallel to input bins
  std::vector<int> conflict_discards;
};

// GreedyPack: per bin take the largest remaining item of every group; on
// overflow advance the group with the largest drop to its next item (ties by
// group id). Groups are padded with virtual zero-size items so each bin gets
// one entry per group. Returns nullopt on failure (overflow with every group
// at its last item).
std::optional<GreedyPacked> greedy_pack(const std::vector<GreedyBin>& bins,
                                        const std::vector<int>& items, const Instance& inst);

struct SmallItemsResult {
  std::vector<BinState> bins;  // includes padding / t' / greedy extra bins
  std::vector<int> evicted, fractional_discards, greedy_discards, rep_discards;
  int padding_bins = 0;
  bool fallback_used = false;
  bool enum_exhausted = true;
  int guesses_tried = 0;
};

// Algorithm pipeline: optimal phase guesses -> eviction -> partition polytope
// vertex -> per-type GreedyPack. Any rejection advances to the next guess;
// when budgets run out the remaining small items go through balanced_coloring
// into extra bins (flagged).
SmallItemsResult pack_small_items(const std::vector<int>& small_ids,
                                  std::vector<BinState> bins, const Instance& inst,
                                  const SmallItemParams& params, const SmallBudgets& budgets);

}  // namespace gbp
