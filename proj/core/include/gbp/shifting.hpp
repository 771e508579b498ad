#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "gbp/classify.hpp"
#include "gbp/model.hpp"

namespace gbp {

struct ShiftClass {
  std::vector<int> members;  // non-increasing by size, ties by id
  Rational rounded;          // max size in the class
  bool discarded = false;
};

// Linear shifting table over one scope of items: sorted non-increasing,
// chopped into classes of max{Q,1} members (last may be shorter), each class
// rounded up to its max, class 1 discarded. Shift&Swap tables additionally
// discard the last class; their surviving classes all have exactly Q members.
struct ShiftTable {
  std::vector<int> scope;  // sorted order used for chopping
  long long q = 1;
  std::vector<ShiftClass> classes;
  std::vector<int> discarded;
  bool merged_small_groups = false;  // Shift&Swap table (group-oblivious)
};

// Instance with effective sizes: rounded where a table covers the item,
// original elsewhere. Discarded ids are routed to the scheme's discard pool
// and are absent from any downstream packing.
struct RoundedInstance {
  Instance base;
  std::vector<ShiftTable> tables;
  std::unordered_map<int, Rational> rounded;  // surviving covered ids only
  std::vector<int> discards;

  Rational effective_size(int id) const {
    auto it = rounded.find(id);
    return it == rounded.end() ? base.item(id).size : it->second;
  }
  bool covers(int id) const { return rounded.count(id) > 0; }
  bool is_discarded(int id) const {
    return std::find(discards.begin(), discards.end(), id) != discards.end();
  }
  std::vector<int> survivors() const;  // covered, non-discarded ids
};

ShiftTable linear_shift(const std::vector<int>& ids, const Instance& inst, long long Q);

// One table per large group over its large and medium items, with
// Q = floor(eps^{2k+4} * opt_guess).
RoundedInstance shift_large_groups(const Instance& inst, const Classification& cls,
                                   const ClassParams& params);

// Merges all large items of small groups into one scope and shifts with
// Q = floor(2 eps * opt_guess); discards the last size class too. Throws
// GuessRejected when the scope is nonempty and Q = 0.
void shift_swap_small_groups(RoundedInstance& rinst, const Classification& cls,
                             const ClassParams& params);

// Count of distinct effective sizes among surviving covered items.
int distinct_rounded_sizes(const RoundedInstance& rinst);

// Maps a feasible packing of the rounded survivors back to original sizes.
// Item ids are unchanged (class-r originals sit where class-r rounded items
// sat), so loads only shrink and no conflict can appear. Throws on a
// slot/member count mismatch with the tables.
Packing unround(const Packing& rounded_packing, const RoundedInstance& rinst);

}  // namespace gbp
