#pragma once

#include <optional>
#include <vector>

#include "gbp/shifting.hpp"

namespace gbp {

// Slot label: a large-group id, or kSmallGroupLabel ('u') standing for all
// small groups at once.
constexpr int kSmallGroupLabel = -1;

struct Slot {
  Rational size;  // rounded size, > 0
  int label = kSmallGroupLabel;
};

// Slot alphabet in canonical order (size descending, large-group labels
// ascending, 'u' last) with the surviving-item supply per slot.
struct SlotAlphabet {
  std::vector<Slot> slots;
  std::vector<long long> supply;
  int index_of(const Rational& size, int label) const;
};

// A capacity-respecting multiset of slots describing one bin's large/medium
// content. Patterns with two slots of one large-group label are pruned (they
// could never be filled without a conflict). Index 0 is the empty pattern.
struct Pattern {
  std::vector<std::pair<int, int>> slots;  // (alphabet index, multiplicity)
  Rational load;
  int n_slots = 0;
};

struct PatternList {
  std::vector<Pattern> patterns;
  bool truncated = false;  // pattern budget tripped
};

struct PatternAssignment {
  std::vector<long long> count;  // bins per pattern; sums to opt_guess
};

SlotAlphabet build_slot_alphabet(const RoundedInstance& rinst, const Classification& cls);

// All multisets of slots with at most `cap` members and total rounded size
// <= 1, deduplicated canonically; stops at `budget` patterns.
PatternList enumerate_patterns(const SlotAlphabet& alphabet, int cap, long long budget);

// Yields every assignment of bin counts to patterns whose slot supply matches
// the rounded item supply exactly, in deterministic order (counts descending
// per pattern index). Bounded by a search-step budget.
class AssignmentEnumerator {
 public:
  AssignmentEnumerator(const PatternList& patterns, const SlotAlphabet& alphabet,
                       int opt_guess, long long budget);
  std::optional<PatternAssignment> next();
  bool exhausted() const { return exhausted_; }  // false iff budget tripped
  long long steps() const { return steps_; }

 private:
  bool feasible_suffix(size_t from) const;
  const PatternList& patterns_;
  const SlotAlphabet& alphabet_;
  int opt_guess_;
  long long budget_;
  long long steps_ = 0;
  bool exhausted_ = false;
  bool done_ = false;
  struct Frame {
    size_t pattern;
    long long count;
  };
  std::vector<Frame> stack_;
  std::vector<long long> remaining_supply_;
  long long bins_used_ = 0;
  std::vector<std::vector<long long>> max_mult_suffix_;  // [pattern][slot]
};

struct PlacedPacking {
  Packing packing;
  std::vector<int> bin_pattern;  // pattern index per bin
};

// Expands an assignment into opt_guess bins and fills slots with survivor
// items: large-group slots by (group,size) match, 'u' slots by size in id
// order. Conflicts among small groups are permitted at this stage.
PlacedPacking place_by_patterns(const PatternAssignment& assignment,
                                const PatternList& patterns, const SlotAlphabet& alphabet,
                                const RoundedInstance& rinst, const Classification& cls);

struct SwapResult {
  Packing packing;
  bool resolved = false;   // false: some conflict had no good swap (reject guess)
  long long swap_searches = 0;
};

// Algorithm: while some bin holds two items of one (small) group, exchange
// one of them with an equal-rounded-size small-group item from another bin
// such that no new conflict appears. Per-bin rounded-size multisets are
// preserved exactly. Deterministic scan: lowest bin, lowest item id, lowest
// id partner.
SwapResult swapping(const PlacedPacking& tentative, const RoundedInstance& rinst,
                    const Classification& cls);

}  // namespace gbp
