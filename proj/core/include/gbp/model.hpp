#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbp/rational.hpp"

namespace gbp {

struct Item {
  int id = 0;
  Rational size;
  int group = 0;
};

// A GBP instance: items with exact rational sizes in [0,1], partitioned into
// groups 0..n_groups-1. Two items of one group may not share a bin.
// Immutable after construction; all operations below are pure.
struct Instance {
  std::vector<Item> items;  // after validation: items[i].id == i
  int n_groups = 0;
  std::string name;
  std::optional<unsigned long long> seed;

  int n_items() const { return static_cast<int>(items.size()); }
  const Item& item(int id) const { return items[static_cast<size_t>(id)]; }
  std::vector<std::vector<int>> groups() const;  // ids per group
};

// Assignment of item ids to bins. Bins [0, core_bins) are the "OPT region";
// bins at core_bins and beyond are marked extra (discard repacking etc.).
struct Packing {
  std::vector<std::vector<int>> bins;
  int core_bins = 0;
  std::string source;
  std::vector<int> discarded;  // ids living in extra bins

  int total_bins() const { return static_cast<int>(bins.size()); }
  void refresh_discarded();
};

enum class ViolationKind { Capacity, Conflict, Duplicate, Missing };

struct Violation {
  int bin = -1;  // -1 when not bin-specific (e.g. missing item)
  ViolationKind kind;
  std::string detail;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normalizes an instance: dense ids in input order, n_groups derived when
// unset, every group index in 0..n_groups-1 used. Throws ValidationError on
// sizes outside [0,1], group index gaps, or duplicate ids. Zero-size items
// are legal (dummy padding) but reported through `warnings` when given.
Instance validate_instance(Instance raw, std::vector<std::string>* warnings = nullptr);

Rational total_size(const Instance& inst);

int max_group_cardinality(const Instance& inst);

// max(ceil(S(I)), v_max); never exceeds OPT.
int lower_bound(const Instance& inst);

// Lists every capacity overflow, same-group conflict, duplicated or missing
// item. Never throws; unknown ids are reported as Missing with detail.
FeasibilityReport check_packing(const Instance& inst, const Packing& p);

// Extends every group to exactly m items by appending size-0 dummies with
// fresh ids. Throws ValidationError if m < v_max. OPT is unchanged.
Instance pad_dummy_items(const Instance& inst, int m);

}  // namespace gbp
