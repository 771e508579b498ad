#include "gbp/shifting.hpp"

#include <algorithm>
#include <set>

namespace gbp {

std::vector<int> RoundedInstance::survivors() const {
  std::vector<int> out;
  out.reserve(rounded.size());
  for (const auto& [id, sz] : rounded) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

ShiftTable linear_shift(const std::vector<int>& ids, const Instance& inst, long long Q) {
  ShiftTable t;
  t.q = std::max<long long>(Q, 1);
  if (ids.empty()) return t;
  t.scope = ids;
  std::sort(t.scope.begin(), t.scope.end(), [&](int a, int b) {
    if (inst.item(a).size != inst.item(b).size) return inst.item(a).size > inst.item(b).size;
    return a < b;
  });
  for (size_t pos = 0; pos < t.scope.size(); pos += static_cast<size_t>(t.q)) {
    ShiftClass c;
    size_t end = std::min(t.scope.size(), pos + static_cast<size_t>(t.q));
    c.members.assign(t.scope.begin() + static_cast<long>(pos),
                     t.scope.begin() + static_cast<long>(end));
    c.rounded = inst.item(c.members.front()).size;
    c.discarded = (pos == 0);
    t.classes.push_back(std::move(c));
  }
  t.discarded = t.classes.front().members;
  return t;
}

namespace {

void absorb(RoundedInstance& rinst, ShiftTable table) {
  for (const ShiftClass& c : table.classes) {
    if (c.discarded) continue;
    for (int id : c.members) rinst.rounded.emplace(id, c.rounded);
  }
  for (int id : table.discarded) rinst.discards.push_back(id);
  rinst.tables.push_back(std::move(table));
}

}  // namespace

RoundedInstance shift_large_groups(const Instance& inst, const Classification& cls,
                                   const ClassParams& params) {
  RoundedInstance rinst;
  rinst.base = inst;
  long long Q = floor_to_int(rational_pow(params.epsilon, static_cast<unsigned>(2 * params.k + 4)) *
                             params.opt_guess);
  auto groups = inst.groups();
  for (int g : cls.groups.large_groups) {
    std::vector<int> scope;
    for (int id : groups[static_cast<size_t>(g)])
      if (cls.items.by_id[static_cast<size_t>(id)] != SizeClass::Small) scope.push_back(id);
    if (scope.empty()) continue;
    absorb(rinst, linear_shift(scope, inst, Q));
  }
  return rinst;
}

void shift_swap_small_groups(RoundedInstance& rinst, const Classification& cls,
                             const ClassParams& params) {
  std::vector<int> scope;
  for (int id : cls.items.large)
    if (!cls.groups.is_large[static_cast<size_t>(rinst.base.item(id).group)])
      scope.push_back(id);
  if (scope.empty()) {
    ShiftTable t;
    t.merged_small_groups = true;
    rinst.tables.push_back(std::move(t));
    return;
  }
  long long Q = floor_to_int(2 * params.epsilon * params.opt_guess);
  if (Q < 1)
    throw GuessRejected("shift&swap: floor(2 eps * opt) = 0 with nonempty scope");
  ShiftTable t = linear_shift(scope, rinst.base, Q);
  t.merged_small_groups = true;
  if (!t.classes.back().discarded) {
    t.classes.back().discarded = true;
    for (int id : t.classes.back().members) t.discarded.push_back(id);
  }
  absorb(rinst, std::move(t));
}

int distinct_rounded_sizes(const RoundedInstance& rinst) {
  std::set<Rational> sizes;
  for (const auto& [id, sz] : rinst.rounded) sizes.insert(sz);
  return static_cast<int>(sizes.size());
}

Packing unround(const Packing& rounded_packing, const RoundedInstance& rinst) {
  std::unordered_map<int, int> occurrences;
  for (const auto& bin : rounded_packing.bins)
    for (int id : bin) occurrences[id]++;
  for (const ShiftTable& t : rinst.tables) {
    for (const ShiftClass& c : t.classes) {
      for (int id : c.members) {
        int want = c.discarded ? 0 : 1;
        auto it = occurrences.find(id);
        int got = it == occurrences.end() ? 0 : it->second;
        if (got != want)
          throw std::runtime_error("unround: item " + std::to_string(id) + " packed " +
                                   std::to_string(got) + " times, expected " +
                                   std::to_string(want));
      }
    }
  }
  Packing out = rounded_packing;
  out.source = rounded_packing.source.empty() ? "unround" : rounded_packing.source;
  return out;
}

}  // namespace gbp
