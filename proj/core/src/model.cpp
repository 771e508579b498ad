#include "gbp/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace gbp {

std::vector<std::vector<int>> Instance::groups() const {
  std::vector<std::vector<int>> g(static_cast<size_t>(n_groups));
  for (const Item& it : items) g[static_cast<size_t>(it.group)].push_back(it.id);
  return g;
}

void Packing::refresh_discarded() {
  discarded.clear();
  for (size_t b = static_cast<size_t>(core_bins); b < bins.size(); ++b)
    for (int id : bins[b]) discarded.push_back(id);
}

Instance validate_instance(Instance raw, std::vector<std::string>* warnings) {
  std::unordered_set<long long> seen;
  int max_group = -1;
  for (const Item& it : raw.items) {
    if (it.size < 0 || it.size > 1)
      throw ValidationError("size outside [0,1]: item id " + std::to_string(it.id) +
                            " size " + format_rational(it.size));
    if (!seen.insert(it.id).second)
      throw ValidationError("duplicate id: " + std::to_string(it.id));
    if (it.group < 0) throw ValidationError("negative group index");
    max_group = std::max(max_group, it.group);
  }
  if (raw.n_groups <= 0) raw.n_groups = max_group + 1;
  if (max_group >= raw.n_groups)
    throw ValidationError("group index " + std::to_string(max_group) +
                          " out of range [0," + std::to_string(raw.n_groups) + ")");
  std::vector<int> count(static_cast<size_t>(raw.n_groups), 0);
  for (const Item& it : raw.items) count[static_cast<size_t>(it.group)]++;
  for (int g = 0; g < raw.n_groups; ++g)
    if (count[static_cast<size_t>(g)] == 0)
      throw ValidationError("group index gap: group " + std::to_string(g) + " is empty");
  // densify ids in input order
  for (size_t i = 0; i < raw.items.size(); ++i) raw.items[i].id = static_cast<int>(i);
  if (warnings) {
    for (const Item& it : raw.items)
      if (it.size == 0)
        warnings->push_back("zero-size item " + std::to_string(it.id) +
                            " (dummy padding?)");
  }
  return raw;
}

Rational total_size(const Instance& inst) {
  Rational s(0);
  for (const Item& it : inst.items) s += it.size;
  return s;
}

int max_group_cardinality(const Instance& inst) {
  std::vector<int> count(static_cast<size_t>(inst.n_groups), 0);
  int best = 0;
  for (const Item& it : inst.items)
    best = std::max(best, ++count[static_cast<size_t>(it.group)]);
  return best;
}

int lower_bound(const Instance& inst) {
  long long size_lb = ceil_to_int(total_size(inst));
  return static_cast<int>(std::max<long long>(size_lb, max_group_cardinality(inst)));
}

FeasibilityReport check_packing(const Instance& inst, const Packing& p) {
  FeasibilityReport rep;
  std::vector<int> times_packed(static_cast<size_t>(inst.n_items()), 0);
  for (size_t b = 0; b < p.bins.size(); ++b) {
    Rational load(0);
    std::unordered_map<int, int> group_count;
    for (int id : p.bins[b]) {
      if (id < 0 || id >= inst.n_items()) {
        rep.violations.push_back({static_cast<int>(b), ViolationKind::Missing,
                                  "unknown item id " + std::to_string(id)});
        continue;
      }
      if (++times_packed[static_cast<size_t>(id)] > 1)
        rep.violations.push_back({static_cast<int>(b), ViolationKind::Duplicate,
                                  "item " + std::to_string(id) + " packed more than once"});
      load += inst.item(id).size;
      group_count[inst.item(id).group]++;
    }
    if (load > 1)
      rep.violations.push_back({static_cast<int>(b), ViolationKind::Capacity,
                                "load " + format_rational(load) + " exceeds 1"});
    for (const auto& [g, c] : group_count)
      if (c > 1)
        rep.violations.push_back({static_cast<int>(b), ViolationKind::Conflict,
                                  std::to_string(c) + " items of group " + std::to_string(g)});
  }
  for (int id = 0; id < inst.n_items(); ++id)
    if (times_packed[static_cast<size_t>(id)] == 0)
      rep.violations.push_back({-1, ViolationKind::Missing,
                                "item " + std::to_string(id) + " not packed"});
  rep.feasible = rep.violations.empty();
  return rep;
}

Instance pad_dummy_items(const Instance& inst, int m) {
  int vmax = max_group_cardinality(inst);
  if (m < vmax)
    throw ValidationError("pad target " + std::to_string(m) + " below v_max " +
                          std::to_string(vmax));
  Instance out = inst;
  std::vector<int> count(static_cast<size_t>(inst.n_groups), 0);
  for (const Item& it : inst.items) count[static_cast<size_t>(it.group)]++;
  int next_id = inst.n_items();
  for (int g = 0; g < inst.n_groups; ++g)
    for (int c = count[static_cast<size_t>(g)]; c < m; ++c)
      out.items.push_back({next_id++, Rational(0), g});
  out.name = inst.name.empty() ? ("padded_m" + std::to_string(m))
                               : (inst.name + "+pad" + std::to_string(m));
  return out;
}

}  // namespace gbp
