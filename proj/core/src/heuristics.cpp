#include "gbp/heuristics.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace gbp {

namespace {

// First-Fit over a conflict-free item list (at most one item per group).
void first_fit_append(const Instance& inst, const std::vector<int>& ids,
                      std::vector<std::vector<int>>& bins) {
  std::vector<Rational> load;
  std::vector<std::vector<int>> local;
  for (int id : ids) {
    const Rational& s = inst.item(id).size;
    bool placed = false;
    for (size_t b = 0; b < local.size(); ++b) {
      if (load[b] + s <= 1) {
        local[b].push_back(id);
        load[b] += s;
        placed = true;
        break;
      }
    }
    if (!placed) {
      local.push_back({id});
      load.push_back(s);
    }
  }
  for (auto& b : local) bins.push_back(std::move(b));
}

}  // namespace

Packing balanced_coloring(const Instance& inst) {
  Packing p;
  p.source = "balanced_coloring";
  if (inst.items.empty()) return p;

  auto groups = inst.groups();
  int vmax = max_group_cardinality(inst);

  struct Color {
    Rational total;
    std::set<int> groups;
    std::vector<int> items;
  };
  std::vector<Color> colors(static_cast<size_t>(vmax));

  for (size_t c = 0; c < groups[0].size(); ++c) {
    int id = groups[0][c];
    colors[c].items.push_back(id);
    colors[c].total += inst.item(id).size;
    colors[c].groups.insert(0);
  }
  for (int g = 1; g < inst.n_groups; ++g) {
    std::vector<int> ids = groups[static_cast<size_t>(g)];
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (inst.item(a).size != inst.item(b).size) return inst.item(a).size > inst.item(b).size;
      return a < b;
    });
    for (int id : ids) {
      int best = -1;
      for (size_t c = 0; c < colors.size(); ++c) {
        if (colors[c].groups.count(g)) continue;
        if (best < 0 || colors[c].total < colors[static_cast<size_t>(best)].total) best = static_cast<int>(c);
      }
      colors[static_cast<size_t>(best)].items.push_back(id);
      colors[static_cast<size_t>(best)].total += inst.item(id).size;
      colors[static_cast<size_t>(best)].groups.insert(g);
    }
  }
  // Each color has at most one item per group, so it packs as plain BP.
  for (const Color& c : colors) first_fit_append(inst, c.items, p.bins);
  p.core_bins = p.total_bins();
  return p;
}

Packing first_fit_conflicts(const Instance& inst, ItemOrder order, std::uint64_t seed) {
  std::vector<int> ids(static_cast<size_t>(inst.n_items()));
  for (int i = 0; i < inst.n_items(); ++i) ids[static_cast<size_t>(i)] = i;
  switch (order) {
    case ItemOrder::Input:
      break;
    case ItemOrder::Decreasing:
      std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return inst.item(a).size > inst.item(b).size;
      });
      break;
    case ItemOrder::Random: {
      std::mt19937_64 rng(seed);
      std::shuffle(ids.begin(), ids.end(), rng);
      break;
    }
  }

  Packing p;
  p.source = "first_fit";
  std::vector<Rational> load;
  std::vector<std::set<int>> groups_in;
  for (int id : ids) {
    const Item& it = inst.item(id);
    bool placed = false;
    for (size_t b = 0; b < p.bins.size(); ++b) {
      if (load[b] + it.size <= 1 && !groups_in[b].count(it.group)) {
        p.bins[b].push_back(id);
        load[b] += it.size;
        groups_in[b].insert(it.group);
        placed = true;
        break;
      }
    }
    if (!placed) {
      p.bins.push_back({id});
      load.push_back(it.size);
      groups_in.push_back({it.group});
    }
  }
  p.core_bins = p.total_bins();
  return p;
}

}  // namespace gbp
