#include "gbp/exact.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "gbp/heuristics.hpp"

namespace gbp {

namespace {

struct Searcher {
  const Instance& inst;
  const SolveLimits& limits;
  std::vector<int> order;        // item ids, non-increasing size
  std::vector<int> sg_class;     // id -> dense (size,group) class, for bin dedup
  std::vector<Rational> suffix;  // total size of order[i..]
  // group bookkeeping
  std::vector<int> remaining_of_group;
  std::vector<int> bins_with_group;

  // current partial packing
  std::vector<std::vector<int>> bins;
  std::vector<Rational> load;
  std::vector<std::set<int>> groups_in;

  int best = 0;  // incumbent bin count (strict upper bound while searching)
  std::vector<std::vector<int>> best_bins;
  bool found_any = false;
  long long nodes = 0;
  bool budget_hit = false;
  int hard_cap;  // never open more than this many bins (decision variant)
  std::chrono::steady_clock::time_point deadline;

  Searcher(const Instance& i, const SolveLimits& l) : inst(i), limits(l) {
    order.resize(static_cast<size_t>(inst.n_items()));
    for (int id = 0; id < inst.n_items(); ++id) order[static_cast<size_t>(id)] = id;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (inst.item(a).size != inst.item(b).size) return inst.item(a).size > inst.item(b).size;
      return a < b;
    });
    std::map<std::pair<Rational, int>, int> dense;
    sg_class.resize(static_cast<size_t>(inst.n_items()));
    for (int id = 0; id < inst.n_items(); ++id) {
      auto key = std::make_pair(inst.item(id).size, inst.item(id).group);
      auto [it, fresh] = dense.emplace(key, static_cast<int>(dense.size()));
      sg_class[static_cast<size_t>(id)] = it->second;
    }
    suffix.assign(order.size() + 1, Rational(0));
    for (size_t i = order.size(); i-- > 0;)
      suffix[i] = suffix[i + 1] + inst.item(order[i]).size;
    remaining_of_group.assign(static_cast<size_t>(inst.n_groups), 0);
    for (const Item& it : inst.items) remaining_of_group[static_cast<size_t>(it.group)]++;
    bins_with_group.assign(static_cast<size_t>(inst.n_groups), 0);
    deadline = std::chrono::steady_clock::now() + limits.time_budget;
  }

  bool out_of_budget() {
    if (nodes >= limits.node_budget) return true;
    if ((nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) return true;
    return false;
  }

  // bins needed at least: open bins, group spans, residual size
  int node_lower_bound(size_t depth) const {
    long long lb = static_cast<long long>(bins.size());
    for (int g = 0; g < inst.n_groups; ++g)
      lb = std::max<long long>(lb, bins_with_group[static_cast<size_t>(g)] +
                                        remaining_of_group[static_cast<size_t>(g)]);
    Rational free(0);
    for (size_t b = 0; b < bins.size(); ++b) free += Rational(1) - load[b];
    if (suffix[depth] > free)
      lb = std::max<long long>(lb, static_cast<long long>(bins.size()) +
                                       ceil_to_int(suffix[depth] - free));
    return static_cast<int>(lb);
  }

  void dfs(size_t depth) {
    if (budget_hit) return;
    ++nodes;
    if (out_of_budget()) {
      budget_hit = true;
      return;
    }
    if (depth == order.size()) {
      if (static_cast<int>(bins.size()) < best || !found_any) {
        best = static_cast<int>(bins.size());
        best_bins = bins;
        found_any = true;
      }
      return;
    }
    if (node_lower_bound(depth) >= std::min(best, hard_cap + 1) && found_any) return;
    if (node_lower_bound(depth) > hard_cap) return;

    int id = order[depth];
    const Item& it = inst.item(id);

    // candidate open bins, deduplicating identical content multisets
    std::set<std::vector<int>> seen_contents;
    std::vector<size_t> candidates;
    for (size_t b = 0; b < bins.size(); ++b) {
      if (load[b] + it.size > 1 || groups_in[b].count(it.group)) continue;
      std::vector<int> key;
      key.reserve(bins[b].size());
      for (int member : bins[b]) key.push_back(sg_class[static_cast<size_t>(member)]);
      std::sort(key.begin(), key.end());
      if (seen_contents.insert(std::move(key)).second) candidates.push_back(b);
    }

    remaining_of_group[static_cast<size_t>(it.group)]--;
    for (size_t b : candidates) {
      bins[b].push_back(id);
      load[b] += it.size;
      groups_in[b].insert(it.group);
      bins_with_group[static_cast<size_t>(it.group)]++;
      dfs(depth + 1);
      bins_with_group[static_cast<size_t>(it.group)]--;
      groups_in[b].erase(it.group);
      load[b] -= it.size;
      bins[b].pop_back();
      if (budget_hit || done()) break;
    }
    if (!budget_hit && !done() && static_cast<int>(bins.size()) < std::min(best, hard_cap + 1)) {
      bins.push_back({id});
      load.push_back(it.size);
      groups_in.push_back({it.group});
      bins_with_group[static_cast<size_t>(it.group)]++;
      dfs(depth + 1);
      bins_with_group[static_cast<size_t>(it.group)]--;
      groups_in.pop_back();
      load.pop_back();
      bins.pop_back();
    }
    remaining_of_group[static_cast<size_t>(it.group)]++;
  }

  // early exit once the incumbent matches the global lower bound or the
  // decision target is met
  int global_lb = 0;
  bool decision_mode = false;
  bool done() const {
    if (!found_any) return false;
    if (decision_mode) return best <= hard_cap;
    return best <= global_lb;
  }
};

}  // namespace

ExactResult solve_exact(const Instance& inst, const SolveLimits& limits) {
  if (inst.n_items() > limits.max_items)
    throw std::invalid_argument("solve_exact: instance has " + std::to_string(inst.n_items()) +
                                " items, limit " + std::to_string(limits.max_items));
  ExactResult res;
  if (inst.items.empty()) {
    res.proven_optimal = true;
    res.packing.source = "exact";
    return res;
  }
  Searcher s(inst, limits);
  s.global_lb = lower_bound(inst);
  s.hard_cap = inst.n_items();

  Packing seed = balanced_coloring(inst);
  s.best = seed.total_bins();
  s.best_bins = seed.bins;
  s.found_any = true;
  if (s.best > s.global_lb) s.dfs(0);

  res.opt = s.best;
  res.packing.bins = s.best_bins;
  res.packing.core_bins = static_cast<int>(s.best_bins.size());
  res.packing.source = "exact";
  res.nodes_explored = s.nodes;
  res.proven_optimal = !s.budget_hit;
  return res;
}

FeasibleInResult feasible_in(const Instance& inst, int m, const SolveLimits& limits) {
  FeasibleInResult out;
  if (m < 0) {
    out.packing = std::nullopt;
    return out;
  }
  if (inst.items.empty()) {
    Packing p;
    p.source = "exact";
    out.packing = p;
    return out;
  }
  if (m == 0 || lower_bound(inst) > m) {
    out.packing = std::nullopt;
    return out;
  }
  Searcher s(inst, limits);
  s.decision_mode = true;
  s.hard_cap = m;
  s.best = m + 1;  // only accept packings into <= m bins
  s.found_any = false;
  s.dfs(0);
  if (s.found_any && s.best <= m) {
    Packing p;
    p.bins = s.best_bins;
    p.core_bins = static_cast<int>(p.bins.size());
    p.source = "exact";
    out.packing = std::move(p);
    out.proven = true;
  } else {
    out.packing = std::nullopt;
    out.proven = !s.budget_hit;
  }
  return out;
}

ExactResult solve_bruteforce(const Instance& inst) {
  if (inst.n_items() > 10)
    throw std::invalid_argument("solve_bruteforce: N > 10");
  ExactResult res;
  res.proven_optimal = true;
  res.packing.source = "bruteforce";
  if (inst.items.empty()) return res;

  int n = inst.n_items();
  std::vector<std::vector<int>> bins;
  std::vector<Rational> load;
  std::vector<std::set<int>> groups_in;
  int best = n + 1;
  std::vector<std::vector<int>> best_bins;
  long long nodes = 0;

  // canonical set-partition enumeration: item i joins an existing block or
  // opens the next one; infeasible blocks are skipped
  auto rec = [&](auto&& self, int i) -> void {
    ++nodes;
    if (i == n) {
      if (static_cast<int>(bins.size()) < best) {
        best = static_cast<int>(bins.size());
        best_bins = bins;
      }
      return;
    }
    const Item& it = inst.item(i);
    for (size_t b = 0; b < bins.size(); ++b) {
      if (load[b] + it.size > 1 || groups_in[b].count(it.group)) continue;
      bins[b].push_back(i);
      load[b] += it.size;
      groups_in[b].insert(it.group);
      self(self, i + 1);
      groups_in[b].erase(it.group);
      load[b] -= it.size;
      bins[b].pop_back();
    }
    bins.push_back({i});
    load.push_back(it.size);
    groups_in.push_back({it.group});
    self(self, i + 1);
    bins.pop_back();
    load.pop_back();
    groups_in.pop_back();
  };
  rec(rec, 0);

  res.opt = best;
  res.packing.bins = best_bins;
  res.packing.core_bins = best;
  res.nodes_explored = nodes;
  return res;
}

}  // namespace gbp
