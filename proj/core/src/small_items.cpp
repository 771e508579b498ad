#include "gbp/small_items.hpp"

#include <algorithm>

#include "gbp/heuristics.hpp"
#include "gbp/shifting.hpp"

namespace gbp {

namespace {

constexpr int kMaxSignificantGroups = 2;  // guessed subset size cap per type
constexpr int kMaxCountChoices = 4;       // count ladder per guessed group

struct TypeKey {
  int pattern_id;
  Rational assumed;
  Rational free;
  std::vector<int> blocked;
  bool operator<(const TypeKey& o) const {
    if (pattern_id != o.pattern_id) return pattern_id < o.pattern_id;
    if (assumed != o.assumed) return assumed < o.assumed;
    if (free != o.free) return free < o.free;
    return blocked < o.blocked;
  }
};

TypeKey key_of(const BinState& b) {
  return {b.pattern_id, b.assumed_cap, b.free,
          std::vector<int>(b.blocked_groups.begin(), b.blocked_groups.end())};
}

}  // namespace

std::vector<BinTypeView> compute_bin_types(const std::vector<BinState>& bins) {
  std::map<TypeKey, std::vector<int>> grouped;
  for (size_t b = 0; b < bins.size(); ++b) grouped[key_of(bins[b])].push_back(static_cast<int>(b));
  std::vector<BinTypeView> out;
  for (auto& [key, members] : grouped) {
    BinTypeView t;
    t.bins = members;
    t.free = key.free;
    t.pattern_id = key.pattern_id;
    for (int g : key.blocked) t.content_per_bin[g] = 1;
    out.push_back(std::move(t));
  }
  return out;
}

int default_alpha(const Rational& eps) {
  return static_cast<int>(floor_to_int(Rational(1) / eps)) + 5;
}

namespace {

struct EnumContext {
  const Instance& inst;
  const SmallItemParams& params;
  const SmallBudgets& budgets;
  Rational eps2, eps3, eps4;
  long long pad_target = 0;  // ceil(1/eps^4)
  int per_bin_cap = 0;       // floor(1/eps^2) items added per bin per level
  std::vector<EnumOutcome>* outcomes = nullptr;
  long long nodes = 0;
  long long node_cap = 0;

  bool budget_hit() const {
    return static_cast<long long>(outcomes->size()) >= budgets.enum_budget ||
           nodes > node_cap;
  }
};

struct EnumState {
  std::vector<BinState> bins;
  std::vector<char> in_e;       // current E_h membership
  std::vector<Rational> f_prev;  // f^h at the start of the level
  std::vector<int> remaining;    // uncommitted small ids, ascending
  std::vector<int> rep_discards;
  std::map<int, int> rep_discards_per_group;
  int padding_added = 0;
  std::vector<GuessTrace> trace;
};

struct TypeGuess {
  std::vector<int> groups;          // significant groups, ascending
  std::vector<long long> counts;    // parallel to groups
};

// Apply one nonempty guess to type `t` at level h. Returns false when the
// survivors cannot be placed (option infeasible).
bool apply_guess(EnumContext& ctx, EnumState& st, const BinTypeView& t, int h,
                 const TypeGuess& guess) {
  std::vector<int> members = t.bins;
  long long target = std::max<long long>(static_cast<long long>(members.size()), ctx.pad_target);
  while (static_cast<long long>(members.size()) < target) {
    BinState pad;
    pad.origin = BinState::Origin::Padding;
    pad.pattern_id = t.pattern_id;
    pad.assumed_cap = t.free;
    pad.free = t.free;
    members.push_back(static_cast<int>(st.bins.size()));
    st.bins.push_back(pad);
    st.in_e.push_back(1);
    st.f_prev.push_back(t.free);
    st.padding_added++;
  }
  long long tsize = static_cast<long long>(members.size());

  GuessTrace tr;
  tr.iteration = h;
  tr.type_first_bin = members.front();
  tr.significant_groups = guess.groups;

  std::vector<int> added_per_bin(st.bins.size(), 0);
  for (size_t gi = 0; gi < guess.groups.size(); ++gi) {
    int g = guess.groups[gi];
    long long n_g = guess.counts[gi];
    tr.items_per_group[g] = static_cast<int>(n_g);

    std::vector<int> chosen;
    for (int id : st.remaining) {
      const Item& it = ctx.inst.item(id);
      if (it.group != g) continue;
      if (it.size <= ctx.eps2 * t.free) continue;  // t-negligible
      chosen.push_back(id);
    }
    std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
      if (ctx.inst.item(a).size != ctx.inst.item(b).size)
        return ctx.inst.item(a).size > ctx.inst.item(b).size;
      return a < b;
    });
    if (static_cast<long long>(chosen.size()) > n_g) chosen.resize(static_cast<size_t>(n_g));

    long long q_rep = std::max<long long>(1, floor_to_int(ctx.eps3 * tsize));
    // linear shifting by representatives; the largest class is discarded
    std::vector<std::pair<int, Rational>> survivors;  // (id, rounded size)
    for (size_t pos = 0; pos < chosen.size(); pos += static_cast<size_t>(q_rep)) {
      size_t end = std::min(chosen.size(), pos + static_cast<size_t>(q_rep));
      Rational rounded = ctx.inst.item(chosen[pos]).size;
      tr.class_boundaries.push_back(rounded);
      if (pos == 0) {
        for (size_t i = pos; i < end; ++i) {
          st.rep_discards.push_back(chosen[i]);
          st.rep_discards_per_group[g]++;
        }
      } else {
        for (size_t i = pos; i < end; ++i) survivors.push_back({chosen[i], rounded});
      }
    }
    // commit survivors into the type's bins, largest first, fullest-fit
    // spread; bins holding a same-group large item are off limits (the
    // greedy phase resolves such meetings by discarding, the optimal phase
    // must not create them)
    for (const auto& [id, rounded] : survivors) {
      int best = -1;
      for (int b : members) {
        const BinState& bin = st.bins[static_cast<size_t>(b)];
        if (bin.blocked_groups.count(g) || bin.il_groups.count(g)) continue;
        if (added_per_bin[static_cast<size_t>(b)] >= ctx.per_bin_cap) continue;
        if (bin.free < rounded) continue;
        if (best < 0 || bin.free > st.bins[static_cast<size_t>(best)].free) best = b;
      }
      if (best < 0) return false;
      BinState& bin = st.bins[static_cast<size_t>(best)];
      bin.committed.push_back({id, rounded});
      bin.blocked_groups.insert(g);
      bin.free -= rounded;
      added_per_bin[static_cast<size_t>(best)]++;
    }
    // remove committed and discarded ids from the remaining pool
    std::set<int> gone;
    for (int id : chosen) gone.insert(id);
    std::erase_if(st.remaining, [&](int id) { return gone.count(id) > 0; });
  }
  st.trace.push_back(std::move(tr));
  return true;
}

// Deterministic guess options for one type: the skip option first, then
// subsets of candidate groups by increasing size, counts descending.
std::vector<TypeGuess> guess_options(const EnumContext& ctx, const EnumState& st,
                                     const BinTypeView& t) {
  std::vector<TypeGuess> options;
  options.push_back({});  // skip

  long long tsize = std::max<long long>(static_cast<long long>(t.bins.size()), ctx.pad_target);
  Rational sig_threshold = ctx.eps4 * tsize;
  std::map<int, long long> cand;  // group -> non-negligible remaining count
  for (int id : st.remaining) {
    const Item& it = ctx.inst.item(id);
    if (it.size <= ctx.eps2 * t.free) continue;
    cand[it.group]++;
  }
  std::vector<std::pair<int, long long>> sig;
  for (const auto& [g, c] : cand)
    if (Rational(c) >= sig_threshold) sig.push_back({g, c});
  if (sig.empty()) return options;

  long long sig_min = std::max<long long>(1, ceil_to_int(sig_threshold));
  auto count_ladder = [&](long long cnt) {
    std::vector<long long> ladder;
    long long hi = std::min<long long>(cnt, tsize);
    for (long long n = hi; n >= sig_min && static_cast<int>(ladder.size()) < kMaxCountChoices;
         --n)
      ladder.push_back(n);
    return ladder;
  };

  int max_subset = std::min<int>(kMaxSignificantGroups, static_cast<int>(sig.size()));
  for (int size = 1; size <= max_subset; ++size) {
    std::vector<int> idx(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
      // cartesian product of count ladders for this subset
      std::vector<std::vector<long long>> ladders;
      for (int i : idx) ladders.push_back(count_ladder(sig[static_cast<size_t>(i)].second));
      bool any_empty = false;
      for (const auto& l : ladders)
        if (l.empty()) any_empty = true;
      if (!any_empty) {
        std::vector<size_t> pos(idx.size(), 0);
        while (true) {
          TypeGuess g;
          for (size_t i = 0; i < idx.size(); ++i) {
            g.groups.push_back(sig[static_cast<size_t>(idx[i])].first);
            g.counts.push_back(ladders[i][pos[i]]);
          }
          options.push_back(std::move(g));
          size_t carry = idx.size();
          while (carry > 0) {
            if (++pos[carry - 1] < ladders[carry - 1].size()) break;
            pos[carry - 1] = 0;
            --carry;
          }
          if (carry == 0) break;
        }
      }
      // next subset of this size
      int i = size - 1;
      while (i >= 0 && idx[static_cast<size_t>(i)] == static_cast<int>(sig.size()) - size + i) --i;
      if (i < 0) break;
      idx[static_cast<size_t>(i)]++;
      for (int j = i + 1; j < size; ++j)
        idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return options;
}

void level_dfs(EnumContext& ctx, EnumState st, int h);

void type_dfs(EnumContext& ctx, const EnumState& st, int h,
              const std::vector<BinTypeView>& types, size_t idx) {
  if (ctx.budget_hit()) return;
  if (idx == types.size()) {
    // level complete: E_{h+1} = bins of E_h with 0 < f^{h+1} < eps f^h
    EnumState next = st;
    for (size_t b = 0; b < next.bins.size(); ++b) {
      bool keep = next.in_e[b] && next.bins[b].free > 0 &&
                  next.bins[b].free < ctx.params.cls.epsilon * next.f_prev[b];
      next.in_e[b] = keep ? 1 : 0;
      next.f_prev[b] = next.bins[b].free;
    }
    level_dfs(ctx, std::move(next), h + 1);
    return;
  }
  for (const TypeGuess& guess : guess_options(ctx, st, types[idx])) {
    if (ctx.budget_hit()) return;
    ctx.nodes++;
    if (guess.groups.empty()) {
      type_dfs(ctx, st, h, types, idx + 1);
    } else {
      EnumState branch = st;
      if (apply_guess(ctx, branch, types[idx], h, guess))
        type_dfs(ctx, branch, h, types, idx + 1);
    }
  }
}

void level_dfs(EnumContext& ctx, EnumState st, int h) {
  if (ctx.budget_hit()) return;
  if (h == ctx.params.alpha) {
    EnumOutcome out;
    out.bins = st.bins;
    out.in_e_alpha.assign(st.in_e.begin(), st.in_e.end());
    out.rep_discards = st.rep_discards;
    out.rep_discards_per_group = st.rep_discards_per_group;
    out.padding_bins_added = st.padding_added;
    out.trace = st.trace;
    ctx.outcomes->push_back(std::move(out));
    return;
  }
  // types fully inside E_h
  std::vector<BinTypeView> types;
  for (const BinTypeView& t : compute_bin_types(st.bins)) {
    bool all_in = true;
    for (int b : t.bins)
      if (!st.in_e[static_cast<size_t>(b)]) all_in = false;
    if (all_in && !t.bins.empty()) types.push_back(t);
  }
  type_dfs(ctx, st, h, types, 0);
}

}  // namespace

std::vector<EnumOutcome> recursive_enum(const std::vector<int>& small_ids,
                                        const std::vector<BinState>& bins,
                                        const Instance& inst, const SmallItemParams& params,
                                        const SmallBudgets& budgets) {
  std::vector<EnumOutcome> outcomes;
  if (budgets.enum_budget <= 0) return outcomes;
  EnumContext ctx{inst, params, budgets, {}, {}, {}};
  const Rational& eps = params.cls.epsilon;
  ctx.eps2 = eps * eps;
  ctx.eps3 = ctx.eps2 * eps;
  ctx.eps4 = ctx.eps3 * eps;
  ctx.pad_target = ceil_to_int(Rational(1) / ctx.eps4);
  ctx.per_bin_cap = static_cast<int>(floor_to_int(Rational(1) / ctx.eps2));
  ctx.outcomes = &outcomes;
  ctx.node_cap = budgets.enum_budget * 64 + 256;

  EnumState st;
  st.bins = bins;
  st.remaining = small_ids;
  std::sort(st.remaining.begin(), st.remaining.end());
  st.in_e.resize(bins.size());
  st.f_prev.resize(bins.size());
  for (size_t b = 0; b < bins.size(); ++b) {
    st.in_e[b] = (bins[b].free > 0 && bins[b].free < eps) ? 1 : 0;
    st.f_prev[b] = bins[b].free;
  }
  level_dfs(ctx, std::move(st), 0);
  return outcomes;
}

EvictResult evict_phase(EnumOutcome& outcome, const Instance& inst,
                        const SmallItemParams& params) {
  EvictResult res;
  const Rational& eps = params.cls.epsilon;
  Rational cap = eps * params.cls.opt_guess;
  std::map<int, int> evicted_per_group;
  for (size_t b = 0; b < outcome.bins.size(); ++b) {
    if (!outcome.in_e_alpha[b]) continue;
    BinState& bin = outcome.bins[b];
    Rational need = bin.free / eps;
    int best = -1;
    for (size_t i = 0; i < bin.committed.size(); ++i) {
      int id = bin.committed[i].first;
      const Item& it = inst.item(id);
      if (it.size < need) continue;
      if (Rational(evicted_per_group[it.group]) >= cap) continue;
      if (best < 0 || it.size > inst.item(bin.committed[static_cast<size_t>(best)].first).size)
        best = static_cast<int>(i);
    }
    if (best < 0) {
      res.ok = false;  // no eligible item: reject this guess
      return res;
    }
    auto [id, accounted] = bin.committed[static_cast<size_t>(best)];
    bin.committed.erase(bin.committed.begin() + best);
    bin.free += accounted;
    bin.blocked_groups.erase(inst.item(id).group);
    evicted_per_group[inst.item(id).group]++;
    res.evicted.push_back(id);
  }
  return res;
}

PartitionPolytope build_partition_polytope(const std::vector<int>& item_ids,
                                           const std::vector<BinTypeView>& types,
                                           const Instance& inst, const Rational& eps) {
  PartitionPolytope P;
  P.eps = eps;
  P.item_ids = item_ids;
  std::sort(P.item_ids.begin(), P.item_ids.end());
  std::set<int> groups_present;
  for (int id : P.item_ids) {
    P.item_size.push_back(inst.item(id).size);
    P.item_group.push_back(inst.item(id).group);
    groups_present.insert(inst.item(id).group);
  }
  for (const BinTypeView& t : types) {
    P.type_free.push_back(t.free);
    P.type_bins.push_back(static_cast<long long>(t.bins.size()));
  }
  for (int g : groups_present) {
    std::vector<long long> L;
    for (const BinTypeView& t : types) {
      long long bins = static_cast<long long>(t.bins.size());
      auto it = t.content_per_bin.find(g);
      long long per_bin = it == t.content_per_bin.end() ? 0 : it->second;
      L.push_back(bins - per_bin * bins);
    }
    P.cardinality_bound[g] = std::move(L);
  }
  return P;
}

TypePartition partition_items(const VertexSolution& v, const PartitionPolytope& P) {
  TypePartition out;
  out.items_per_type.assign(static_cast<size_t>(P.n_types()), {});
  for (int l = 0; l < P.n_items(); ++l) {
    int assigned = -1;
    bool fractional = false;
    for (int t = 0; t < P.n_types(); ++t) {
      const Rational& val = v.x[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (val == 1) assigned = t;
      else if (val != 0) fractional = true;
    }
    if (fractional || assigned < 0)
      out.fractional_discards.push_back(P.item_ids[static_cast<size_t>(l)]);
    else
      out.items_per_type[static_cast<size_t>(assigned)].push_back(
          P.item_ids[static_cast<size_t>(l)]);
  }
  return out;
}

std::optional<GreedyPacked> greedy_pack(const std::vector<GreedyBin>& bins,
                                        const std::vector<int>& items, const Instance& inst) {
  GreedyPacked out;
  out.per_bin.assign(bins.size(), {});
  if (items.empty()) return out;

  std::map<int, std::vector<int>> by_group;
  for (int id : items) by_group[inst.item(id).group].push_back(id);
  // zero-size dummies pad each group to one entry per bin, so a group may be
  // skipped in exactly |bins| - count(g) bins
  std::map<int, long long> dummies_left;
  for (auto& [g, ids] : by_group) {
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (inst.item(a).size != inst.item(b).size) return inst.item(a).size > inst.item(b).size;
      return a < b;
    });
    dummies_left[g] = static_cast<long long>(bins.size()) -
                      static_cast<long long>(ids.size());
  }
  for (size_t b = 0; b < bins.size(); ++b) {
    // selection pointer per group into the remaining pool; position == size
    // is this bin's dummy, available while the group has dummies left
    std::map<int, size_t> sel;
    for (auto& [g, ids] : by_group) sel[g] = 0;
    auto size_at = [&](int g, size_t pos) -> Rational {
      const auto& ids = by_group[g];
      return pos < ids.size() ? inst.item(ids[pos]).size : Rational(0);
    };
    auto total = [&]() {
      Rational s(0);
      for (auto& [g, pos] : sel) s += size_at(g, pos);
      return s;
    };
    while (total() > bins[b].cap) {
      int pick = -1;
      Rational best_drop(-1);
      for (auto& [g, pos] : sel) {
        size_t n = by_group[g].size();
        if (pos >= n) continue;                              // already at the dummy
        if (pos + 1 == n && dummies_left[g] <= 0) continue;  // no dummy to advance to
        Rational drop = size_at(g, pos) - size_at(g, pos + 1);
        if (pick < 0 || drop > best_drop) {
          pick = g;
          best_drop = drop;
        }
      }
      if (pick < 0) return std::nullopt;  // overflow with every group pinned
      sel[pick]++;
    }
    for (auto& [g, pos] : sel) {
      std::vector<int>& ids = by_group[g];
      if (pos >= ids.size()) {
        dummies_left[g]--;  // this bin consumed one of the group's dummies
        continue;
      }
      int id = ids[pos];
      if (bins[b].il_groups.count(g)) {
        out.conflict_discards.push_back(id);  // small meets its group's large item
      } else {
        out.per_bin[b].push_back(id);
      }
      // chosen (or discarded) items leave the pool; items skipped by the
      // overflow loop stay available for later bins
      ids.erase(ids.begin() + static_cast<long>(pos));
    }
  }
  size_t left = 0;
  for (auto& [g, ids] : by_group) left += ids.size();
  if (left > 0) return std::nullopt;
  return out;
}

SmallItemsResult pack_small_items(const std::vector<int>& small_ids,
                                  std::vector<BinState> bins, const Instance& inst,
                                  const SmallItemParams& params, const SmallBudgets& budgets) {
  SmallItemsResult res;
  if (small_ids.empty()) {
    res.bins = std::move(bins);
    return res;
  }
  const Rational& eps = params.cls.epsilon;
  std::vector<EnumOutcome> outcomes = recursive_enum(small_ids, bins, inst, params, budgets);
  res.enum_exhausted = static_cast<long long>(outcomes.size()) < budgets.enum_budget;

  for (EnumOutcome& outcome : outcomes) {
    res.guesses_tried++;
    EvictResult ev = evict_phase(outcome, inst, params);
    if (!ev.ok) continue;

    std::set<int> gone(ev.evicted.begin(), ev.evicted.end());
    for (const BinState& b : outcome.bins)
      for (const auto& [id, acc] : b.committed) gone.insert(id);
    for (int id : outcome.rep_discards) gone.insert(id);
    std::vector<int> remaining;
    for (int id : small_ids)
      if (!gone.count(id)) remaining.push_back(id);

    std::vector<BinState> work = outcome.bins;
    long long t_prime = ceil_to_int(eps * params.cls.opt_guess);
    for (long long i = 0; i < t_prime; ++i) {
      BinState b;
      b.origin = BinState::Origin::TPrime;
      b.assumed_cap = Rational(1);
      b.free = Rational(1);
      work.push_back(b);
    }

    std::vector<BinTypeView> types = compute_bin_types(work);
    PartitionPolytope P = build_partition_polytope(remaining, types, inst, eps);
    FindVertexResult fv = find_vertex(P);
    if (!fv.feasible) continue;
    TypePartition part = partition_items(fv.vertex, P);

    bool rejected = false;
    std::vector<int> greedy_discards;
    for (size_t ti = 0; ti < types.size() && !rejected; ++ti) {
      const std::vector<int>& items = part.items_per_type[ti];
      const BinTypeView& t = types[ti];
      long long extras = items.empty() ? 0 : ceil_to_int(2 * eps * static_cast<long long>(t.bins.size()));
      std::vector<int> bin_ids = t.bins;
      for (long long e = 0; e < extras; ++e) {
        BinState b;
        b.origin = BinState::Origin::GreedyExtra;
        b.assumed_cap = t.free;
        b.free = t.free;
        bin_ids.push_back(static_cast<int>(work.size()));
        work.push_back(b);
      }
      std::vector<GreedyBin> gb;
      for (int bi : bin_ids)
        gb.push_back({work[static_cast<size_t>(bi)].free,
                      work[static_cast<size_t>(bi)].il_groups});
      auto packed = greedy_pack(gb, items, inst);
      if (!packed) {
        rejected = true;
        break;
      }
      for (size_t i = 0; i < bin_ids.size(); ++i) {
        BinState& dest = work[static_cast<size_t>(bin_ids[i])];
        for (int id : packed->per_bin[i]) {
          dest.final_items.push_back(id);
          dest.free -= inst.item(id).size;
          dest.blocked_groups.insert(inst.item(id).group);
        }
      }
      greedy_discards.insert(greedy_discards.end(), packed->conflict_discards.begin(),
                             packed->conflict_discards.end());
    }
    if (rejected) continue;

    res.bins = std::move(work);
    res.evicted = ev.evicted;
    res.fractional_discards = part.fractional_discards;
    res.greedy_discards = std::move(greedy_discards);
    res.rep_discards = outcome.rep_discards;
    res.padding_bins = outcome.padding_bins_added;
    return res;
  }

  // every guess rejected or the budget was zero: balanced_coloring fallback
  res.fallback_used = true;
  res.bins = std::move(bins);
  if (!small_ids.empty()) {
    Instance sub;
    sub.n_groups = inst.n_groups;
    std::vector<int> back;
    for (int id : small_ids) {
      sub.items.push_back({static_cast<int>(back.size()), inst.item(id).size,
                           inst.item(id).group});
      back.push_back(id);
    }
    // keep group ids dense for the sub-instance
    std::map<int, int> gmap;
    for (Item& it : sub.items) {
      auto [g, fresh] = gmap.emplace(it.group, static_cast<int>(gmap.size()));
      it.group = g->second;
    }
    sub.n_groups = static_cast<int>(gmap.size());
    Packing bc = balanced_coloring(sub);
    for (const auto& bin : bc.bins) {
      BinState b;
      b.origin = BinState::Origin::Fallback;
      b.assumed_cap = Rational(1);
      b.free = Rational(1);
      for (int local : bin) {
        int id = back[static_cast<size_t>(local)];
        b.final_items.push_back(id);
        b.free -= inst.item(id).size;
        b.blocked_groups.insert(inst.item(id).group);
      }
      res.bins.push_back(std::move(b));
    }
  }
  return res;
}

}  // namespace gbp
