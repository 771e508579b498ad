#include "gbp/scheme.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include <json.hpp>

#include "gbp/heuristics.hpp"
#include "gbp/patterns.hpp"
#include "gbp/small_items.hpp"

namespace gbp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Instance sub_instance(const Instance& inst, const std::vector<int>& ids,
                      std::vector<int>& back) {
  Instance sub;
  back.clear();
  std::map<int, int> gmap;
  for (int id : ids) {
    int g = inst.item(id).group;
    auto [it, fresh] = gmap.emplace(g, static_cast<int>(gmap.size()));
    sub.items.push_back({static_cast<int>(back.size()), inst.item(id).size, it->second});
    back.push_back(id);
  }
  sub.n_groups = static_cast<int>(gmap.size());
  return sub;
}

struct GuessResult {
  bool accepted = false;
  std::string rejection;
  Packing packing;
  SchemeReport report;
};

GuessResult run_one_guess(const Instance& inst, const Rational& eps, int guess,
                          const Budgets& budgets) {
  GuessResult res;
  SchemeReport& rep = res.report;
  rep.epsilon = eps;
  rep.opt_guess_used = guess;
  rep.lower_bound = lower_bound(inst);

  ClassParams params;
  params.epsilon = eps;
  params.opt_guess = guess;
  auto t0 = Clock::now();
  try {
    params.k = find_k(inst, eps, guess);
  } catch (const GuessRejected& ex) {
    res.rejection = ex.what();
    return res;
  }
  rep.k = params.k;
  if (!budgets.force_pipeline && !scheme_applicable(params, inst.n_groups)) {
    res.rejection = "below applicability threshold (opt_guess <= 3/eps^{k+2})";
    return res;
  }

  Classification cls;
  try {
    cls = classify(inst, params);
  } catch (const GuessRejected& ex) {
    res.rejection = ex.what();
    return res;
  }

  std::vector<int> pool;  // discard pool, all causes
  // mediums of small groups never reach the pattern phase
  for (int id : cls.items.medium)
    if (!cls.groups.is_large[static_cast<size_t>(inst.item(id).group)]) {
      pool.push_back(id);
      rep.discarded_items.medium_small_group++;
    }

  RoundedInstance rinst = shift_large_groups(inst, cls, params);
  try {
    shift_swap_small_groups(rinst, cls, params);
  } catch (const GuessRejected& ex) {
    res.rejection = ex.what();
    return res;
  }
  for (int id : rinst.discards) {
    pool.push_back(id);
    rep.discarded_items.shifting++;
  }
  rep.distinct_rounded_sizes = distinct_rounded_sizes(rinst);
  rep.ms_classify = ms_since(t0);

  t0 = Clock::now();
  int cap = static_cast<int>(
      floor_to_int(Rational(1) / rational_pow(eps, static_cast<unsigned>(params.k + 1))));
  SlotAlphabet alphabet = build_slot_alphabet(rinst, cls);
  PatternList patterns = enumerate_patterns(alphabet, cap, budgets.pattern_budget);
  rep.patterns_exhaustive = !patterns.truncated;

  SmallItemParams small_params;
  small_params.cls = params;
  small_params.alpha = budgets.alpha_override.value_or(default_alpha(eps));
  SmallBudgets small_budgets{budgets.enum_budget};

  // Attempts a full packing for one tentative placement; fills res.packing
  // and the report counters on success.
  auto try_placement = [&](const PlacedPacking& placed) -> bool {
    SwapResult sw = swapping(placed, rinst, cls);
    if (!sw.resolved) return false;
    Packing large_packing = unround(sw.packing, rinst);

    std::vector<BinState> bins;
    for (size_t b = 0; b < large_packing.bins.size(); ++b) {
      BinState bs;
      bs.assumed_cap = Rational(1);
      bs.free = Rational(1);
      bs.pattern_id = placed.bin_pattern[b];
      for (int id : large_packing.bins[b]) {
        bs.free -= rinst.effective_size(id);  // conservative: rounded >= original
        int g = inst.item(id).group;
        if (cls.groups.is_large[static_cast<size_t>(g)])
          bs.blocked_groups.insert(g);
        else
          bs.il_groups.insert(g);
      }
      bins.push_back(std::move(bs));
    }
    auto ts = Clock::now();
    SmallItemsResult small =
        pack_small_items(cls.items.small, std::move(bins), inst, small_params, small_budgets);
    rep.ms_small += ms_since(ts);
    rep.small_fallback_used = small.fallback_used;
    rep.enum_exhaustive = small.enum_exhausted;

    for (int id : small.evicted) pool.push_back(id);
    rep.discarded_items.eviction += static_cast<int>(small.evicted.size());
    for (int id : small.fractional_discards) pool.push_back(id);
    rep.discarded_items.fractional += static_cast<int>(small.fractional_discards.size());
    for (int id : small.greedy_discards) pool.push_back(id);
    rep.discarded_items.greedy_conflict += static_cast<int>(small.greedy_discards.size());
    for (int id : small.rep_discards) pool.push_back(id);
    rep.discarded_items.representative += static_cast<int>(small.rep_discards.size());

    // assemble nonempty bins: core first, then structural extras by origin
    Packing out;
    out.source = "aptas";
    int core_nonempty = 0;
    for (size_t b = 0; b < small.bins.size(); ++b) {
      const BinState& bs = small.bins[b];
      if (bs.origin != BinState::Origin::Core) continue;
      std::vector<int> content = large_packing.bins[b];
      for (const auto& [id, acc] : bs.committed) content.push_back(id);
      for (int id : bs.final_items) content.push_back(id);
      if (content.empty()) continue;
      out.bins.push_back(std::move(content));
      ++core_nonempty;
    }
    for (size_t b = 0; b < small.bins.size(); ++b) {
      const BinState& bs = small.bins[b];
      if (bs.origin == BinState::Origin::Core) continue;
      std::vector<int> content;
      for (const auto& [id, acc] : bs.committed) content.push_back(id);
      for (int id : bs.final_items) content.push_back(id);
      if (content.empty()) continue;
      switch (bs.origin) {
        case BinState::Origin::Padding: rep.extra_bins.padding++; break;
        case BinState::Origin::TPrime: rep.extra_bins.t_prime++; break;
        case BinState::Origin::GreedyExtra: rep.extra_bins.greedy_extra++; break;
        case BinState::Origin::Fallback: rep.extra_bins.fallback++; break;
        default: break;
      }
      out.bins.push_back(std::move(content));
    }
    out.core_bins = core_nonempty;
    res.packing = std::move(out);
    return true;
  };

  bool placed_ok = false;
  AssignmentEnumerator en(patterns, alphabet, guess, budgets.assignment_budget);
  while (auto assignment = en.next()) {
    PlacedPacking placed = place_by_patterns(*assignment, patterns, alphabet, rinst, cls);
    if (try_placement(placed)) {
      placed_ok = true;
      break;
    }
  }
  rep.assignments_exhaustive = en.exhausted();

  if (!placed_ok && !en.exhausted()) {
    // assignment budget tripped: First-Fit-decreasing of the rounded items,
    // respecting labels where possible, then the usual Swapping pass
    std::vector<int> ids = rinst.survivors();
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (rinst.effective_size(a) != rinst.effective_size(b))
        return rinst.effective_size(a) > rinst.effective_size(b);
      return a < b;
    });
    PlacedPacking pp;
    pp.packing.source = "patterns_ffd";
    pp.packing.bins.assign(static_cast<size_t>(guess), {});
    pp.packing.core_bins = guess;
    pp.bin_pattern.assign(static_cast<size_t>(guess), -2);
    std::vector<Rational> load(static_cast<size_t>(guess), Rational(0));
    std::vector<std::set<int>> groups_in(static_cast<size_t>(guess));
    bool ffd_ok = true;
    for (int id : ids) {
      Rational s = rinst.effective_size(id);
      int g = inst.item(id).group;
      int chosen = -1;
      for (int pass = 0; pass < 2 && chosen < 0; ++pass)
        for (size_t b = 0; b < load.size(); ++b) {
          if (load[b] + s > 1) continue;
          if (pass == 0 && groups_in[b].count(g)) continue;
          chosen = static_cast<int>(b);
          break;
        }
      if (chosen < 0) {
        ffd_ok = false;
        break;
      }
      pp.packing.bins[static_cast<size_t>(chosen)].push_back(id);
      load[static_cast<size_t>(chosen)] += s;
      groups_in[static_cast<size_t>(chosen)].insert(g);
    }
    if (ffd_ok && try_placement(pp)) placed_ok = true;
  }
  rep.ms_patterns = ms_since(t0);
  if (!placed_ok) {
    res.rejection = rep.assignments_exhaustive
                        ? "no pattern assignment admits a conflict-free packing"
                        : "assignment budget exhausted";
    return res;
  }

  std::vector<std::vector<int>> discard_bins = pack_discards(inst, pool);
  rep.extra_bins.discard_pool = static_cast<int>(discard_bins.size());
  for (auto& bin : discard_bins) res.packing.bins.push_back(std::move(bin));
  res.packing.refresh_discarded();
  res.accepted = true;
  return res;
}

}  // namespace

std::vector<std::vector<int>> pack_discards(const Instance& inst, const std::vector<int>& pool) {
  if (pool.empty()) return {};
  std::vector<int> back;
  Instance sub = sub_instance(inst, pool, back);
  Packing bc = balanced_coloring(sub);
  std::vector<std::vector<int>> out;
  for (const auto& bin : bc.bins) {
    std::vector<int> mapped;
    for (int local : bin) mapped.push_back(back[static_cast<size_t>(local)]);
    out.push_back(std::move(mapped));
  }
  return out;
}

std::pair<Packing, SchemeReport> opt_guess_loop(const Instance& inst, const Rational& epsilon,
                                                const Budgets& budgets) {
  auto t0 = Clock::now();
  std::vector<std::string> log;
  auto [lo, hi] = opt_guess_range(inst);
  if (inst.items.empty()) {
    Packing empty;
    empty.source = "aptas";
    SchemeReport rep;
    rep.epsilon = epsilon;
    rep.ms_total = ms_since(t0);
    return {empty, rep};
  }

  Packing fallback = balanced_coloring(inst);
  std::optional<GuessResult> accepted;
  for (int guess = std::max(lo, 1); guess <= hi; ++guess) {
    GuessResult r = run_one_guess(inst, epsilon, guess, budgets);
    if (r.accepted) {
      log.push_back("guess " + std::to_string(guess) + ": accepted");
      accepted = std::move(r);
      break;
    }
    log.push_back("guess " + std::to_string(guess) + ": rejected (" + r.rejection + ")");
  }

  SchemeReport rep;
  Packing out;
  if (accepted && accepted->packing.total_bins() <= fallback.total_bins()) {
    rep = std::move(accepted->report);
    rep.pipeline_used = true;
    out = std::move(accepted->packing);
  } else {
    if (accepted)
      log.push_back("pipeline result (" + std::to_string(accepted->packing.total_bins()) +
                    " bins) beaten by BalancedColoring fallback (" +
                    std::to_string(fallback.total_bins()) + " bins)");
    rep.epsilon = epsilon;
    rep.lower_bound = lower_bound(inst);
    rep.opt_guess_used = std::max(lo, 1);
    rep.fallback_used = true;
    out = std::move(fallback);
    out.source = "aptas_fallback";
    out.core_bins = std::min(out.total_bins(), rep.lower_bound);
    rep.extra_bins.fallback = out.total_bins() - out.core_bins;
  }
  rep.guess_log = std::move(log);
  out.refresh_discarded();
  rep.core_bins = out.core_bins;
  rep.total_bins = out.total_bins();
  rep.ms_total = ms_since(t0);
  return {out, rep};
}

std::pair<Packing, SchemeReport> run_aptas(const Instance& inst, const Rational& epsilon,
                                           const Budgets& budgets) {
  if (epsilon <= 0 || epsilon >= Rational(1, 2))
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  return opt_guess_loop(inst, epsilon, budgets);
}

std::string SchemeReport::ratio_vs_lower_bound() const {
  if (lower_bound <= 0) return total_bins == 0 ? "1" : "inf";
  return format_rational(Rational(total_bins, lower_bound));
}

std::string scheme_report_to_json(const SchemeReport& rep, bool with_timings) {
  nlohmann::json j;
  j["epsilon"] = format_rational(rep.epsilon);
  j["opt_guess_used"] = rep.opt_guess_used;
  j["k"] = rep.k;
  j["lower_bound"] = rep.lower_bound;
  j["core_bins"] = rep.core_bins;
  j["total_bins"] = rep.total_bins;
  j["ratio_vs_lower_bound"] = rep.ratio_vs_lower_bound();
  j["extra_bins"] = {{"padding", rep.extra_bins.padding},
                     {"t_prime", rep.extra_bins.t_prime},
                     {"greedy_extra", rep.extra_bins.greedy_extra},
                     {"discard_pool", rep.extra_bins.discard_pool},
                     {"fallback", rep.extra_bins.fallback},
                     {"total", rep.extra_bins.total()}};
  j["discarded_items"] = {{"shifting", rep.discarded_items.shifting},
                          {"medium_small_group", rep.discarded_items.medium_small_group},
                          {"representative", rep.discarded_items.representative},
                          {"eviction", rep.discarded_items.eviction},
                          {"fractional", rep.discarded_items.fractional},
                          {"greedy_conflict", rep.discarded_items.greedy_conflict},
                          {"total", rep.discarded_items.total()}};
  j["pipeline_used"] = rep.pipeline_used;
  j["fallback_used"] = rep.fallback_used;
  j["small_fallback_used"] = rep.small_fallback_used;
  j["patterns_exhaustive"] = rep.patterns_exhaustive;
  j["assignments_exhaustive"] = rep.assignments_exhaustive;
  j["enum_exhaustive"] = rep.enum_exhaustive;
  j["distinct_rounded_sizes"] = rep.distinct_rounded_sizes;
  j["guess_log"] = rep.guess_log;
  if (with_timings)
    j["timings_ms"] = {{"classify", rep.ms_classify},
                       {"patterns", rep.ms_patterns},
                       {"small_items", rep.ms_small},
                       {"total", rep.ms_total}};
  return j.dump(2) + "\n";
}

}  // namespace gbp
