#include "gbp/patterns.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gbp {

int SlotAlphabet::index_of(const Rational& size, int label) const {
  for (size_t i = 0; i < slots.size(); ++i)
    if (slots[i].label == label && slots[i].size == size) return static_cast<int>(i);
  return -1;
}

SlotAlphabet build_slot_alphabet(const RoundedInstance& rinst, const Classification& cls) {
  std::map<std::pair<Rational, int>, long long> counts;
  for (const auto& [id, size] : rinst.rounded) {
    int group = rinst.base.item(id).group;
    int label = cls.groups.is_large[static_cast<size_t>(group)] ? group : kSmallGroupLabel;
    counts[{size, label}]++;
  }
  std::vector<std::pair<Slot, long long>> entries;
  for (const auto& [key, c] : counts) entries.push_back({{key.first, key.second}, c});
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first.size != b.first.size) return a.first.size > b.first.size;
    if ((a.first.label == kSmallGroupLabel) != (b.first.label == kSmallGroupLabel))
      return b.first.label == kSmallGroupLabel;  // 'u' last
    return a.first.label < b.first.label;
  });
  SlotAlphabet out;
  for (auto& [slot, c] : entries) {
    out.slots.push_back(slot);
    out.supply.push_back(c);
  }
  return out;
}

PatternList enumerate_patterns(const SlotAlphabet& alphabet, int cap, long long budget) {
  PatternList out;
  Pattern empty;
  out.patterns.push_back(empty);  // bins may carry no large/medium item

  std::vector<std::pair<int, int>> current;
  std::set<int> labels_used;
  Rational load(0);
  int used = 0;

  auto rec = [&](auto&& self, size_t slot_idx) -> void {
    if (out.truncated) return;
    if (slot_idx == alphabet.slots.size()) {
      if (used > 0) {
        if (static_cast<long long>(out.patterns.size()) >= budget) {
          out.truncated = true;
          return;
        }
        Pattern p;
        p.slots = current;
        p.load = load;
        p.n_slots = used;
        out.patterns.push_back(std::move(p));
      }
      return;
    }
    const Slot& s = alphabet.slots[slot_idx];
    long long max_here = alphabet.supply[slot_idx];
    if (s.label != kSmallGroupLabel) {
      // a second slot of one large-group label could never be filled
      max_here = std::min<long long>(max_here, labels_used.count(s.label) ? 0 : 1);
    }
    max_here = std::min<long long>(max_here, cap - used);
    if (s.size > 0) {
      Rational room = Rational(1) - load;
      // largest m with m*size <= room
      long long by_cap = floor_to_int(room / s.size);
      max_here = std::min(max_here, by_cap);
    }
    for (long long m = max_here; m >= 0; --m) {
      bool track_label = m > 0 && s.label != kSmallGroupLabel;
      if (m > 0) {
        current.push_back({static_cast<int>(slot_idx), static_cast<int>(m)});
        load += s.size * m;
        used += static_cast<int>(m);
        if (track_label) labels_used.insert(s.label);
      }
      self(self, slot_idx + 1);
      if (m > 0) {
        used -= static_cast<int>(m);
        load -= s.size * m;
        current.pop_back();
        if (track_label) labels_used.erase(s.label);
      }
      if (out.truncated) return;
    }
  };
  if (!alphabet.slots.empty() && cap > 0) rec(rec, 0);
  return out;
}

AssignmentEnumerator::AssignmentEnumerator(const PatternList& patterns,
                                           const SlotAlphabet& alphabet, int opt_guess,
                                           long long budget)
    : patterns_(patterns), alphabet_(alphabet), opt_guess_(opt_guess), budget_(budget) {
  remaining_supply_ = alphabet.supply;
  size_t np = patterns.patterns.size();
  size_t ns = alphabet.slots.size();
  max_mult_suffix_.assign(np + 1, std::vector<long long>(ns, 0));
  for (size_t p = np; p-- > 1;) {  // pattern 0 is empty
    max_mult_suffix_[p] = max_mult_suffix_[p + 1];
    for (const auto& [slot, mult] : patterns.patterns[p].slots)
      max_mult_suffix_[p][static_cast<size_t>(slot)] =
          std::max<long long>(max_mult_suffix_[p][static_cast<size_t>(slot)], mult);
  }
  if (opt_guess_ < 0) done_ = true;
}

bool AssignmentEnumerator::feasible_suffix(size_t from) const {
  long long bins_left = opt_guess_ - bins_used_;
  for (size_t s = 0; s < alphabet_.slots.size(); ++s) {
    long long need = remaining_supply_[s];
    if (need < 0) return false;
    if (need == 0) continue;
    long long per_bin = from < max_mult_suffix_.size() ? max_mult_suffix_[from][s] : 0;
    if (per_bin * bins_left < need) return false;
  }
  return true;
}

// DFS over counts for patterns 1..np-1, counts descending from the largest
// supply-feasible value; pattern 0 (empty) absorbs the leftover bins. A
// frame's count is applied to the running supply iff count >= 0.
std::optional<PatternAssignment> AssignmentEnumerator::next() {
  if (done_) return std::nullopt;
  size_t np = patterns_.patterns.size();

  auto apply = [&](size_t p, long long count, int sign) {
    for (const auto& [slot, mult] : patterns_.patterns[p].slots)
      remaining_supply_[static_cast<size_t>(slot)] -= sign * count * mult;
    bins_used_ += sign * count;
  };
  auto max_count = [&](size_t p) -> long long {
    long long m = opt_guess_ - bins_used_;
    for (const auto& [slot, mult] : patterns_.patterns[p].slots)
      m = std::min(m, remaining_supply_[static_cast<size_t>(slot)] / mult);
    return m;
  };
  auto dec_top = [&]() {
    Frame& f = stack_.back();
    apply(f.pattern, f.count, -1);
    f.count--;
    if (f.count >= 0) apply(f.pattern, f.count, +1);
  };
  // Retreat until the top frame is applied and its suffix can still cover the
  // remaining supply. Returns false when the whole space is exhausted.
  auto settle = [&]() -> bool {
    while (!stack_.empty()) {
      if (++steps_ > budget_) return false;
      Frame& f = stack_.back();
      if (f.count < 0) {
        stack_.pop_back();
        if (stack_.empty()) return false;
        dec_top();
        continue;
      }
      if (feasible_suffix(f.pattern + 1)) return true;
      dec_top();
    }
    return false;
  };

  if (np == 1) {
    done_ = true;
    exhausted_ = true;
    bool ok = opt_guess_ >= 0;
    for (long long r : remaining_supply_)
      if (r != 0) ok = false;
    if (!ok) return std::nullopt;
    PatternAssignment a;
    a.count = {opt_guess_};
    return a;
  }

  if (stack_.empty()) {
    stack_.push_back({1, max_count(1)});
    apply(1, stack_.back().count, +1);
  } else {
    dec_top();  // resume past the leaf yielded last time
  }
  while (true) {
    if (steps_ > budget_) {
      done_ = true;
      exhausted_ = false;
      return std::nullopt;
    }
    if (!settle()) {
      done_ = true;
      exhausted_ = steps_ <= budget_;
      return std::nullopt;
    }
    if (stack_.size() == np - 1) {
      // feasible_suffix(np) holds iff the supply is exactly consumed
      PatternAssignment a;
      a.count.assign(np, 0);
      a.count[0] = opt_guess_ - bins_used_;
      for (const Frame& f : stack_) a.count[f.pattern] = f.count;
      return a;
    }
    size_t p = stack_.size() + 1;
    stack_.push_back({p, max_count(p)});
    apply(p, stack_.back().count, +1);
  }
}

PlacedPacking place_by_patterns(const PatternAssignment& assignment,
                                const PatternList& patterns, const SlotAlphabet& alphabet,
                                const RoundedInstance& rinst, const Classification& cls) {
  // survivor queue per slot, ascending id
  std::vector<std::vector<int>> queue(alphabet.slots.size());
  for (int id : rinst.survivors()) {
    int group = rinst.base.item(id).group;
    int label = cls.groups.is_large[static_cast<size_t>(group)] ? group : kSmallGroupLabel;
    int slot = alphabet.index_of(rinst.rounded.at(id), label);
    if (slot < 0) throw std::runtime_error("place_by_patterns: survivor without slot");
    queue[static_cast<size_t>(slot)].push_back(id);
  }
  std::vector<size_t> head(alphabet.slots.size(), 0);

  PlacedPacking out;
  out.packing.source = "patterns";
  for (size_t p = 0; p < patterns.patterns.size(); ++p) {
    long long count = p < assignment.count.size() ? assignment.count[p] : 0;
    for (long long rep = 0; rep < count; ++rep) {
      std::vector<int> bin;
      for (const auto& [slot, mult] : patterns.patterns[p].slots) {
        for (int m = 0; m < mult; ++m) {
          size_t& h = head[static_cast<size_t>(slot)];
          if (h >= queue[static_cast<size_t>(slot)].size())
            throw std::runtime_error("place_by_patterns: slot supply mismatch");
          bin.push_back(queue[static_cast<size_t>(slot)][h++]);
        }
      }
      out.packing.bins.push_back(std::move(bin));
      out.bin_pattern.push_back(static_cast<int>(p));
    }
  }
  for (size_t s = 0; s < alphabet.slots.size(); ++s)
    if (head[s] != queue[s].size())
      throw std::runtime_error("place_by_patterns: slot supply mismatch");
  out.packing.core_bins = out.packing.total_bins();
  return out;
}

SwapResult swapping(const PlacedPacking& tentative, const RoundedInstance& rinst,
                    const Classification& cls) {
  SwapResult res;
  res.packing = tentative.packing;
  auto& bins = res.packing.bins;

  auto group_of = [&](int id) { return rinst.base.item(id).group; };
  auto is_u_item = [&](int id) {
    return !cls.groups.is_large[static_cast<size_t>(group_of(id))] && rinst.covers(id);
  };

  std::vector<int> bin_of(static_cast<size_t>(rinst.base.n_items()), -1);
  for (size_t b = 0; b < bins.size(); ++b)
    for (int id : bins[b]) bin_of[static_cast<size_t>(id)] = static_cast<int>(b);

  // all small-group large items, ascending id: the swap candidate pool
  std::vector<int> u_items;
  for (const auto& bin : bins)
    for (int id : bin)
      if (is_u_item(id)) u_items.push_back(id);
  std::sort(u_items.begin(), u_items.end());

  auto group_count_in = [&](int b, int g) {
    int c = 0;
    for (int id : bins[static_cast<size_t>(b)])
      if (group_of(id) == g) ++c;
    return c;
  };
  auto conflicting_items = [&]() {
    std::vector<int> out;  // sorted by (bin, id)
    for (size_t b = 0; b < bins.size(); ++b) {
      std::map<int, std::vector<int>> by_group;
      for (int id : bins[b]) by_group[group_of(id)].push_back(id);
      std::vector<int> here;
      for (auto& [g, ids] : by_group)
        if (ids.size() > 1) here.insert(here.end(), ids.begin(), ids.end());
      std::sort(here.begin(), here.end());
      out.insert(out.end(), here.begin(), here.end());
    }
    return out;
  };

  while (true) {
    std::vector<int> conflicts = conflicting_items();
    if (conflicts.empty()) {
      res.resolved = true;
      return res;
    }
    bool swapped = false;
    for (int ell : conflicts) {
      int b = bin_of[static_cast<size_t>(ell)];
      Rational size_ell = rinst.effective_size(ell);
      int g_ell = group_of(ell);
      for (int y : u_items) {
        if (y == ell) continue;
        ++res.swap_searches;
        int c = bin_of[static_cast<size_t>(y)];
        if (c == b) continue;
        if (rinst.effective_size(y) != size_ell) continue;
        int g_y = group_of(y);
        // bad if y meets its group in b (besides ell) or ell meets its in c (besides y)
        int in_b = group_count_in(b, g_y) - (g_y == g_ell ? 1 : 0);
        int in_c = group_count_in(c, g_ell) - (g_y == g_ell ? 1 : 0);
        if (in_b > 0 || in_c > 0) continue;
        auto& bb = bins[static_cast<size_t>(b)];
        auto& cb = bins[static_cast<size_t>(c)];
        *std::find(bb.begin(), bb.end(), ell) = y;
        *std::find(cb.begin(), cb.end(), y) = ell;
        bin_of[static_cast<size_t>(ell)] = c;
        bin_of[static_cast<size_t>(y)] = b;
        swapped = true;
        break;
      }
      if (swapped) break;
    }
    if (!swapped) {
      res.resolved = false;  // no good swap for any conflicting item
      return res;
    }
  }
}

}  // namespace gbp
