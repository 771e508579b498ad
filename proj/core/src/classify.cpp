#include "gbp/classify.hpp"

#include <algorithm>

namespace gbp {

std::pair<int, int> opt_guess_range(const Instance& inst) {
  if (inst.items.empty()) return {0, 0};
  Rational s = total_size(inst);
  Rational vmax(max_group_cardinality(inst));
  Rational hi = Rational(2 * s);
  if (Rational(s + vmax) > hi) hi = s + vmax;
  return {lower_bound(inst), static_cast<int>(ceil_to_int(hi))};
}

Rational band_mass(const Instance& inst, const Rational& eps, int k) {
  Rational lo = rational_pow(eps, static_cast<unsigned>(k + 1));
  Rational hi = rational_pow(eps, static_cast<unsigned>(k));
  Rational mass(0);
  for (const Item& it : inst.items)
    if (it.size >= lo && it.size < hi) mass += it.size;
  return mass;
}

int find_k(const Instance& inst, const Rational& eps, int opt_guess) {
  int top = static_cast<int>(ceil_to_int(Rational(1) / (eps * eps)));
  Rational cap = eps * eps * opt_guess;
  for (int k = 1; k <= top; ++k)
    if (band_mass(inst, eps, k) <= cap) return k;
  throw GuessRejected("no k in [1," + std::to_string(top) +
                      "] with band mass <= eps^2 * " + std::to_string(opt_guess) +
                      " (opt guess below size lower bound?)");
}

Classification classify(const Instance& inst, const ClassParams& params) {
  Classification out;
  Rational small_cut = rational_pow(params.epsilon, static_cast<unsigned>(params.k + 1));
  Rational large_cut = rational_pow(params.epsilon, static_cast<unsigned>(params.k));
  out.items.by_id.resize(static_cast<size_t>(inst.n_items()));
  std::vector<int> lm_count(static_cast<size_t>(inst.n_groups), 0);
  for (const Item& it : inst.items) {
    SizeClass c = it.size < small_cut    ? SizeClass::Small
                  : it.size < large_cut ? SizeClass::Medium
                                        : SizeClass::Large;
    out.items.by_id[static_cast<size_t>(it.id)] = c;
    switch (c) {
      case SizeClass::Small: out.items.small.push_back(it.id); break;
      case SizeClass::Medium: out.items.medium.push_back(it.id); break;
      case SizeClass::Large: out.items.large.push_back(it.id); break;
    }
    if (c != SizeClass::Small) lm_count[static_cast<size_t>(it.group)]++;
  }
  Rational group_cut = rational_pow(params.epsilon, static_cast<unsigned>(params.k + 2)) *
                       params.opt_guess;
  out.groups.is_large.resize(static_cast<size_t>(inst.n_groups));
  for (int g = 0; g < inst.n_groups; ++g) {
    bool large = Rational(lm_count[static_cast<size_t>(g)]) >= group_cut;
    out.groups.is_large[static_cast<size_t>(g)] = large;
    (large ? out.groups.large_groups : out.groups.small_groups).push_back(g);
  }
  Rational bound = rational_pow(params.epsilon, static_cast<unsigned>(2 * params.k + 3)) *
                   static_cast<long long>(out.groups.large_groups.size());
  if (bound > 1)
    throw GuessRejected("large-group count " + std::to_string(out.groups.large_groups.size()) +
                        " exceeds 1/eps^{2k+3}");
  return out;
}

bool scheme_applicable(const ClassParams& params, int /*n_groups*/) {
  Rational threshold = Rational(3) /
                       rational_pow(params.epsilon, static_cast<unsigned>(params.k + 2));
  return Rational(params.opt_guess) > threshold;
}

}  // namespace gbp
