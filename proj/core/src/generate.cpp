#include "gbp/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace gbp {

namespace {

// sizes drawn as k/1000 within [lo, hi] so generated files stay readable
Rational random_size(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  long long lo_k = ceil_to_int(lo * 1000);
  long long hi_k = floor_to_int(hi * 1000);
  if (hi_k < lo_k) hi_k = lo_k;
  std::uniform_int_distribution<long long> dist(lo_k, hi_k);
  return Rational(dist(rng), 1000);
}

Instance appendix_b_instance(const Rational& eps, int nhat) {
  Rational inv = Rational(1) / eps;
  if (denominator(inv) != 1)
    throw ValidationError("appendix_b: 1/epsilon must be an integer");
  if (denominator(Rational(eps * nhat)) != 1)
    throw ValidationError("appendix_b: epsilon * nhat must be an integer");
  long long one_over_eps = numerator(inv).convert_to<long long>();
  Instance inst;
  inst.name = "appendix_b_eps" + format_rational(eps) + "_n" + std::to_string(nhat);
  int n1 = 4 * nhat;
  long long n2 = static_cast<long long>(nhat) * (one_over_eps - 1);
  Rational large(1, 5);
  Rational small = eps / 5;
  int id = 0, group = 0;
  for (int i = 0; i < n1; ++i) inst.items.push_back({id++, large, group++});
  for (long long i = 0; i < n2; ++i) inst.items.push_back({id++, small, group++});
  for (int i = 0; i < nhat; ++i) inst.items.push_back({id++, small, group});
  inst.n_groups = group + 1;
  return validate_instance(std::move(inst));
}

}  // namespace

Instance generate(const GenSpec& spec) {
  Instance inst;
  inst.seed = spec.seed;
  std::mt19937_64 rng(spec.seed);
  switch (spec.family) {
    case Family::Uniform: {
      if (spec.n_items == 0) {
        inst.name = spec.name.empty() ? "uniform_empty" : spec.name;
        inst.seed.reset();
        return inst;
      }
      int n_groups = std::max(1, std::min(spec.n_groups, spec.n_items));
      std::uniform_int_distribution<int> gdist(0, n_groups - 1);
      for (int i = 0; i < spec.n_items; ++i) {
        // first n_groups items cover every group so indices stay gap-free
        int g = i < n_groups ? i : gdist(rng);
        inst.items.push_back({i, random_size(rng, spec.size_min, spec.size_max), g});
      }
      inst.n_groups = n_groups;
      break;
    }
    case Family::CliqueHeavy: {
      // few groups, so v_max dominates the lower bound
      int n_groups = std::max(1, std::min(spec.n_groups > 0 ? spec.n_groups : 2,
                                          spec.n_items));
      std::uniform_int_distribution<int> gdist(0, n_groups - 1);
      for (int i = 0; i < spec.n_items; ++i) {
        int g = i < n_groups ? i : gdist(rng);
        inst.items.push_back({i, random_size(rng, spec.size_min, spec.size_max), g});
      }
      inst.n_groups = n_groups;
      break;
    }
    case Family::AppendixB: {
      Instance ab = appendix_b_instance(spec.epsilon, spec.nhat);
      if (!spec.name.empty()) ab.name = spec.name;
      ab.seed.reset();
      return ab;
    }
    case Family::EqualGroups: {
      int id = 0;
      for (int g = 0; g < spec.n_groups; ++g)
        for (int i = 0; i < spec.items_per_group; ++i)
          inst.items.push_back({id++, spec.item_size, g});
      inst.n_groups = spec.n_groups;
      inst.seed.reset();
      break;
    }
  }
  if (inst.name.empty())
    inst.name = spec.name.empty()
                    ? family_name(spec.family) + "_" + std::to_string(spec.n_items) + "_s" +
                          std::to_string(spec.seed)
                    : spec.name;
  if (!spec.name.empty()) inst.name = spec.name;
  return validate_instance(std::move(inst));
}

GapDemo demonstrate_gap(const Rational& epsilon, int nhat) {
  GapDemo demo;
  demo.instance = appendix_b_instance(epsilon, nhat);
  long long one_over_eps = numerator(Rational(1) / epsilon).convert_to<long long>();
  long long eps_nhat = numerator(Rational(epsilon * nhat)).convert_to<long long>();
  int n1 = 4 * nhat;
  long long n2 = static_cast<long long>(nhat) * (one_over_eps - 1);
  int gn_base = static_cast<int>(n1 + n2);  // first id of the big group

  // optimal: bin i holds larges 4i..4i+3, one big-group item, and
  // (1/eps - 1) singleton smalls; every bin is exactly full
  demo.optimal.source = "gap_optimal";
  long long small_next = n1;
  for (int b = 0; b < nhat; ++b) {
    std::vector<int> bin;
    for (int j = 0; j < 4; ++j) bin.push_back(4 * b + j);
    bin.push_back(gn_base + b);
    for (long long j = 0; j < one_over_eps - 1; ++j) bin.push_back(static_cast<int>(small_next++));
    demo.optimal.bins.push_back(std::move(bin));
  }
  demo.optimal.core_bins = nhat;

  // greedy: larges as in the optimal packing; the singleton smalls fill the
  // first (1-eps)*nhat bins; the big group gets one slot per leftover bin and
  // spills into (1-eps)*nhat fresh bins
  demo.greedy.source = "gap_greedy";
  small_next = n1;
  long long full_bins = nhat - eps_nhat;  // (1-eps)*nhat
  for (int b = 0; b < nhat; ++b) {
    std::vector<int> bin;
    for (int j = 0; j < 4; ++j) bin.push_back(4 * b + j);
    if (b < full_bins)
      for (long long j = 0; j < one_over_eps; ++j) bin.push_back(static_cast<int>(small_next++));
    demo.greedy.bins.push_back(std::move(bin));
  }
  int gn_next = gn_base;
  for (long long b = full_bins; b < nhat; ++b)
    demo.greedy.bins[static_cast<size_t>(b)].push_back(gn_next++);
  while (gn_next < gn_base + nhat) demo.greedy.bins.push_back({gn_next++});
  demo.greedy.core_bins = demo.greedy.total_bins();
  return demo;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::CliqueHeavy: return "clique_heavy";
    case Family::AppendixB: return "appendix_b";
    case Family::EqualGroups: return "equal_groups";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "uniform") return Family::Uniform;
  if (name == "clique_heavy") return Family::CliqueHeavy;
  if (name == "appendix_b") return Family::AppendixB;
  if (name == "equal_groups") return Family::EqualGroups;
  throw ValidationError("unknown instance family: " + name);
}

}  // namespace gbp
