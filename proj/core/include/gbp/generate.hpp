#pragma once

#include <cstdint>

#include "gbp/model.hpp"

namespace gbp {

enum class Family { Uniform, CliqueHeavy, AppendixB, EqualGroups };

struct GenSpec {
  Family family = Family::Uniform;
  std::string name;
  std::uint64_t seed = 0;
  // uniform / clique_heavy
  int n_items = 0;
  int n_groups = 0;
  Rational size_min{1, 100};
  Rational size_max{1, 2};
  // appendix_b (adversarial family): requires 1/epsilon and epsilon*nhat
  // integral
  Rational epsilon{1, 5};
  int nhat = 0;
  // equal_groups
  int items_per_group = 0;
  Rational item_size{1, 4};
};

// Deterministic under seed; regenerating with the same spec is byte-identical.
Instance generate(const GenSpec& spec);

struct GapDemo {
  Instance instance;
  Packing optimal;  // nhat bins, every bin full
  Packing greedy;   // (2 - epsilon) * nhat bins
};

// The adversarial construction: n1 = 4*nhat singleton groups of size 1/5,
// n2 = nhat*(1/eps - 1) singleton groups of size eps/5, one group of nhat
// items of size eps/5. Builds both packings explicitly: the optimal one with
// 4 large + 1/eps small items per bin (exactly one from the big group), and
// the large-items-first greedy that spills the big group into fresh bins.
GapDemo demonstrate_gap(const Rational& epsilon, int nhat);

std::string family_name(Family f);
Family family_from_name(const std::string& name);

}  // namespace gbp
