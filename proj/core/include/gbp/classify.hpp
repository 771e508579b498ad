#pragma once

#include <utility>
#include <vector>

#include "gbp/model.hpp"

namespace gbp {

struct GuessRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassParams {
  Rational epsilon;   // scheme accuracy, in (0, 1/2) for the full pipeline
  int opt_guess = 0;  // current OPT guess
  int k = 1;          // band index: small < eps^{k+1} <= medium < eps^k <= large
};

enum class SizeClass { Small, Medium, Large };

struct ItemClasses {
  std::vector<SizeClass> by_id;
  std::vector<int> small, medium, large;
};

struct GroupClasses {
  std::vector<bool> is_large;  // by group id
  std::vector<int> large_groups, small_groups;
};

struct Classification {
  ItemClasses items;
  GroupClasses groups;
};

// lo = lower_bound(inst); hi = ceil(max{2 S(I), S(I)+v_max}). OPT lies in
// [lo, hi]; the scheme iterates guesses ascending from lo.
std::pair<int, int> opt_guess_range(const Instance& inst);

// Total item size inside [eps^{k+1}, eps^k).
Rational band_mass(const Instance& inst, const Rational& eps, int k);

// Smallest k in [1, ceil(1/eps^2)] whose band has mass <= eps^2 * opt_guess.
// Guaranteed to exist when opt_guess >= ceil(S(I)); throws GuessRejected
// otherwise if no k qualifies.
int find_k(const Instance& inst, const Rational& eps, int opt_guess);

// Item classes by the k thresholds; a group is large iff it holds at least
// eps^{k+2} * opt_guess large+medium items. Checks the large-group count
// bound |large| <= 1/eps^{2k+3} (holds whenever opt_guess >= S(I)).
Classification classify(const Instance& inst, const ClassParams& params);

// True iff opt_guess > 3 / eps^{k+2}. Below the threshold the scheme routes
// to the BalancedColoring fallback.
bool scheme_applicable(const ClassParams& params, int n_groups);

}  // namespace gbp
