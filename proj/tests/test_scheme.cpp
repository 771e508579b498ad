#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbp/exact.hpp"
#include "gbp/heuristics.hpp"
#include "gbp/scheme.hpp"
#include "test_util.hpp"

using namespace gbp;
using test::make_instance;
using test::random_instance;

namespace {

Rational coloring_bound(const Instance& inst) {
  Rational s = total_size(inst);
  Rational a = 2 * s;
  Rational b = s + max_group_cardinality(inst);
  return a > b ? a : b;
}

}  // namespace

TEST_CASE("empty instance packs into zero bins") {
  Instance empty;
  auto [packing, rep] = run_aptas(empty, Rational(3, 10));
  CHECK(packing.total_bins() == 0);
  CHECK(rep.total_bins == 0);
}

TEST_CASE("epsilon domain is enforced") {
  Instance inst = make_instance({{"1/2", 0}});
  CHECK_THROWS_AS(run_aptas(inst, Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(run_aptas(inst, Rational(0)), std::invalid_argument);
  CHECK_NOTHROW(run_aptas(inst, Rational(49, 100)));
}

TEST_CASE("below the applicability threshold the fallback bound holds") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_instance(rng, 12);
    auto [packing, rep] = run_aptas(inst, Rational(3, 10));
    CHECK(rep.fallback_used);
    CHECK(check_packing(inst, packing).feasible);
    CHECK(packing.total_bins() <= ceil_to_int(coloring_bound(inst)));
  }
}

TEST_CASE("pack_discards") {
  Instance inst = make_instance(
      {{"1/10", 0}, {"1/10", 0}, {"1/10", 0}, {"1/10", 0}, {"1/10", 0}, {"1/2", 1}});
  SUBCASE("empty pool") { CHECK(pack_discards(inst, {}).empty()); }
  SUBCASE("a five-item group forces five bins") {
    auto bins = pack_discards(inst, {0, 1, 2, 3, 4});
    CHECK(bins.size() == 5);
  }
  SUBCASE("random pools meet the coloring bound") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
      Instance big = random_instance(rng, 20);
      std::vector<int> pool;
      for (int i = 0; i < big.n_items(); i += 2) pool.push_back(i);
      if (pool.empty()) continue;
      auto bins = pack_discards(big, pool);
      Rational s(0);
      std::map<int, int> per_group;
      int vmax = 0;
      for (int id : pool) {
        s += big.item(id).size;
        vmax = std::max(vmax, ++per_group[big.item(id).group]);
      }
      Rational bound = 2 * s > s + vmax ? Rational(2 * s) : Rational(s + vmax);
      CHECK(static_cast<long long>(bins.size()) <= ceil_to_int(bound));
    }
  }
}

TEST_CASE("forced pipeline accepts the first guess on a clean fixture") {
  // all-distinct groups, two sizes; lower bound equals the optimum
  Instance inst = make_instance(
      {{"3/5", 0}, {"3/5", 1}, {"2/5", 2}, {"2/5", 3}});
  Budgets budgets;
  budgets.force_pipeline = true;
  auto [packing, rep] = run_aptas(inst, Rational(9, 20), budgets);
  CHECK(check_packing(inst, packing).feasible);
  REQUIRE_FALSE(rep.guess_log.empty());
  CHECK(rep.guess_log.back().find("accepted") != std::string::npos);
  CHECK(rep.core_bins + rep.extra_bins.total() == rep.total_bins);
}

TEST_CASE("forced pipeline output stays within the exact optimum plus extras") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    Instance inst = random_instance(rng, 8);
    int opt = solve_bruteforce(inst).opt;
    Budgets budgets;
    budgets.force_pipeline = true;
    budgets.enum_budget = 4;
    for (Rational eps : {Rational(3, 10), Rational(9, 20)}) {
      auto [packing, rep] = run_aptas(inst, eps, budgets);
      CHECK(check_packing(inst, packing).feasible);
      CHECK(rep.total_bins <= opt + rep.extra_bins.total());
      CHECK(rep.total_bins <= balanced_coloring(inst).total_bins());
      CHECK(rep.core_bins + rep.extra_bins.total() == rep.total_bins);
    }
  }
}

TEST_CASE("default budgets on tiny instances: exact accounting") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = random_instance(rng, 9);
    int opt = solve_bruteforce(inst).opt;
    auto [packing, rep] = run_aptas(inst, Rational(9, 20));
    CHECK(check_packing(inst, packing).feasible);
    CHECK(rep.total_bins <= opt + rep.extra_bins.total());
    CHECK(rep.core_bins + rep.extra_bins.total() == rep.total_bins);
  }
}

TEST_CASE("determinism: identical runs produce identical reports and packings") {
  std::mt19937_64 rng(8);
  Instance inst = random_instance(rng, 14);
  Budgets budgets;
  budgets.force_pipeline = true;
  auto [p1, r1] = run_aptas(inst, Rational(2, 5), budgets);
  auto [p2, r2] = run_aptas(inst, Rational(2, 5), budgets);
  CHECK(p1.bins == p2.bins);
  CHECK(p1.core_bins == p2.core_bins);
  CHECK(scheme_report_to_json(r1) == scheme_report_to_json(r2));
}

TEST_CASE("guess log records rejected guesses under a forced pipeline") {
  // Swapping rejection fixture wired through the loop: a small-group pair of
  // equal rounded size with no partner (see patterns tests) cannot occur
  // after shifting at desk scale, so exercise the logging path instead on a
  // guess below the size bound, which find_k rejects.
  Instance inst = make_instance({{"3/5", 0}, {"3/5", 1}, {"3/5", 2}});
  Budgets budgets;
  budgets.force_pipeline = true;
  auto [packing, rep] = run_aptas(inst, Rational(9, 20), budgets);
  CHECK(check_packing(inst, packing).feasible);
  for (const std::string& line : rep.guess_log) CHECK(line.find("guess") == 0);
}

TEST_CASE("distinct rounded sizes stay under the shifting-count bound") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 12; ++trial) {
    Instance inst = random_instance(rng, 20);
    Budgets budgets;
    budgets.force_pipeline = true;
    for (Rational eps : {Rational(1, 3), Rational(9, 20)}) {
      auto [packing, rep] = run_aptas(inst, eps, budgets);
      if (rep.k == 0) continue;  // fallback report
      Rational bound = 2 / rational_pow(eps, static_cast<unsigned>(rep.k + 3)) +
                       2 / rational_pow(eps, static_cast<unsigned>(5 * rep.k + 9));
      CHECK(Rational(rep.distinct_rounded_sizes) <= bound);
    }
  }
}

TEST_CASE("scheme report json is stable and carries the counters") {
  Instance inst = make_instance({{"1/2", 0}, {"1/4", 1}, {"1/4", 2}});
  auto [packing, rep] = run_aptas(inst, Rational(3, 10));
  std::string j = scheme_report_to_json(rep);
  CHECK(j.find("\"total_bins\"") != std::string::npos);
  CHECK(j.find("timings_ms") == std::string::npos);
  std::string jt = scheme_report_to_json(rep, true);
  CHECK(jt.find("timings_ms") != std::string::npos);
}
