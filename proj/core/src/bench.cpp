#include "gbp/bench.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gbp/exact.hpp"
#include "gbp/heuristics.hpp"

namespace gbp {

using nlohmann::json;

std::string AlgoSpec::label() const {
  if (algorithm == "firstfit")
    return order == "random" ? "firstfit_random_s" + std::to_string(seed)
                             : "firstfit_" + order;
  if (algorithm == "aptas") return "aptas_e" + format_rational(epsilon);
  return algorithm;
}

BenchConfig bench_config_from_json(const std::string& text) {
  BenchConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("bench config: ") + ex.what());
  }
  for (const auto& e : j.at("instances")) {
    GenSpec spec;
    spec.family = family_from_name(e.at("family").get<std::string>());
    spec.name = e.value("name", "");
    spec.seed = e.value("seed", 0ull);
    spec.n_items = e.value("n", 0);
    spec.n_groups = e.value("groups", 0);
    if (e.contains("smin")) spec.size_min = parse_rational(e["smin"].get<std::string>());
    if (e.contains("smax")) spec.size_max = parse_rational(e["smax"].get<std::string>());
    if (e.contains("epsilon")) spec.epsilon = parse_rational(e["epsilon"].get<std::string>());
    spec.nhat = e.value("nhat", 0);
    spec.items_per_group = e.value("m", 0);
    if (e.contains("size")) spec.item_size = parse_rational(e["size"].get<std::string>());
    cfg.instances.push_back(std::move(spec));
  }
  for (const auto& e : j.at("algorithms")) {
    AlgoSpec a;
    a.algorithm = e.at("algorithm").get<std::string>();
    a.order = e.value("order", "decreasing");
    a.seed = e.value("seed", 0ull);
    if (e.contains("epsilon")) a.epsilon = parse_rational(e["epsilon"].get<std::string>());
    a.max_items = e.value("max_items", 20);
    if (e.contains("pattern_budget")) a.budgets.pattern_budget = e["pattern_budget"].get<long long>();
    if (e.contains("assignment_budget"))
      a.budgets.assignment_budget = e["assignment_budget"].get<long long>();
    if (e.contains("enum_budget")) a.budgets.enum_budget = e["enum_budget"].get<long long>();
    if (e.contains("force_pipeline")) a.budgets.force_pipeline = e["force_pipeline"].get<bool>();
    cfg.algorithms.push_back(std::move(a));
  }
  return cfg;
}

BenchReport run_bench(const BenchConfig& config, std::optional<std::uint64_t> seed_override) {
  BenchReport report;
  std::vector<Instance> instances;
  for (GenSpec spec : config.instances) {
    if (seed_override) spec.seed = *seed_override;
    instances.push_back(generate(spec));
  }
  std::map<size_t, int> proven_opt;

  struct Pending {
    BenchRow row;
    size_t instance_idx;
  };
  std::vector<Pending> pending;
  for (size_t ii = 0; ii < instances.size(); ++ii) {
    const Instance& inst = instances[ii];
    for (const AlgoSpec& algo : config.algorithms) {
      BenchRow row;
      row.instance = inst.name;
      row.family = family_name(config.instances[ii].family);
      row.n_items = inst.n_items();
      row.n_groups = inst.n_groups;
      row.algorithm = algo.label();
      row.lower_bound = lower_bound(inst);

      auto t0 = std::chrono::steady_clock::now();
      Packing packing;
      if (algo.algorithm == "exact") {
        SolveLimits limits;
        limits.max_items = algo.max_items;
        if (inst.n_items() > limits.max_items) continue;  // skip oversized rows
        ExactResult r = solve_exact(inst, limits);
        packing = r.packing;
        if (r.proven_optimal) proven_opt[ii] = r.opt;
      } else if (algo.algorithm == "bruteforce") {
        if (inst.n_items() > 10) continue;
        ExactResult r = solve_bruteforce(inst);
        packing = r.packing;
        proven_opt.emplace(ii, r.opt);
      } else if (algo.algorithm == "balanced") {
        packing = balanced_coloring(inst);
      } else if (algo.algorithm == "firstfit") {
        ItemOrder order = algo.order == "input"    ? ItemOrder::Input
                          : algo.order == "random" ? ItemOrder::Random
                                                   : ItemOrder::Decreasing;
        packing = first_fit_conflicts(inst, order, algo.seed);
      } else if (algo.algorithm == "aptas") {
        packing = run_aptas(inst, algo.epsilon, algo.budgets).first;
      } else {
        throw ValidationError("unknown algorithm: " + algo.algorithm);
      }
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();

      FeasibilityReport feas = check_packing(inst, packing);
      if (!feas.feasible)
        throw std::runtime_error("contract breach: algorithm " + row.algorithm +
                                 " produced an infeasible packing on " + inst.name);
      row.bins = packing.total_bins();
      pending.push_back({std::move(row), ii});
    }
  }
  for (Pending& p : pending) {
    auto it = proven_opt.find(p.instance_idx);
    int denom = p.row.lower_bound;
    if (it != proven_opt.end()) {
      p.row.exact_opt = it->second;
      denom = std::max(denom, it->second);
    }
    p.row.ratio = denom > 0 ? format_rational(Rational(p.row.bins, denom))
                            : (p.row.bins == 0 ? "1" : "inf");
    report.rows.push_back(std::move(p.row));
  }
  return report;
}

std::string BenchReport::to_csv() const {
  std::ostringstream os;
  os << "instance,family,n_items,n_groups,algorithm,bins,lower_bound,exact_opt,ratio,"
        "runtime_ms\n";
  for (const BenchRow& r : rows) {
    os << r.instance << "," << r.family << "," << r.n_items << "," << r.n_groups << ","
       << r.algorithm << "," << r.bins << "," << r.lower_bound << ","
       << (r.exact_opt ? std::to_string(*r.exact_opt) : "") << "," << r.ratio << ","
       << r.runtime_ms << "\n";
  }
  return os.str();
}

std::string BenchReport::to_json() const {
  json j;
  j["rows"] = json::array();
  for (const BenchRow& r : rows) {
    json e = {{"instance", r.instance}, {"family", r.family},     {"n_items", r.n_items},
              {"n_groups", r.n_groups}, {"algorithm", r.algorithm}, {"bins", r.bins},
              {"lower_bound", r.lower_bound}, {"ratio", r.ratio}};
    if (r.exact_opt) e["exact_opt"] = *r.exact_opt;
    j["rows"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace gbp
