// gbp: solver and tooling for bin packing with clique-graph conflicts.
// Subcommands: gen | solve | check | bench | gap.
// Exit codes: 0 ok, 1 infeasible packing / contract breach, 2 usage or parse
// error.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "gbp/bench.hpp"
#include "gbp/exact.hpp"
#include "gbp/heuristics.hpp"
#include "gbp/io.hpp"
#include "gbp/scheme.hpp"

namespace {

gbp::Instance load_instance(const std::string& path) {
  return gbp::instance_from_json(gbp::read_file(path));
}

int cmd_gen(const gbp::GenSpec& spec, const std::string& out) {
  gbp::Instance inst = gbp::generate(spec);
  std::string text = gbp::instance_to_json(inst);
  if (out.empty())
    std::cout << text;
  else
    gbp::write_file(out, text);
  std::cerr << "generated " << inst.name << ": N=" << inst.n_items()
            << " groups=" << inst.n_groups << "\n";
  return 0;
}

struct SolveOptions {
  std::string input, output, report_path;
  std::string algorithm = "aptas";
  std::string epsilon = "0.3";
  std::string order = "decreasing";
  std::uint64_t seed = 0;
  gbp::Budgets budgets;
  int alpha_override = -1;
  int max_items = 20;
  long long node_budget = 50'000'000;
  long long time_budget_ms = 60'000;
  bool timings = false;
};

int cmd_solve(const SolveOptions& opt) {
  gbp::Instance inst = load_instance(opt.input);
  gbp::Packing packing;
  std::string report_json;
  if (opt.algorithm == "aptas") {
    gbp::Budgets budgets = opt.budgets;
    if (opt.alpha_override >= 0) budgets.alpha_override = opt.alpha_override;
    auto [p, rep] = gbp::run_aptas(inst, gbp::parse_rational(opt.epsilon), budgets);
    packing = std::move(p);
    report_json = gbp::scheme_report_to_json(rep, opt.timings);
  } else if (opt.algorithm == "exact") {
    gbp::SolveLimits limits;
    limits.max_items = opt.max_items;
    limits.node_budget = opt.node_budget;
    limits.time_budget = std::chrono::milliseconds(opt.time_budget_ms);
    gbp::ExactResult r = gbp::solve_exact(inst, limits);
    packing = std::move(r.packing);
    std::cerr << "opt=" << r.opt << (r.proven_optimal ? " (proven)" : " (budget hit)")
              << " nodes=" << r.nodes_explored << "\n";
  } else if (opt.algorithm == "bruteforce") {
    packing = gbp::solve_bruteforce(inst).packing;
  } else if (opt.algorithm == "balanced") {
    packing = gbp::balanced_coloring(inst);
  } else if (opt.algorithm == "firstfit") {
    gbp::ItemOrder order = opt.order == "input"    ? gbp::ItemOrder::Input
                           : opt.order == "random" ? gbp::ItemOrder::Random
                                                   : gbp::ItemOrder::Decreasing;
    packing = gbp::first_fit_conflicts(inst, order, opt.seed);
  } else {
    std::cerr << "unknown algorithm: " << opt.algorithm << "\n";
    return 2;
  }

  gbp::FeasibilityReport feas = gbp::check_packing(inst, packing);
  if (!feas.feasible) {
    std::cerr << "contract breach: produced packing is infeasible\n"
              << gbp::report_to_json(feas);
    return 1;
  }
  std::string text = gbp::packing_to_json(packing);
  if (opt.output.empty())
    std::cout << text;
  else
    gbp::write_file(opt.output, text);
  if (!opt.report_path.empty() && !report_json.empty())
    gbp::write_file(opt.report_path, report_json);
  std::cerr << opt.algorithm << ": " << packing.total_bins() << " bins (lower bound "
            << gbp::lower_bound(inst) << ")\n";
  return 0;
}

int cmd_check(const std::string& instance_path, const std::string& packing_path) {
  gbp::Instance inst = load_instance(instance_path);
  gbp::Packing p = gbp::packing_from_json(gbp::read_file(packing_path));
  gbp::FeasibilityReport rep = gbp::check_packing(inst, p);
  std::cout << gbp::report_to_json(rep);
  return rep.feasible ? 0 : 1;
}

int cmd_bench(const std::string& config_path, const std::string& json_out,
              const std::string& csv_out) {
  gbp::BenchConfig cfg = gbp::bench_config_from_json(gbp::read_file(config_path));
  std::optional<std::uint64_t> seed_override;
  if (const char* env = std::getenv("GBP_SEED")) seed_override = std::stoull(env);
  gbp::BenchReport report = gbp::run_bench(cfg, seed_override);
  if (json_out.empty())
    std::cout << report.to_json();
  else
    gbp::write_file(json_out, report.to_json());
  if (!csv_out.empty()) gbp::write_file(csv_out, report.to_csv());
  std::cerr << "bench: " << report.rows.size() << " rows\n";
  return 0;
}

int cmd_gap(const std::string& epsilon, int nhat, const std::string& prefix) {
  gbp::GapDemo demo = gbp::demonstrate_gap(gbp::parse_rational(epsilon), nhat);
  auto check = [&](const gbp::Packing& p, const char* tag) {
    gbp::FeasibilityReport rep = gbp::check_packing(demo.instance, p);
    if (!rep.feasible) {
      std::cerr << "contract breach: " << tag << " packing infeasible\n";
      std::exit(1);
    }
  };
  check(demo.optimal, "optimal");
  check(demo.greedy, "greedy");
  if (!prefix.empty()) {
    gbp::write_file(prefix + "_instance.json", gbp::instance_to_json(demo.instance));
    gbp::write_file(prefix + "_optimal.json", gbp::packing_to_json(demo.optimal));
    gbp::write_file(prefix + "_greedy.json", gbp::packing_to_json(demo.greedy));
  }
  std::cout << "optimal bins: " << demo.optimal.total_bins() << "\n"
            << "greedy bins:  " << demo.greedy.total_bins() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group bin packing: solvers, generators, verification, benchmarks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_family = "uniform", gen_out, gen_name, gen_smin = "0.01", gen_smax = "0.5";
  std::string gen_eps = "1/5", gen_size = "1/4";
  gbp::GenSpec spec;
  gen->add_option("--family", gen_family, "uniform|clique_heavy|appendix_b|equal_groups");
  gen->add_option("-o,--output", gen_out, "output path (stdout when omitted)");
  gen->add_option("--name", gen_name, "instance name");
  gen->add_option("--n", spec.n_items, "item count");
  gen->add_option("--groups", spec.n_groups, "group count");
  gen->add_option("--smin", gen_smin, "minimum size (rational)");
  gen->add_option("--smax", gen_smax, "maximum size (rational)");
  gen->add_option("--seed", spec.seed, "random seed");
  gen->add_option("--epsilon", gen_eps, "appendix_b epsilon");
  gen->add_option("--nhat", spec.nhat, "appendix_b size parameter");
  gen->add_option("--m", spec.items_per_group, "equal_groups items per group");
  gen->add_option("--size", gen_size, "equal_groups item size");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  SolveOptions sopt;
  solve->add_option("-i,--input", sopt.input, "instance JSON")->required();
  solve->add_option("-a,--algorithm", sopt.algorithm,
                    "aptas|exact|bruteforce|balanced|firstfit");
  solve->add_option("-e,--epsilon", sopt.epsilon, "aptas accuracy (rational in (0,1/2))");
  solve->add_option("-o,--output", sopt.output, "packing output path");
  solve->add_option("--report", sopt.report_path, "aptas report JSON path");
  solve->add_option("--order", sopt.order, "firstfit order: input|decreasing|random");
  solve->add_option("--seed", sopt.seed, "firstfit random seed");
  solve->add_option("--pattern-budget", sopt.budgets.pattern_budget, "max patterns");
  solve->add_option("--assignment-budget", sopt.budgets.assignment_budget,
                    "max assignment search steps");
  solve->add_option("--enum-budget", sopt.budgets.enum_budget,
                    "max optimal-phase guesses");
  solve->add_flag("--force-pipeline", sopt.budgets.force_pipeline,
                  "skip the applicability threshold (testing)");
  solve->add_option("--alpha-override", sopt.alpha_override,
                    "override optimal-phase iteration count (testing)");
  solve->add_option("--max-items", sopt.max_items, "exact solver item cap");
  solve->add_option("--node-budget", sopt.node_budget, "exact solver node budget");
  solve->add_option("--time-budget-ms", sopt.time_budget_ms, "exact solver time budget");
  solve->add_flag("--timings", sopt.timings, "include wall times in the report JSON");

  // check
  auto* check = app.add_subcommand("check", "verify a packing against an instance");
  std::string check_inst, check_pack;
  check->add_option("-i,--instance", check_inst, "instance JSON")->required();
  check->add_option("-p,--packing", check_pack, "packing JSON")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark config");
  std::string bench_cfg, bench_json, bench_csv;
  bench->add_option("-c,--config", bench_cfg, "bench config JSON")->required();
  bench->add_option("-o,--output", bench_json, "report JSON path (stdout when omitted)");
  bench->add_option("--csv", bench_csv, "report CSV path (includes runtimes)");

  // gap
  auto* gap = app.add_subcommand("gap", "build the adversarial two-packings demonstration");
  std::string gap_eps = "1/5", gap_prefix;
  int gap_nhat = 10;
  gap->add_option("--epsilon", gap_eps, "epsilon (1/epsilon integral)");
  gap->add_option("--nhat", gap_nhat, "size parameter (epsilon*nhat integral)");
  gap->add_option("-o,--output-prefix", gap_prefix, "write instance/packings with this prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      spec.family = gbp::family_from_name(gen_family);
      spec.name = gen_name;
      spec.size_min = gbp::parse_rational(gen_smin);
      spec.size_max = gbp::parse_rational(gen_smax);
      spec.epsilon = gbp::parse_rational(gen_eps);
      spec.item_size = gbp::parse_rational(gen_size);
      return cmd_gen(spec, gen_out);
    }
    if (solve->parsed()) return cmd_solve(sopt);
    if (check->parsed()) return cmd_check(check_inst, check_pack);
    if (bench->parsed()) return cmd_bench(bench_cfg, bench_json, bench_csv);
    if (gap->parsed()) return cmd_gap(gap_eps, gap_nhat, gap_prefix);
  } catch (const gbp::ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const gbp::ValidationError& ex) {
    std::cerr << "invalid input: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
