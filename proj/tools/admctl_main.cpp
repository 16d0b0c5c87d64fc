#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "admctl/experiment.hpp"

namespace {

using namespace admctl;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

struct GlobalOpts {
  uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

FractionalConfig make_frac_config(const std::string& alpha_mode, const std::string& alpha) {
  FractionalConfig config;
  if (alpha_mode == "oracle")
    config.mode = AlphaMode::OracleAlpha;
  else if (alpha_mode == "doubling")
    config.mode = AlphaMode::Doubling;
  else
    throw CLI::ValidationError("--alpha-mode", "expected oracle or doubling");
  if (!alpha.empty()) {
    if (config.mode != AlphaMode::OracleAlpha)
      throw CLI::ValidationError("--alpha", "only meaningful with --alpha-mode oracle");
    config.alpha = rat_parse(alpha);
  }
  return config;
}

std::string json_int_array(const std::vector<int>& values) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out << ",";
    out << values[i];
  }
  out << "]";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online admission control and set multicover toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts global;
  app.add_option("--seed", global.seed, "base random seed");
  app.add_option("--format", global.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", global.out, "output file (default stdout)");

  // ---- generators ----
  NetworkGenParams net_gen;
  long hotspot_excess = -1;
  int hotspot_edge = 0;
  auto* gen_net = app.add_subcommand("gen-network", "generate a network instance");
  gen_net->add_option("--edges", net_gen.edges);
  gen_net->add_option("--cap-max", net_gen.cap_max);
  gen_net->add_option("--requests", net_gen.requests);
  gen_net->add_option("--cost-min", net_gen.cost_min);
  gen_net->add_option("--cost-max", net_gen.cost_max);
  gen_net->add_option("--max-request-edges", net_gen.max_request_edges);
  gen_net->add_option("--hotspot-excess", hotspot_excess,
                      "force this much excess on one edge (-1: plain generator)");
  gen_net->add_option("--hotspot-edge", hotspot_edge);

  SetCoverGenParams sc_gen;
  bool any_demands = false;
  auto* gen_sc = app.add_subcommand("gen-setcover", "generate a set-cover instance");
  gen_sc->add_option("--elements", sc_gen.elements);
  gen_sc->add_option("--sets", sc_gen.sets);
  gen_sc->add_option("--max-set-size", sc_gen.max_set_size);
  gen_sc->add_option("--demands", sc_gen.demands);
  gen_sc->add_option("--cost-min", sc_gen.cost_min);
  gen_sc->add_option("--cost-max", sc_gen.cost_max);
  gen_sc->add_flag("--any-demands", any_demands, "allow demands beyond coverable counts");

  // ---- algorithm runners ----
  std::string instance_path;
  std::string alpha_mode = "doubling";
  std::string alpha_text;
  bool no_oracle = false;
  int budget = kDefaultOracleBudget;

  auto* run_frac = app.add_subcommand("run-fractional", "run the fractional algorithm");
  run_frac->add_option("instance", instance_path)->required();
  run_frac->add_option("--alpha-mode", alpha_mode)->check(CLI::IsMember({"oracle", "doubling"}));
  run_frac->add_option("--alpha", alpha_text, "inject the optimum value (oracle mode)");
  run_frac->add_flag("--no-oracle", no_oracle);
  run_frac->add_option("--budget", budget);

  std::string variant_text = "weighted";
  int trials = 1;
  auto* run_rand = app.add_subcommand("run-randomized", "run the randomized algorithm");
  run_rand->add_option("instance", instance_path)->required();
  run_rand->add_option("--variant", variant_text)->check(CLI::IsMember({"weighted", "unweighted"}));
  run_rand->add_option("--trials", trials);
  run_rand->add_option("--alpha-mode", alpha_mode)->check(CLI::IsMember({"oracle", "doubling"}));
  run_rand->add_option("--alpha", alpha_text);

  std::string epsilon_text = "1/2";
  auto* run_bi = app.add_subcommand("run-bicriteria", "run the bicriteria multicover algorithm");
  run_bi->add_option("instance", instance_path)->required();
  run_bi->add_option("--epsilon", epsilon_text);
  run_bi->add_flag("--no-oracle", no_oracle);
  run_bi->add_option("--budget", budget);

  std::string reduction_algorithm = "randomized";
  auto* run_red = app.add_subcommand("run-reduction", "drive admission control through the reduction");
  run_red->add_option("instance", instance_path)->required();
  run_red->add_option("--algorithm", reduction_algorithm)
      ->check(CLI::IsMember({"fractional", "randomized"}));
  run_red->add_option("--alpha-mode", alpha_mode)->check(CLI::IsMember({"oracle", "doubling"}));
  run_red->add_option("--alpha", alpha_text);
  run_red->add_flag("--no-oracle", no_oracle);
  run_red->add_option("--budget", budget);

  std::string oracle_kind = "integral";
  auto* oracle_cmd = app.add_subcommand("oracle", "exact offline optimum");
  oracle_cmd->add_option("instance", instance_path)->required();
  oracle_cmd->add_option("--kind", oracle_kind)
      ->check(CLI::IsMember({"integral", "fractional", "multicover"}));
  oracle_cmd->add_option("--budget", budget);

  ExperimentConfig exp;
  bool exp_no_oracle = false;
  auto* report_cmd = app.add_subcommand("report", "generate instances, run, and check bounds");
  report_cmd->add_option("--algorithm", exp.algorithm)
      ->check(CLI::IsMember({"fractional", "randomized-weighted", "randomized-unweighted",
                             "bicriteria", "reduction"}));
  report_cmd->add_option("--instances", exp.instances);
  report_cmd->add_option("--trials", exp.trials);
  report_cmd->add_option("--epsilon", epsilon_text);
  report_cmd->add_option("--alpha-mode", alpha_mode)->check(CLI::IsMember({"oracle", "doubling"}));
  report_cmd->add_flag("--no-oracle", exp_no_oracle);
  report_cmd->add_option("--budget", exp.oracle_budget);
  report_cmd->add_flag("--timings", exp.timings, "include runtime_ms (breaks byte determinism)");
  report_cmd->add_option("--edges", exp.net_gen.edges);
  report_cmd->add_option("--cap-max", exp.net_gen.cap_max);
  report_cmd->add_option("--requests", exp.net_gen.requests);
  report_cmd->add_option("--cost-min", exp.net_gen.cost_min);
  report_cmd->add_option("--cost-max", exp.net_gen.cost_max);
  report_cmd->add_option("--elements", exp.sc_gen.elements);
  report_cmd->add_option("--sets", exp.sc_gen.sets);
  report_cmd->add_option("--demands", exp.sc_gen.demands);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_net->parsed()) {
      net_gen.seed = global.seed;
      NetworkProblem problem;
      if (hotspot_excess >= 0) {
        HotspotGenParams hot{net_gen, hotspot_excess, hotspot_edge};
        problem = gen_hotspot(hot);
      } else {
        problem = gen_network(net_gen);
      }
      emit(global.out, serialize_network(problem) + "\n");
    } else if (gen_sc->parsed()) {
      sc_gen.seed = global.seed;
      sc_gen.feasible_demands = !any_demands;
      emit(global.out, serialize_setcover(gen_setcover(sc_gen)) + "\n");
    } else if (run_frac->parsed()) {
      NetworkProblem problem = load_network(slurp(instance_path));
      FractionalConfig config = make_frac_config(alpha_mode, alpha_text);
      bool with_oracle = !no_oracle && alpha_text.empty();
      FractionalRunResult r = run_fractional(problem, config, with_oracle, budget);
      std::ostringstream out;
      out << r.trace.to_jsonl();
      out << "{\"cost\":\"" << rat_str(r.cost) << "\",\"augmentations\":" << r.augmentations
          << ",\"alpha\":\"" << (r.alpha_oracle ? rat_str(*r.alpha_oracle) : "")
          << "\",\"aug_bound_ok\":" << (r.aug_bound_ok ? "true" : "false")
          << ",\"feasible\":" << (r.feasible_after_each ? "true" : "false")
          << ",\"monotone\":" << (r.monotone_weights ? "true" : "false") << "}\n";
      emit(global.out, out.str());
    } else if (run_rand->parsed()) {
      NetworkProblem problem = load_network(slurp(instance_path));
      Variant variant = variant_text == "weighted" ? Variant::Weighted : Variant::Unweighted;
      FractionalConfig config = make_frac_config(alpha_mode, alpha_text);
      RoundingParams params = RoundingParams::make(variant, problem.net);
      RandomizedRun run(problem.net, problem.requests, config, params);
      std::ostringstream out;
      for (int t = 0; t < trials; ++t) {
        uint64_t seed = global.seed + static_cast<uint64_t>(t);
        TrialResult trial = run.run_trial(seed, /*want_trace=*/true);
        out << "{\"trial\":" << t << ",\"seed\":" << seed << "}\n";
        out << trial.trace.to_jsonl();
      }
      RandomizedRunResult summary = run_randomized(problem, variant, config, global.seed, trials);
      out << "{\"mean\":" << format_double(summary.mean)
          << ",\"max\":\"" << rat_str(summary.summary.max_cost) << "\""
          << ",\"bound\":" << format_double(summary.bound)
          << ",\"feasible\":" << (summary.all_feasible ? "true" : "false")
          << ",\"c_frac\":\"" << rat_str(summary.c_frac) << "\"}\n";
      emit(global.out, out.str());
    } else if (run_bi->parsed()) {
      SetCoverProblem problem = load_setcover(slurp(instance_path));
      std::vector<IterationRecord> iterations;
      BicriteriaRunResult r = run_bicriteria(problem, rat_parse(epsilon_text), !no_oracle,
                                             budget, &iterations);
      std::ostringstream out;
      out << r.trace.to_jsonl();
      std::vector<int> chosen;
      for (const ChosenSet& c : r.cover) chosen.push_back(c.set_id);
      out << "{\"chosen_sets\":" << json_int_array(chosen) << ",\"per_element_coverage\":[";
      // recompute final coverage counts for the report
      {
        std::vector<int> counts(problem.sc.element_count, 0);
        std::vector<char> in_cover(problem.sc.set_count(), 0);
        for (const ChosenSet& c : r.cover)
          if (!in_cover[c.set_id]) {
            in_cover[c.set_id] = 1;
            for (int j : problem.sc.sets[c.set_id]) ++counts[j];
          }
        for (int j = 0; j < problem.sc.element_count; ++j) {
          if (j) out << ",";
          out << counts[j];
        }
      }
      out << "],\"augmentations\":" << r.augmentations << ",\"phi_trace\":[";
      for (size_t i = 0; i < iterations.size(); ++i) {
        if (i) out << ",";
        out << "[" << format_double(iterations[i].phi_before.to_double()) << ","
            << format_double(iterations[i].phi_after.to_double()) << "]";
      }
      out << "]";
      if (r.opt_cost) out << ",\"opt_cost\":\"" << rat_str(*r.opt_cost) << "\"";
      out << ",\"coverage_ok\":" << (r.coverage_ok ? "true" : "false") << "}\n";
      emit(global.out, out.str());
    } else if (run_red->parsed()) {
      SetCoverProblem problem = load_setcover(slurp(instance_path));
      FractionalConfig config = make_frac_config(alpha_mode, alpha_text);
      ReductionRunResult r =
          run_reduction(problem, reduction_algorithm, config, global.seed, !no_oracle, budget);
      std::ostringstream out;
      out << "{\"cover\":" << json_int_array(r.extracted.chosen_sets)
          << ",\"valid\":" << (r.valid ? "true" : "false") << ",\"cover_cost\":\""
          << rat_str(r.cover_cost) << "\"";
      if (r.opt_cost) {
        out << ",\"opt_cost\":\"" << rat_str(*r.opt_cost) << "\"";
        if (*r.opt_cost != 0)
          out << ",\"ratio\":" << format_double(rat_double(r.cover_cost) /
                                                rat_double(*r.opt_cost));
      }
      if (!r.extracted.phase2_rejections.empty())
        out << ",\"phase2_rejections\":" << json_int_array(r.extracted.phase2_rejections);
      out << "}\n";
      emit(global.out, out.str());
    } else if (oracle_cmd->parsed()) {
      std::string text = slurp(instance_path);
      std::ostringstream out;
      if (oracle_kind == "multicover") {
        SetCoverProblem problem = load_setcover(text);
        OracleSolution opt = opt_multicover(problem.sc, problem.demands, budget);
        out << "{\"cost\":\"" << rat_str(opt.cost) << "\",\"solution\":" << json_int_array(opt.ids)
            << "}\n";
      } else {
        NetworkProblem problem = load_network(text);
        OracleSolution opt = oracle_kind == "integral"
                                 ? integral_opt_admission(problem.net, problem.requests, budget)
                                 : fractional_opt_admission(problem.net, problem.requests, budget);
        out << "{\"cost\":\"" << rat_str(opt.cost) << "\",\"solution\":" << json_int_array(opt.ids);
        if (oracle_kind == "fractional") {
          out << ",\"weights\":{";
          bool first = true;
          for (const auto& [id, w] : opt.frac_weights) {
            if (!first) out << ",";
            first = false;
            out << "\"" << id << "\":\"" << rat_str(w) << "\"";
          }
          out << "}";
        }
        out << "}\n";
      }
      emit(global.out, out.str());
    } else if (report_cmd->parsed()) {
      exp.seed = global.seed;
      exp.epsilon = rat_parse(epsilon_text);
      exp.with_oracle = !exp_no_oracle;
      exp.alpha_mode = alpha_mode == "oracle" ? AlphaMode::OracleAlpha : AlphaMode::Doubling;
      ExperimentOutput output = run_experiment(exp);
      emit(global.out, global.format == "csv" ? rows_to_csv(output.rows, exp.timings)
                                              : rows_to_json(output.rows, exp.timings));
      return output.hard_violation ? 2 : 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
