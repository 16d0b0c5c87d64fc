#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "admctl/bicriteria.hpp"
#include "admctl/fractional.hpp"
#include "admctl/generators.hpp"
#include "admctl/oracle.hpp"
#include "admctl/randomized.hpp"
#include "admctl/reduction.hpp"

namespace admctl {

// ---------------------------------------------------------------------------
// Single-instance drivers with the bound checks attached to each algorithm.

struct FractionalRunResult {
  Rat cost = 0;                 // final fractional online cost
  long augmentations = 0;       // total
  long period_augmentations = 0;
  std::optional<Rat> alpha_oracle;  // fractional optimum of the whole instance
  std::optional<Rat> count_bound_alpha;  // normalized optimum of the final weight subinstance
  Rat log_argument = 2;             // 2*g*c of the final period
  bool aug_bound_ok = true;     // period augmentations <= count_bound_alpha * LOG2(2gc)
  bool monotone_weights = true; // within each period
  bool feasible_after_each = true;
  DecisionTrace trace;
};

FractionalRunResult run_fractional(const NetworkProblem& problem, FractionalConfig config,
                                   bool with_oracle, int budget = kDefaultOracleBudget);

struct RandomizedRunResult {
  TrialSummary summary;
  Rat c_frac = 0;
  long excess_q = 0;
  double mean = 0;   // mean rejected cost (weighted) or count (unweighted)
  double bound = 0;  // rejection bound including the 3*stderr allowance
  bool bound_ok = true;
  bool all_feasible = true;
  long prune_rounds = 0;
};

RandomizedRunResult run_randomized(const NetworkProblem& problem, Variant variant,
                                   FractionalConfig config, uint64_t seed, int trials);

struct BicriteriaRunResult {
  std::vector<ChosenSet> cover;
  long augmentations = 0;
  long rounds_total = 0;
  bool coverage_ok = true;     // cover_j >= (1-eps) k_j after every demand
  bool cardinality_ok = true;  // |C| <= ceil(2 log2 n) * A + (A+1)/2
  std::optional<Rat> opt_cost;
  std::optional<long> aug_bound;  // ceil((2 alpha / eps) log2(3m))
  bool aug_bound_ok = true;
  DecisionTrace trace;
};

BicriteriaRunResult run_bicriteria(const SetCoverProblem& problem, const Rat& epsilon,
                                   bool with_oracle, int budget = kDefaultOracleBudget,
                                   std::vector<IterationRecord>* iterations = nullptr);

struct ReductionRunResult {
  ExtractedCover extracted;
  bool demands_feasible = true;
  bool valid = false;
  Rat cover_cost = 0;
  Rat rejected_phase1_cost = 0;
  bool cost_equal = false;
  std::optional<Rat> opt_cost;          // multicover optimum
  std::optional<Rat> reduced_opt_cost;  // integral admission optimum of the reduction
  bool opt_equal = true;
  DecisionTrace trace;
};

ReductionRunResult run_reduction(const SetCoverProblem& problem, const std::string& algorithm,
                                 FractionalConfig config, uint64_t seed, bool with_oracle,
                                 int budget = kDefaultOracleBudget);

// ---------------------------------------------------------------------------
// Batch experiments: generate instances, run, check bounds, emit rows.

struct ExperimentConfig {
  std::string algorithm = "fractional";  // fractional | randomized-weighted |
                                         // randomized-unweighted | bicriteria | reduction
  int instances = 10;
  uint64_t seed = 1;
  int trials = 100;
  Rat epsilon = Rat(1, 2);
  AlphaMode alpha_mode = AlphaMode::Doubling;
  bool with_oracle = true;
  int oracle_budget = kDefaultOracleBudget;
  bool timings = false;

  NetworkGenParams net_gen;
  SetCoverGenParams sc_gen;
};

struct ReportRow {
  std::string instance_id;
  std::string algorithm;
  std::string online_cost;
  std::string oracle_cost;     // empty when the oracle was skipped
  std::string ratio;           // empty when unavailable
  std::string bound;
  std::string bound_satisfied; // "true" / "false" / "" when skipped
  long runtime_ms = 0;
};

struct ExperimentOutput {
  std::vector<ReportRow> rows;
  bool hard_violation = false;  // feasibility/monotonicity/potential failures
};

ExperimentOutput run_experiment(const ExperimentConfig& config);

std::string rows_to_csv(const std::vector<ReportRow>& rows, bool timings);
std::string rows_to_json(const std::vector<ReportRow>& rows, bool timings);

// Formats a double deterministically for reports.
std::string format_double(double value);

}  // namespace admctl
