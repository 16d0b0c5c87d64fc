#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "admctl/fractional.hpp"

namespace admctl {

enum class Variant { Weighted, Unweighted };

struct RoundingParams {
  Variant variant = Variant::Weighted;
  Rat prob_factor;       // 12*L(mc) weighted, 4*L(m) unweighted
  Rat weight_threshold;  // exact reciprocal of prob_factor

  // L(x) is the smallest 32-fractional-bit dyadic rational >= max(1, log2 x):
  // a pinned exact-rational stand-in for the proofs' logarithm.
  static RoundingParams make(Variant variant, const NetworkInstance& net);
};

struct TrialResult {
  Rat rejected_cost = 0;
  long rejected_count = 0;
  bool feasible = true;
  DecisionTrace trace;
};

struct TrialSummary {
  std::vector<Rat> costs;
  std::vector<long> counts;
  Rat mean = 0;  // exact mean of rejected costs
  Rat max_cost = 0;
  double stddev = 0;        // sample standard deviation of costs
  double stderr_mean = 0;   // stddev / sqrt(trials)
  bool all_feasible = true;
};

// Randomized rounding on top of the fractional layer. The fractional
// evolution does not depend on the coin flips, so it runs once at
// construction; each seeded trial replays the recorded per-arrival script:
//
//   per arrival: bulk-prune wildly oversubscribed edges, mirror immediate
//   classifications, reject every request whose weight crossed the
//   threshold, flip one coin per weight increase, then admit the arrival
//   only if every edge still has room.
class RandomizedRun {
 public:
  RandomizedRun(const NetworkInstance& net, const std::vector<Request>& requests,
                FractionalConfig frac_config, RoundingParams params);

  TrialResult run_trial(uint64_t seed, bool want_trace = false) const;
  TrialSummary run_trials(const std::vector<uint64_t>& seeds) const;

  const FractionalState& fractional() const { return *frac_; }
  Rat fractional_cost() const { return frac_->fractional_cost(); }
  const RoundingParams& params() const { return params_; }
  long prune_rounds() const { return prune_rounds_; }

 private:
  struct Round {
    int req_id;
    Rat cost;
    CostClass cls;
    bool pruned = false;
    std::vector<int> prune_victims;
    std::vector<int> forced_small;  // older requests reclassified small this arrival
    std::vector<int> threshold_hits;
    std::vector<std::pair<int, Rat>> coin_probs;  // ascending request id
    std::vector<int> edges;
  };

  NetworkInstance net_;
  RoundingParams params_;
  std::vector<Round> script_;
  std::vector<Rat> cost_of_;               // by request id
  std::vector<std::vector<int>> edges_of_; // by request id
  std::unique_ptr<FractionalState> frac_;
  long prune_rounds_ = 0;
};

}  // namespace admctl
