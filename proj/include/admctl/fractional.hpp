#pragma once

#include <functional>
#include <map>
#include <vector>

#include "admctl/exact_compare.hpp"
#include "admctl/instance.hpp"
#include "admctl/trace.hpp"

namespace admctl {

enum class AlphaMode { OracleAlpha, Doubling };
enum class CostClass { BigAccept, SmallReject, InRange };
enum class DoubleResult { Unchanged, Doubled };

struct FractionalConfig {
  AlphaMode mode = AlphaMode::Doubling;
  // OracleAlpha: the injected optimum value. Ignored while doubling.
  Rat alpha = 0;
  // Period budget: double the guess once the period cost exceeds
  // doubling_factor * alpha * max(1, log2(2 g c)).
  Rat doubling_factor = 8;
};

enum class FracStatus {
  Untracked,      // doubling mode before the first forced rejection
  InWeights,      // participates in the weight system, weight < 1
  FullyRejected,  // weight reached 1; irrevocable
  AcceptedBig,    // accepted permanently, capacities adjusted
  RejectedSmall,  // rejected immediately on classification
};

// What one arrival did, for layers stacked on top (randomized rounding).
struct ArrivalReport {
  std::vector<std::pair<int, Rat>> weight_deltas;  // request id -> increase, ascending id
  std::vector<int> became_small;  // reclassified small at a doubling (reject mirrors)
  std::vector<int> became_big;
  int doublings = 0;
};

// The online fractional admission algorithm: classify each arriving request
// by cost against the current optimum guess, keep the in-range requests in a
// per-edge weight system, and raise weights multiplicatively until every
// over-subscribed edge carries enough rejection mass. Costs stay in their
// original scale; normalization is virtual via the tracked minimum
// in-range cost and the spread g.
class FractionalState {
 public:
  FractionalState(const NetworkInstance& net, FractionalConfig config,
                  DecisionTrace* trace = nullptr);

  CostClass classify_request(const Request& request) const;  // requires a known guess
  void process_request(const Request& request);

  // One weight augmentation on `edge`; returns the fractional cost increase.
  // Caller must ensure the edge is unsatisfied.
  Rat weight_augment(int edge);

  DoubleResult maybe_double_alpha();

  // sum of min{weight,1}*cost over the current period, plus immediate
  // rejections, plus the cost sunk at doublings.
  Rat fractional_cost() const;
  Rat period_cost() const;

  bool alpha_known() const { return alpha_set_; }
  const Rat& alpha() const { return alpha_; }
  long augment_count() const { return augment_count_; }
  long period_augment_count() const { return period_augments_; }
  const Rat& sunk_cost() const { return sunk_; }
  int period() const { return period_; }

  // g: realized max/min cost ratio of this period's weight-system requests.
  Rat cost_spread() const;
  bool normalizer_known() const { return norm_set_; }
  const Rat& min_inrange_cost() const;

  long excess(int edge) const;  // |alive| - effective capacity
  bool satisfied(int edge) const;
  bool feasible() const;
  long inrange_count(int edge) const;

  int request_count() const { return static_cast<int>(slots_.size()); }
  FracStatus status_of(int request_id) const;
  const Rat& weight_of(int request_id) const;
  // ids of in-range requests (weight system + fully rejected) through an edge
  std::vector<int> inrange_ids(int edge) const;

  const ArrivalReport& last_arrival() const { return report_; }

  // Requests of the current period's weight system together with the current
  // effective capacities: the instance whose fractional optimum witnesses
  // the augmentation-count bound.
  NetworkProblem weight_subinstance() const;

  // Augmentation potential against optimal fractional weights (by request
  // id) for the current weight subinstance:
  //   product over in-range requests of max{weight, 1/(gc)}^(f*_i * p_i/p_min).
  PowerProduct proof_potential(const std::map<int, Rat>& opt_weights) const;

  // Observation hook invoked after every augmentation with (delta, p_min).
  std::function<void(const Rat&, const Rat&)> augment_observer;

 private:
  struct Slot {
    Request req;
    FracStatus status = FracStatus::Untracked;
    Rat weight = 0;
    int period_entered = -1;
  };

  void establish_alpha(const Request& trigger);
  void classify_and_admit(int slot_index);
  void enter_weights(int slot_index);
  void restore_feasibility();
  void note_delta(int slot_index, const Rat& delta);
  void check_invariants() const;

  NetworkInstance net_;
  FractionalConfig cfg_;
  DecisionTrace* trace_;

  std::vector<Slot> slots_;
  std::map<int, int> index_;              // request id -> slot
  std::vector<std::vector<int>> member_;  // edge -> in-range slot indices (incl. fully rejected)
  std::vector<long> eff_cap_;

  bool alpha_set_ = false;
  Rat alpha_ = 0;
  int period_ = 0;
  Rat sunk_ = 0;
  Rat period_small_ = 0;
  long augment_count_ = 0;
  long period_augments_ = 0;

  bool norm_set_ = false;
  Rat min_cost_ = 0;  // current-period weight-system cost extremes
  Rat max_cost_ = 0;

  ArrivalReport report_;
  std::map<int, Rat> arrival_delta_;
};

}  // namespace admctl
