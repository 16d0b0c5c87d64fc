#pragma once

#include <vector>

#include "admctl/exact_compare.hpp"
#include "admctl/instance.hpp"
#include "admctl/trace.hpp"

namespace admctl {

enum class Provenance { HeavyPromotion, PotentialSelection };

struct ChosenSet {
  int set_id;
  Provenance provenance;
};

// One weight augmentation's candidate increases for the demanded element.
struct SelectionRound {
  int element = -1;
  long demand_count = 0;                         // k at augmentation time
  std::vector<std::pair<int, Rat>> deltas;       // set id -> weight increase
  Rat delta_total = 0;                           // sum over candidates, <= 1/2
};

// Everything the cross-validation oracle needs to replay one augmentation.
struct IterationRecord {
  int element;
  long demand_count;
  SelectionRound round;
  std::vector<Rat> weights_after_bump;    // per set, post step (a)
  std::vector<int> covers_after_promote;  // per element, post step (b)
  std::vector<int> candidates;            // demanded element's sets still outside the cover
  std::vector<int> promoted;
  std::vector<int> selected;
  PowerSum phi_before;  // before step (a)
  PowerSum phi_after;   // after step (c)
};

// Deterministic bicriteria multicover: multiplicative set weights, promotion
// of sets reaching weight 1, and a conditional-expectation selection of at
// most ceil(2 log2 n) extra sets per augmentation that never lets the
// coverage potential  sum_j n^(2(w_j - cover_j))  grow across an iteration.
// Unit set costs only.
class BicriteriaState {
 public:
  BicriteriaState(const SetCoverInstance& sc, Rat epsilon, DecisionTrace* trace = nullptr);

  // Feeds one demand; returns the sets added while restoring the coverage
  // target cover_j >= (1-epsilon) * k_j. Throws InfeasibleDemand when the
  // target exceeds the number of sets containing the element.
  std::vector<ChosenSet> process_element(int element);

  SelectionRound augment_weights(int element);
  std::vector<int> promote_heavy();
  std::vector<int> derandomized_select(const SelectionRound& round);

  PowerSum phi() const;
  // Exact expectation of phi after `remaining` random selection rounds with
  // per-round set probabilities 2*delta_S, given the current cover extended
  // by `extra_sets`; re-chosen sets would be no-ops, covered by exclusion.
  PowerSum expected_phi(const SelectionRound& round, long remaining,
                        const std::vector<int>& extra_sets = {}) const;

  // Product of the optimal cover's weights: the augmentation-count potential.
  Rat opt_weight_product(const std::vector<int>& opt_cover) const;

  long augmentations() const { return augmentations_; }
  long rounds_total() const { return rounds_total_; }
  const std::vector<ChosenSet>& cover() const { return cover_order_; }
  long cover_size() const { return static_cast<long>(cover_order_.size()); }
  const std::vector<int>& cover_counts() const { return cover_count_; }
  const std::vector<long>& demand_counts() const { return demand_count_; }
  const Rat& set_weight(int set_id) const { return weight_.at(set_id); }
  Rat element_weight(int element) const;
  bool covered_enough(int element) const;
  const std::vector<IterationRecord>& iterations() const { return iterations_; }
  const Rat& epsilon() const { return epsilon_; }

 private:
  void add_to_cover(int set_id, Provenance provenance);

  const SetCoverInstance sc_;
  Rat epsilon_;
  DecisionTrace* trace_;
  long rounds_total_;

  std::vector<Rat> weight_;
  std::vector<char> in_cover_;
  std::vector<int> cover_count_;    // per element
  std::vector<long> demand_count_;  // per element
  std::vector<ChosenSet> cover_order_;
  long augmentations_ = 0;
  std::vector<IterationRecord> iterations_;
};

}  // namespace admctl
