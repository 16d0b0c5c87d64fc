#include "admctl/bicriteria.hpp"

#include <algorithm>
#include <stdexcept>

namespace admctl {

BicriteriaState::BicriteriaState(const SetCoverInstance& sc, Rat epsilon, DecisionTrace* trace)
    : sc_(sc), epsilon_(std::move(epsilon)), trace_(trace) {
  sc_.validate();
  if (epsilon_ <= 0 || epsilon_ >= 1)
    throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
  for (const Rat& c : sc_.set_costs)
    if (c != 1) throw std::invalid_argument("the bicriteria algorithm handles unit set costs only");
  rounds_total_ = std::max<long>(1, ceil_mul_log2(Rat(2), Rat(sc_.element_count)));
  weight_.assign(sc_.set_count(), 1 / Rat(2 * sc_.set_count()));
  in_cover_.assign(sc_.set_count(), 0);
  cover_count_.assign(sc_.element_count, 0);
  demand_count_.assign(sc_.element_count, 0);
}

Rat BicriteriaState::element_weight(int element) const {
  Rat total = 0;
  for (int s : sc_.membership.at(element)) total += weight_[s];
  return total;
}

bool BicriteriaState::covered_enough(int element) const {
  return Rat(cover_count_[element]) >= (1 - epsilon_) * Rat(demand_count_[element]);
}

void BicriteriaState::add_to_cover(int set_id, Provenance provenance) {
  in_cover_[set_id] = 1;
  for (int j : sc_.sets[set_id]) ++cover_count_[j];
  cover_order_.push_back(ChosenSet{set_id, provenance});
  if (trace_) trace_->append(EventKind::SetChosen, set_id, sc_.set_costs[set_id], true);
}

PowerSum BicriteriaState::phi() const {
  PowerSum sum(static_cast<unsigned long>(sc_.element_count));
  for (int j = 0; j < sc_.element_count; ++j)
    sum.add(Rat(1), 2 * (element_weight(j) - Rat(cover_count_[j])));
  return sum;
}

PowerSum BicriteriaState::expected_phi(const SelectionRound& round, long remaining,
                                       const std::vector<int>& extra_sets) const {
  if (remaining < 0) throw std::invalid_argument("negative round count");
  const long n = sc_.element_count;
  PowerSum sum(static_cast<unsigned long>(n));
  // 1 - 1/n^2, the potential drop a covering hit is worth
  Rat hit_gain = n == 1 ? Rat(0) : Rat(n * n - 1, n * n);
  for (int j = 0; j < n; ++j) {
    long cover = cover_count_[j];
    for (int s : extra_sets)
      if (!in_cover_[s] && std::binary_search(sc_.sets[s].begin(), sc_.sets[s].end(), j))
        ++cover;
    Rat delta_j = 0;
    for (const auto& [s, delta] : round.deltas)
      if (std::binary_search(sc_.sets[s].begin(), sc_.sets[s].end(), j)) delta_j += delta;
    Rat per_round = 1 - 2 * delta_j * hit_gain;
    sum.add(rat_pow(per_round, remaining), 2 * (element_weight(j) - Rat(cover)));
  }
  return sum;
}

SelectionRound BicriteriaState::augment_weights(int element) {
  const long k = demand_count_.at(element);
  if (covered_enough(element))
    throw std::logic_error("weight augmentation without a coverage deficit");
  SelectionRound round;
  round.element = element;
  round.demand_count = k;
  for (int s : sc_.membership[element]) {
    if (in_cover_[s]) continue;
    Rat delta = weight_[s] / Rat(2 * k);
    weight_[s] += delta;
    round.deltas.emplace_back(s, delta);
    round.delta_total += delta;
  }
  if (round.deltas.empty())
    throw std::logic_error("no candidate set left for an uncovered element");
  if (2 * round.delta_total > 1)
    throw std::logic_error("augmentation mass exceeded 1/2");
  return round;
}

std::vector<int> BicriteriaState::promote_heavy() {
  std::vector<int> promoted;
  for (int s = 0; s < sc_.set_count(); ++s) {
    if (in_cover_[s] || weight_[s] < 1) continue;
    if (2 * weight_[s] >= 3)
      throw std::logic_error("set weight reached 1.5 before promotion");
    add_to_cover(s, Provenance::HeavyPromotion);
    promoted.push_back(s);
  }
  return promoted;
}

std::vector<int> BicriteriaState::derandomized_select(const SelectionRound& round) {
  std::vector<int> selected;
  for (long r = 0; r < rounds_total_; ++r) {
    if (covered_enough(round.element)) break;
    long remaining_after = rounds_total_ - r - 1;
    PowerSum best = expected_phi(round, remaining_after);
    int best_set = -1;
    for (int s : sc_.membership[round.element]) {
      if (in_cover_[s]) continue;
      PowerSum value = expected_phi(round, remaining_after, {s});
      int c = PowerSum::compare(value, best);
      // minimizer wins; at a tie the earliest set beats skip and later sets
      if (c < 0 || (c == 0 && best_set < 0)) {
        best = std::move(value);
        best_set = s;
      }
    }
    if (best_set >= 0) {
      add_to_cover(best_set, Provenance::PotentialSelection);
      selected.push_back(best_set);
    }
  }
  return selected;
}

std::vector<ChosenSet> BicriteriaState::process_element(int element) {
  if (element < 0 || element >= sc_.element_count)
    throw std::invalid_argument("demand for unknown element");
  long k = ++demand_count_[element];
  long available = static_cast<long>(sc_.membership[element].size());
  if ((1 - epsilon_) * Rat(k) > Rat(available))
    throw InfeasibleDemand("element " + std::to_string(element) + " demanded " +
                           std::to_string(k) + " times; coverage target exceeds its " +
                           std::to_string(available) + " sets");

  size_t first_new = cover_order_.size();
  while (!covered_enough(element)) {
    IterationRecord record{element,
                           k,
                           SelectionRound{},
                           {},
                           {},
                           {},
                           {},
                           {},
                           phi(),
                           PowerSum(static_cast<unsigned long>(sc_.element_count))};
    record.round = augment_weights(element);
    record.weights_after_bump = weight_;
    record.promoted = promote_heavy();
    record.covers_after_promote = cover_count_;
    for (int s : sc_.membership[element])
      if (!in_cover_[s]) record.candidates.push_back(s);
    record.selected = derandomized_select(record.round);
    ++augmentations_;
    record.phi_after = phi();
    // the potential never grows across an iteration and stays below n^2
    if (PowerSum::compare(record.phi_after, record.phi_before) > 0)
      throw std::logic_error("coverage potential grew across an iteration");
    PowerSum ceiling(static_cast<unsigned long>(sc_.element_count));
    ceiling.add(Rat(1), Rat(2));
    if (PowerSum::compare(record.phi_after, ceiling) > 0)
      throw std::logic_error("coverage potential exceeded n^2");
    iterations_.push_back(std::move(record));
  }
  return std::vector<ChosenSet>(cover_order_.begin() + first_new, cover_order_.end());
}

Rat BicriteriaState::opt_weight_product(const std::vector<int>& opt_cover) const {
  Rat product = 1;
  for (int s : opt_cover) product *= weight_.at(s);
  return product;
}

}  // namespace admctl
