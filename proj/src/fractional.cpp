#include "admctl/fractional.hpp"

#include <algorithm>
#include <stdexcept>

namespace admctl {

FractionalState::FractionalState(const NetworkInstance& net, FractionalConfig config,
                                 DecisionTrace* trace)
    : net_(net), cfg_(std::move(config)), trace_(trace) {
  net_.validate();
  member_.assign(net_.edge_count, {});
  eff_cap_ = net_.capacities;
  if (cfg_.mode == AlphaMode::OracleAlpha) {
    if (cfg_.alpha < 0) throw std::invalid_argument("negative optimum guess");
    alpha_ = cfg_.alpha;
    alpha_set_ = true;
  }
}

CostClass FractionalState::classify_request(const Request& request) const {
  if (!alpha_set_) throw std::logic_error("classify_request before any optimum guess");
  if (request.cost > 2 * alpha_) return CostClass::BigAccept;
  Rat small_bar = alpha_ / Rat(static_cast<long>(net_.edge_count) * net_.max_capacity);
  if (request.cost <= small_bar) return CostClass::SmallReject;
  return CostClass::InRange;
}

Rat FractionalState::cost_spread() const {
  if (!norm_set_) return Rat(1);
  return max_cost_ / min_cost_;
}

const Rat& FractionalState::min_inrange_cost() const {
  if (!norm_set_) throw std::logic_error("no weight-system request this period");
  return min_cost_;
}

long FractionalState::excess(int edge) const {
  long alive = 0;
  for (int s : member_[edge])
    if (slots_[s].status == FracStatus::InWeights) ++alive;
  return alive - eff_cap_[edge];
}

bool FractionalState::satisfied(int edge) const {
  Rat sum = 0;
  long alive = 0;
  for (int s : member_[edge]) {
    if (slots_[s].status != FracStatus::InWeights) continue;
    sum += slots_[s].weight;
    ++alive;
  }
  return sum >= Rat(alive - eff_cap_[edge]);
}

bool FractionalState::feasible() const {
  for (int e = 0; e < net_.edge_count; ++e)
    if (!satisfied(e)) return false;
  return true;
}

long FractionalState::inrange_count(int edge) const {
  return static_cast<long>(member_[edge].size());
}

FracStatus FractionalState::status_of(int request_id) const {
  return slots_.at(index_.at(request_id)).status;
}

const Rat& FractionalState::weight_of(int request_id) const {
  return slots_.at(index_.at(request_id)).weight;
}

std::vector<int> FractionalState::inrange_ids(int edge) const {
  std::vector<int> ids;
  for (int s : member_.at(edge)) ids.push_back(slots_[s].req.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void FractionalState::note_delta(int slot_index, const Rat& delta) {
  if (delta == 0) return;
  arrival_delta_[slots_[slot_index].req.id] += delta;
}

void FractionalState::enter_weights(int slot_index) {
  Slot& slot = slots_[slot_index];
  slot.status = FracStatus::InWeights;
  slot.weight = 0;
  slot.period_entered = period_;
  if (!norm_set_) {
    min_cost_ = max_cost_ = slot.req.cost;
    norm_set_ = true;
  } else {
    if (slot.req.cost < min_cost_) min_cost_ = slot.req.cost;
    if (slot.req.cost > max_cost_) max_cost_ = slot.req.cost;
  }
  for (int e : slot.req.edges) member_[e].push_back(slot_index);
}

void FractionalState::classify_and_admit(int slot_index) {
  Slot& slot = slots_[slot_index];
  CostClass cls = classify_request(slot.req);
  if (cls == CostClass::BigAccept) {
    // Permanent acceptance needs room on every edge. Once an edge's
    // effective capacity is exhausted, further requests through it go
    // through the weight system instead; while the guess is too small this
    // also makes their cost visible to the doubling trigger.
    for (int e : slot.req.edges)
      if (eff_cap_[e] == 0) cls = CostClass::InRange;
  }
  switch (cls) {
    case CostClass::BigAccept:
      slot.status = FracStatus::AcceptedBig;
      if (trace_) trace_->append(EventKind::AcceptPermanent, slot.req.id, Rat(0), false);
      for (int e : slot.req.edges) --eff_cap_[e];
      report_.became_big.push_back(slot.req.id);
      break;
    case CostClass::SmallReject:
      slot.status = FracStatus::RejectedSmall;
      period_small_ += slot.req.cost;
      if (trace_) trace_->append(EventKind::RejectImmediate, slot.req.id, slot.req.cost, true);
      report_.became_small.push_back(slot.req.id);
      break;
    case CostClass::InRange:
      enter_weights(slot_index);
      break;
  }
}

Rat FractionalState::weight_augment(int edge) {
  std::vector<int> alive;
  Rat sum = 0;
  for (int s : member_[edge]) {
    if (slots_[s].status != FracStatus::InWeights) continue;
    alive.push_back(s);
    sum += slots_[s].weight;
  }
  long over = static_cast<long>(alive.size()) - eff_cap_[edge];
  if (sum >= Rat(over))
    throw std::logic_error("weight augmentation called on a satisfied edge");

  const Rat spread = cost_spread();
  const Rat floor = 1 / (spread * Rat(net_.max_capacity));
  const Rat& p_min = min_inrange_cost();
  Rat delta = 0;

  // step (a): first-touch weights start at 1/(gc)
  for (int s : alive) {
    Slot& slot = slots_[s];
    if (slot.weight == 0) {
      slot.weight = floor;
      delta += floor * slot.req.cost;  // floor <= 1
      note_delta(s, floor);
    }
  }
  // step (b): multiplicative raise, normalized cost = cost / p_min
  for (int s : alive) {
    Slot& slot = slots_[s];
    Rat before = slot.weight;
    Rat contrib_before = std::min(before, Rat(1)) * slot.req.cost;
    slot.weight *= 1 + p_min / (Rat(over) * slot.req.cost);
    delta += std::min(slot.weight, Rat(1)) * slot.req.cost - contrib_before;
    note_delta(s, slot.weight - before);
  }
  // step (c): weights at 1 leave the alive set for good
  for (int s : alive) {
    Slot& slot = slots_[s];
    if (slot.weight >= 1) {
      slot.status = FracStatus::FullyRejected;
      if (trace_) trace_->append(EventKind::Preempt, slot.req.id, Rat(0), false);
    }
  }

  ++augment_count_;
  ++period_augments_;
  if (trace_) trace_->append(EventKind::WeightAugment, edge, delta, true);
  // per-step cost bound, in units of the current normalizer
  if (delta * Rat(net_.max_capacity) > Rat(3 * net_.max_capacity + 2) * p_min)
    throw std::logic_error("augmentation cost exceeded its per-step bound");
  if (augment_observer) augment_observer(delta, p_min);
  return delta;
}

void FractionalState::restore_feasibility() {
  // Full rejections only relax other edges (the leaving weight is >= 1 while
  // the excess drops by exactly one), so one ascending pass suffices; the
  // trailing check guards the reasoning.
  for (int e = 0; e < net_.edge_count; ++e)
    while (!satisfied(e)) weight_augment(e);
  check_invariants();
}

void FractionalState::check_invariants() const {
  if (!feasible()) throw std::logic_error("edge left unsatisfied after processing");
}

void FractionalState::establish_alpha(const Request& trigger) {
  // The first time an edge is forced over capacity fixes the initial guess to
  // the cheapest request seen through that edge.
  std::vector<long> count(net_.edge_count, 0);
  for (const Slot& slot : slots_)
    for (int e : slot.req.edges) ++count[e];
  int overfull = -1;
  for (int e : trigger.edges) {
    if (count[e] > net_.capacities[e]) {
      overfull = e;
      break;
    }
  }
  if (overfull < 0) return;
  Rat guess;
  bool first = true;
  for (const Slot& slot : slots_) {
    bool through = std::binary_search(slot.req.edges.begin(), slot.req.edges.end(), overfull);
    if (!through) continue;
    if (first || slot.req.cost < guess) guess = slot.req.cost;
    first = false;
  }
  alpha_ = guess;
  alpha_set_ = true;
  for (size_t s = 0; s < slots_.size(); ++s) classify_and_admit(static_cast<int>(s));
  restore_feasibility();
}

void FractionalState::process_request(const Request& request) {
  if (index_.count(request.id)) throw std::invalid_argument("duplicate request id");
  if (request.edges.empty()) throw std::invalid_argument("request with empty edge set");
  for (int e : request.edges)
    if (e < 0 || e >= net_.edge_count) throw std::invalid_argument("edge id out of range");

  report_ = ArrivalReport{};
  arrival_delta_.clear();
  if (trace_) trace_->append(EventKind::Arrive, request.id, Rat(0), false);
  index_[request.id] = static_cast<int>(slots_.size());
  slots_.push_back(Slot{request, FracStatus::Untracked, Rat(0), -1});

  if (!alpha_set_) {
    establish_alpha(request);
  } else {
    int slot_index = static_cast<int>(slots_.size()) - 1;
    classify_and_admit(slot_index);
    if (slots_[slot_index].status == FracStatus::InWeights) {
      for (int e : request.edges)
        while (!satisfied(e)) weight_augment(e);
    } else if (slots_[slot_index].status == FracStatus::AcceptedBig) {
      restore_feasibility();
    }
  }

  if (alpha_set_ && cfg_.mode == AlphaMode::Doubling)
    while (maybe_double_alpha() == DoubleResult::Doubled) {
    }
  if (alpha_set_) check_invariants();

  report_.weight_deltas.assign(arrival_delta_.begin(), arrival_delta_.end());
}

DoubleResult FractionalState::maybe_double_alpha() {
  if (cfg_.mode != AlphaMode::Doubling)
    throw std::logic_error("maybe_double_alpha outside doubling mode");
  if (!alpha_set_) return DoubleResult::Unchanged;
  Rat period = period_cost();
  Rat budget = cfg_.doubling_factor * alpha_;
  Rat log_arg = 2 * cost_spread() * Rat(net_.max_capacity);
  if (cmp_with_log2_bound(period, budget, log_arg) <= 0) return DoubleResult::Unchanged;

  // Forget this period's fractions: their cost is sunk, weights restart, and
  // every undecided request is re-classified under the doubled guess.
  sunk_ += period;
  if (trace_) trace_->append(EventKind::AlphaDouble, -1, period, false);
  period_small_ = 0;
  ++period_;
  period_augments_ = 0;
  alpha_ *= 2;
  norm_set_ = false;
  min_cost_ = max_cost_ = 0;
  arrival_delta_.clear();
  ++report_.doublings;

  std::vector<int> to_reclassify;
  for (size_t s = 0; s < slots_.size(); ++s) {
    Slot& slot = slots_[s];
    if (slot.status == FracStatus::InWeights) {
      slot.weight = 0;
      slot.status = FracStatus::Untracked;
      to_reclassify.push_back(static_cast<int>(s));
    }
  }
  for (auto& edge_members : member_) {
    edge_members.erase(std::remove_if(edge_members.begin(), edge_members.end(),
                                      [&](int s) {
                                        return slots_[s].status == FracStatus::Untracked;
                                      }),
                       edge_members.end());
  }
  for (int s : to_reclassify) classify_and_admit(s);
  restore_feasibility();
  return DoubleResult::Doubled;
}

Rat FractionalState::fractional_cost() const {
  Rat total = sunk_ + period_small_;
  for (const Slot& slot : slots_) {
    if (slot.period_entered != period_) continue;
    if (slot.status == FracStatus::InWeights)
      total += slot.weight * slot.req.cost;
    else if (slot.status == FracStatus::FullyRejected)
      total += slot.req.cost;
  }
  return total;
}

Rat FractionalState::period_cost() const { return fractional_cost() - sunk_; }

NetworkProblem FractionalState::weight_subinstance() const {
  NetworkProblem sub;
  sub.net.edge_count = net_.edge_count;
  sub.net.capacities = eff_cap_;
  sub.net.max_capacity = net_.max_capacity;
  for (const Slot& slot : slots_) {
    if (slot.period_entered != period_) continue;
    if (slot.status == FracStatus::InWeights || slot.status == FracStatus::FullyRejected)
      sub.requests.push_back(slot.req);
  }
  return sub;
}

PowerProduct FractionalState::proof_potential(const std::map<int, Rat>& opt_weights) const {
  PowerProduct phi;
  const Rat floor = 1 / (cost_spread() * Rat(net_.max_capacity));
  const Rat& p_min = min_inrange_cost();
  for (const Slot& slot : slots_) {
    if (slot.period_entered != period_) continue;
    if (slot.status != FracStatus::InWeights && slot.status != FracStatus::FullyRejected)
      continue;
    auto it = opt_weights.find(slot.req.id);
    if (it == opt_weights.end())
      throw std::invalid_argument("missing optimal weight for request " +
                                  std::to_string(slot.req.id));
    Rat base = std::max(slot.weight, floor);
    phi.mul(base, it->second * slot.req.cost / p_min);
  }
  return phi;
}

}  // namespace admctl
