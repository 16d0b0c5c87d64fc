#include "admctl/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace admctl {

RoundingParams RoundingParams::make(Variant variant, const NetworkInstance& net) {
  RoundingParams params;
  params.variant = variant;
  long m = net.edge_count;
  Rat log_arg = variant == Variant::Weighted ? Rat(m * net.max_capacity) : Rat(m);
  Rat factor = variant == Variant::Weighted ? Rat(12) : Rat(4);
  params.prob_factor = factor * log2_upper_dyadic(log_arg, 32);
  params.weight_threshold = 1 / params.prob_factor;
  return params;
}

RandomizedRun::RandomizedRun(const NetworkInstance& net, const std::vector<Request>& requests,
                             FractionalConfig frac_config, RoundingParams params)
    : net_(net), params_(std::move(params)) {
  frac_ = std::make_unique<FractionalState>(net_, std::move(frac_config));
  const long prune_bar =
      4 * net_.edge_count * net_.max_capacity * net_.max_capacity;  // |REQ_e| stays below this
  cost_of_.resize(requests.size());
  edges_of_.resize(requests.size());

  for (const Request& r : requests) {
    cost_of_.at(r.id) = r.cost;
    edges_of_.at(r.id) = r.edges;
    Round round;
    round.req_id = r.id;
    round.cost = r.cost;
    round.edges = r.edges;

    bool prune = false;
    if (frac_->alpha_known() && frac_->classify_request(r) == CostClass::InRange) {
      std::set<int> victims;
      for (int e : r.edges) {
        if (frac_->inrange_count(e) + 1 < prune_bar) continue;
        prune = true;
        // victims are the in-range requests through the bursting edge
        // (replay skips those already rejected)
        for (int id : frac_->inrange_ids(e)) victims.insert(id);
      }
      if (prune) {
        ++prune_rounds_;
        round.pruned = true;
        round.cls = CostClass::InRange;
        round.prune_victims.assign(victims.begin(), victims.end());
        script_.push_back(std::move(round));
        continue;  // the arrival never enters the fractional layer
      }
    }

    frac_->process_request(r);
    switch (frac_->status_of(r.id)) {
      case FracStatus::AcceptedBig: round.cls = CostClass::BigAccept; break;
      case FracStatus::RejectedSmall: round.cls = CostClass::SmallReject; break;
      default: round.cls = CostClass::InRange; break;
    }
    const ArrivalReport& report = frac_->last_arrival();
    for (int id : report.became_small)
      if (id != r.id) round.forced_small.push_back(id);
    for (const auto& [id, delta] : report.weight_deltas) {
      Rat now = frac_->weight_of(id);
      Rat before = now - delta;
      if (before < params_.weight_threshold && now >= params_.weight_threshold)
        round.threshold_hits.push_back(id);
      Rat p = params_.prob_factor * delta;
      if (p > 1) p = 1;
      round.coin_probs.emplace_back(id, p);
    }
    script_.push_back(std::move(round));
  }
}

namespace {

// exact comparison of a 64-bit uniform draw against a rational probability
bool coin_accepts_rejection(uint64_t draw, const Rat& p) {
  if (p >= 1) return true;
  if (p <= 0) return false;
  // reject iff draw / 2^64 < p  <=>  draw * den < num * 2^64
  mpz_class lhs = mpz_class(mpz_class(draw) * p.get_den());
  mpz_class rhs;
  mpz_mul_2exp(rhs.get_mpz_t(), p.get_num().get_mpz_t(), 64);
  return lhs < rhs;
}

}  // namespace

TrialResult RandomizedRun::run_trial(uint64_t seed, bool want_trace) const {
  std::mt19937_64 rng(seed);
  TrialResult result;
  DecisionTrace& trace = result.trace;

  std::vector<char> rejected(cost_of_.size(), 0);
  std::vector<char> loaded(cost_of_.size(), 0);
  std::vector<long> load(net_.edge_count, 0);

  auto reject = [&](int id, EventKind kind) {
    rejected[id] = 1;
    result.rejected_cost += cost_of_[id];
    ++result.rejected_count;
    if (loaded[id]) {
      loaded[id] = 0;
      for (int e : edges_of_[id]) --load[e];
    }
    trace.append(kind, id, cost_of_[id], true);
  };

  for (const Round& round : script_) {
    trace.append(EventKind::Arrive, round.req_id, Rat(0), false);

    if (round.pruned) {
      reject(round.req_id, EventKind::RejectImmediate);
      for (int v : round.prune_victims)
        if (!rejected[v]) reject(v, loaded[v] ? EventKind::Preempt : EventKind::RejectImmediate);
      continue;
    }
    for (int v : round.forced_small)
      if (!rejected[v]) reject(v, loaded[v] ? EventKind::Preempt : EventKind::RejectImmediate);

    if (round.cls == CostClass::SmallReject) {
      reject(round.req_id, EventKind::RejectImmediate);
      continue;
    }

    // step 2: deterministic rejection at the weight threshold
    for (int id : round.threshold_hits)
      if (!rejected[id]) reject(id, loaded[id] ? EventKind::Preempt : EventKind::RejectImmediate);
    // step 3: one coin per weight increase, still-alive candidates only
    for (const auto& [id, p] : round.coin_probs) {
      if (rejected[id]) continue;
      uint64_t draw = rng();
      if (coin_accepts_rejection(draw, p))
        reject(id, loaded[id] ? EventKind::Preempt : EventKind::RejectImmediate);
    }
    // step 4: admit the arrival only if its edges have room
    if (!rejected[round.req_id]) {
      bool fits = true;
      for (int e : round.edges)
        if (load[e] + 1 > net_.capacities[e]) fits = false;
      if (fits) {
        loaded[round.req_id] = 1;
        for (int e : round.edges) ++load[e];
        if (round.cls == CostClass::BigAccept)
          trace.append(EventKind::AcceptPermanent, round.req_id, Rat(0), false);
      } else {
        reject(round.req_id, EventKind::RejectOnArrival);
      }
    }
    for (int e = 0; e < net_.edge_count; ++e)
      if (load[e] > net_.capacities[e]) result.feasible = false;
  }

  if (!want_trace) result.trace = DecisionTrace{};
  return result;
}

TrialSummary RandomizedRun::run_trials(const std::vector<uint64_t>& seeds) const {
  std::set<uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size())
    throw std::invalid_argument("run_trials: seeds must be distinct");
  TrialSummary summary;
  for (uint64_t seed : seeds) {
    TrialResult trial = run_trial(seed);
    summary.all_feasible = summary.all_feasible && trial.feasible;
    if (trial.rejected_cost > summary.max_cost) summary.max_cost = trial.rejected_cost;
    summary.costs.push_back(trial.rejected_cost);
    summary.counts.push_back(trial.rejected_count);
  }
  if (!seeds.empty()) {
    Rat total = 0;
    for (const Rat& c : summary.costs) total += c;
    summary.mean = total / Rat(static_cast<long>(seeds.size()));
    double mean_d = rat_double(summary.mean);
    double acc = 0;
    for (const Rat& c : summary.costs) {
      double d = rat_double(c) - mean_d;
      acc += d * d;
    }
    if (seeds.size() > 1) summary.stddev = std::sqrt(acc / (seeds.size() - 1));
    summary.stderr_mean = summary.stddev / std::sqrt(static_cast<double>(seeds.size()));
  }
  return summary;
}

}  // namespace admctl
