#include "doctest.h"

#include "admctl/experiment.hpp"
#include "admctl/fractional.hpp"
#include "admctl/oracle.hpp"

using namespace admctl;

namespace {

Request make_request(int id, std::vector<int> edges, const Rat& cost) {
  Request r;
  r.id = id;
  r.edges = std::move(edges);
  r.cost = cost;
  return r;
}

NetworkInstance single_edge(long cap) {
  NetworkInstance net;
  net.edge_count = 1;
  net.capacities = {cap};
  net.max_capacity = cap;
  return net;
}

FractionalConfig oracle_alpha(const Rat& alpha) {
  FractionalConfig cfg;
  cfg.mode = AlphaMode::OracleAlpha;
  cfg.alpha = alpha;
  return cfg;
}

}  // namespace

TEST_CASE("classification thresholds") {
  NetworkInstance net;
  net.edge_count = 2;
  net.capacities = {2, 2};
  net.max_capacity = 2;
  FractionalState state(net, oracle_alpha(Rat(4)));
  CHECK(state.classify_request(make_request(0, {0}, Rat(10))) == CostClass::BigAccept);
  CHECK(state.classify_request(make_request(1, {0}, Rat(1))) == CostClass::SmallReject);
  CHECK(state.classify_request(make_request(2, {0}, Rat(3))) == CostClass::InRange);
  // boundaries: big is strict, small is inclusive
  CHECK(state.classify_request(make_request(3, {0}, Rat(8))) == CostClass::InRange);
}

// Unit costs on one unit-capacity edge, guess 9/10 so both requests sit in
// the weight system: the second arrival forces one augmentation that lifts
// both weights 0 -> 1 -> 2 and fully rejects both.
TEST_CASE("single-edge hand trace, capacity one") {
  DecisionTrace trace;
  FractionalState state(single_edge(1), oracle_alpha(rat(9, 10)), &trace);

  state.process_request(make_request(0, {0}, Rat(1)));
  CHECK(state.augment_count() == 0);  // within capacity
  CHECK(state.fractional_cost() == 0);

  state.process_request(make_request(1, {0}, Rat(1)));
  CHECK(state.augment_count() == 1);
  CHECK(state.weight_of(0) == 2);
  CHECK(state.weight_of(1) == 2);
  CHECK(state.status_of(0) == FracStatus::FullyRejected);
  CHECK(state.status_of(1) == FracStatus::FullyRejected);
  CHECK(state.fractional_cost() == 2);
  CHECK(state.cost_spread() == 1);
  CHECK(state.feasible());
  CHECK(trace.replay_consistent());

  // Augmentation potential against the optimal fractional weights of the
  // subinstance: one augmentation multiplied it by exactly two, and the
  // ceiling 2^alpha is met with equality.
  NetworkProblem sub = state.weight_subinstance();
  OracleSolution opt = fractional_opt_admission(sub.net, sub.requests);
  CHECK(opt.cost == 1);
  PowerProduct phi = state.proof_potential(opt.frac_weights);
  PowerProduct two;
  two.mul(Rat(2), Rat(1));
  CHECK(phi.not_provably_less(two));
  CHECK(two.not_provably_less(phi));  // equal: Phi = 2^1 at alpha-hat = 1
}

// Third request on a capacity-two edge: one augmentation, floor 1/2, then
// the doubling step lands every weight exactly at one.
TEST_CASE("single-edge hand trace, capacity two") {
  FractionalState state(single_edge(2), oracle_alpha(Rat(1)));
  for (int i = 0; i < 2; ++i) state.process_request(make_request(i, {0}, Rat(1)));
  CHECK(state.augment_count() == 0);

  state.process_request(make_request(2, {0}, Rat(1)));
  CHECK(state.augment_count() == 1);
  for (int i = 0; i < 3; ++i) {
    CHECK(state.weight_of(i) == 1);
    CHECK(state.status_of(i) == FracStatus::FullyRejected);
  }
  CHECK(state.fractional_cost() == 3);
}

TEST_CASE("weight augmentation via exhausted capacity: floor then double") {
  // a permanently accepted big request drops the effective capacity to zero,
  // so the following unit request must carry a full unit of rejection mass
  DecisionTrace trace;
  FractionalState state(single_edge(1), oracle_alpha(rat(9, 10)), &trace);
  std::vector<std::pair<Rat, Rat>> deltas;
  state.augment_observer = [&](const Rat& delta, const Rat& p_min) {
    deltas.emplace_back(delta, p_min);
  };
  state.process_request(make_request(0, {0}, Rat(10)));  // big: 10 > 2*alpha
  CHECK(state.status_of(0) == FracStatus::AcceptedBig);
  CHECK(state.fractional_cost() == 0);

  state.process_request(make_request(1, {0}, Rat(1)));
  CHECK(state.augment_count() == 1);
  // g = 1 and c = 1: step (a) lifts the weight to 1, step (b) doubles it
  CHECK(state.weight_of(1) == 2);
  REQUIRE(deltas.size() == 1);
  CHECK(deltas[0].first == 1);  // cost delta clamps at min{f,1} * p
  CHECK(state.fractional_cost() == 1);
}

TEST_CASE("per-step delta identity against the trace") {
  // every WeightAugment delta equals the change of the clamped weighted sum
  NetworkGenParams gen;
  gen.edges = 4;
  gen.cap_max = 3;
  gen.requests = 12;
  gen.cost_max = 16;
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    gen.seed = seed;
    NetworkProblem p = gen_network(gen);
    FractionalConfig cfg;
    cfg.mode = AlphaMode::OracleAlpha;
    cfg.alpha = fractional_opt_admission(p.net, p.requests).cost;
    DecisionTrace trace;
    FractionalState state(p.net, cfg, &trace);
    for (const Request& r : p.requests) state.process_request(r);
    Rat augment_total = 0;
    long augment_events = 0;
    for (const TraceEvent& ev : trace.events()) {
      if (ev.kind != EventKind::WeightAugment) continue;
      augment_total += ev.delta;
      ++augment_events;
    }
    CHECK(augment_events == state.augment_count());
    Rat small_total = 0;
    for (const TraceEvent& ev : trace.events())
      if (ev.kind == EventKind::RejectImmediate) small_total += ev.delta;
    CHECK(state.fractional_cost() == augment_total + small_total);
    CHECK(trace.replay_consistent());
  }
}

TEST_CASE("doubling mode: guess establishment, threshold, sunk accounting") {
  FractionalConfig cfg;  // doubling
  DecisionTrace trace;
  FractionalState state(single_edge(1), cfg, &trace);
  // T(alpha) = 8 * alpha * max(1, log2(2gc)) = 8 with unit costs
  for (int i = 0; i < 11; ++i) state.process_request(make_request(i, {0}, Rat(1)));
  CHECK(state.alpha_known());
  // guess 1 set at the first conflict; every unit request classifies small
  // (cost <= alpha/(mc)); the period cost passes 8 at the ninth arrival
  CHECK(state.alpha() == 2);
  CHECK(state.period() == 1);
  CHECK(state.sunk_cost() == 9);
  CHECK(state.fractional_cost() == 11);
  long doubles = 0;
  for (const TraceEvent& ev : trace.events())
    if (ev.kind == EventKind::AlphaDouble) ++doubles;
  CHECK(doubles == 1);
  // the forgotten cost stays within twice the final period budget
  Rat final_budget = 8 * state.alpha() * 1;  // log2(2gc) = log2(2) = 1
  CHECK(state.sunk_cost() <= 2 * final_budget);
}

TEST_CASE("doubling triggered by augmentation cost alone") {
  // costs 2 then 3s on one unit edge: the guess lands on 2, each conflict
  // burns 6 through the weight system, and the third conflict crosses
  // T(2) = 16, doubling the guess and sinking the period
  FractionalConfig cfg;
  FractionalState state(single_edge(1), cfg);
  state.process_request(make_request(0, {0}, Rat(2)));
  state.process_request(make_request(1, {0}, Rat(3)));  // establishes guess 2, rejects r0
  CHECK(state.alpha() == 2);
  CHECK(state.status_of(0) == FracStatus::RejectedSmall);
  state.process_request(make_request(2, {0}, Rat(3)));
  CHECK(state.augment_count() == 1);
  CHECK(state.period_cost() == 8);  // 2 small + 6 augmentation
  state.process_request(make_request(3, {0}, Rat(3)));
  state.process_request(make_request(4, {0}, Rat(3)));
  CHECK(state.period_cost() == 14);
  CHECK(state.period() == 0);
  state.process_request(make_request(5, {0}, Rat(3)));
  state.process_request(make_request(6, {0}, Rat(3)));
  CHECK(state.period() == 1);  // 20 > 16 forced the doubling
  CHECK(state.alpha() == 4);
  CHECK(state.sunk_cost() == 20);
  CHECK(state.fractional_cost() == 20);
  CHECK(state.augment_count() == 3);
  CHECK(state.period_augment_count() == 0);
}

TEST_CASE("cumulative cost stays within the per-step bound times the count bound") {
  NetworkGenParams gen;
  gen.edges = 5;
  gen.cap_max = 3;
  gen.requests = 13;
  gen.cost_max = 16;
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    gen.seed = seed;
    NetworkProblem p = gen_network(gen);
    OracleSolution opt = fractional_opt_admission(p.net, p.requests);
    FractionalConfig cfg;
    cfg.mode = AlphaMode::OracleAlpha;
    cfg.alpha = opt.cost;
    FractionalState state(p.net, cfg);
    Rat augment_cost = 0;
    Rat first_norm = 0;
    state.augment_observer = [&](const Rat& delta, const Rat& p_min) {
      augment_cost += delta;
      if (first_norm == 0) first_norm = p_min;  // normalizers only shrink
    };
    for (const Request& r : p.requests) state.process_request(r);
    if (augment_cost == 0) continue;
    NetworkProblem sub = state.weight_subinstance();
    Rat alpha_hat = fractional_opt_admission(sub.net, sub.requests).cost /
                    state.min_inrange_cost();
    const long c = p.net.max_capacity;
    // weight-system cost <= (3 + 2/c) * p_min(first) * alpha_hat * LOG2(2gc)
    Rat factor = rat(3 * c + 2, c) * first_norm * alpha_hat;
    Rat log_arg = 2 * state.cost_spread() * Rat(c);
    CHECK(cmp_with_log2_bound(augment_cost, factor, log_arg) <= 0);
  }
}

TEST_CASE("doubling below the threshold leaves the guess unchanged") {
  FractionalConfig cfg;
  FractionalState state(single_edge(1), cfg);
  for (int i = 0; i < 3; ++i) state.process_request(make_request(i, {0}, Rat(1)));
  CHECK(state.alpha() == 1);
  CHECK(state.maybe_double_alpha() == DoubleResult::Unchanged);
  CHECK(state.period() == 0);
}

TEST_CASE("maybe_double_alpha is a doubling-mode contract") {
  FractionalState state(single_edge(1), oracle_alpha(Rat(1)));
  CHECK_THROWS_AS(state.maybe_double_alpha(), std::logic_error);
}

TEST_CASE("weight_augment refuses satisfied edges") {
  FractionalState state(single_edge(1), oracle_alpha(rat(9, 10)));
  state.process_request(make_request(0, {0}, Rat(1)));
  CHECK_THROWS_AS(state.weight_augment(0), std::logic_error);
}

TEST_CASE("zero guess accepts everything as big") {
  FractionalState state(single_edge(1), oracle_alpha(Rat(0)));
  state.process_request(make_request(0, {0}, Rat(1)));
  CHECK(state.status_of(0) == FracStatus::AcceptedBig);
  CHECK(state.fractional_cost() == 0);
}

TEST_CASE("oracle-alpha runs satisfy feasibility, monotonicity and the count bound") {
  NetworkGenParams gen;
  gen.edges = 5;
  gen.cap_max = 3;
  gen.requests = 13;
  gen.cost_max = 16;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    gen.seed = seed;
    NetworkProblem p = gen_network(gen);
    FractionalConfig cfg;
    cfg.mode = AlphaMode::OracleAlpha;
    FractionalRunResult r = run_fractional(p, cfg, /*with_oracle=*/true);
    CHECK(r.feasible_after_each);
    CHECK(r.monotone_weights);
    CHECK(r.aug_bound_ok);
    CHECK(r.trace.replay_consistent());
  }
}

TEST_CASE("doubling runs hold the per-period count bound too") {
  NetworkGenParams gen;
  gen.edges = 4;
  gen.cap_max = 2;
  gen.requests = 14;
  gen.cost_max = 8;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    gen.seed = seed;
    NetworkProblem p = gen_network(gen);
    FractionalConfig cfg;  // doubling
    FractionalRunResult r = run_fractional(p, cfg, /*with_oracle=*/true);
    CHECK(r.feasible_after_each);
    CHECK(r.monotone_weights);
    CHECK(r.aug_bound_ok);
  }
}
