#include "admctl/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "admctl/simplex.hpp"

namespace admctl {

namespace {

// Shared branch-and-bound scaffolding: decide items in cost-descending order,
// prune with "cost so far + cheapest way to repair the worst constraint".

struct AdmissionSearch {
  const NetworkInstance& net;
  const std::vector<Request>& requests;
  std::vector<int> order;              // positions in decision order
  std::vector<std::vector<int>> on_edge;  // edge -> decision depths of requests through it
  std::vector<long> accepted;          // per edge
  std::vector<char> rejected;          // per decision depth
  Rat best_cost;
  std::vector<char> best_rejected;

  explicit AdmissionSearch(const NetworkInstance& n, const std::vector<Request>& reqs)
      : net(n), requests(reqs) {
    const int count = static_cast<int>(requests.size());
    order.resize(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return requests[a].cost > requests[b].cost;
    });
    on_edge.assign(net.edge_count, {});
    for (int depth = 0; depth < count; ++depth)
      for (int e : requests[order[depth]].edges) on_edge[e].push_back(depth);
    accepted.assign(net.edge_count, 0);
    rejected.assign(count, 0);
    best_cost = 0;
    for (const Request& r : requests) best_cost += r.cost;  // reject everything
    best_rejected.assign(count, 1);
  }

  Rat lower_bound(int depth) const {
    Rat bound = 0;
    std::vector<Rat> costs;
    for (int e = 0; e < net.edge_count; ++e) {
      long undecided = 0;
      costs.clear();
      for (int d : on_edge[e])
        if (d >= depth) {
          ++undecided;
          costs.push_back(requests[order[d]].cost);
        }
      long needed = accepted[e] + undecided - net.capacities[e];
      if (needed <= 0) continue;
      std::sort(costs.begin(), costs.end());
      Rat sum = 0;
      for (long k = 0; k < needed; ++k) sum += costs[k];
      if (sum > bound) bound = sum;
    }
    return bound;
  }

  void search(int depth, const Rat& rejected_cost) {
    if (rejected_cost + lower_bound(depth) >= best_cost) return;
    if (depth == static_cast<int>(requests.size())) {
      best_cost = rejected_cost;
      best_rejected.assign(rejected.begin(), rejected.end());
      return;
    }
    const Request& r = requests[order[depth]];
    bool fits = true;
    for (int e : r.edges)
      if (accepted[e] + 1 > net.capacities[e]) fits = false;
    if (fits) {
      for (int e : r.edges) ++accepted[e];
      search(depth + 1, rejected_cost);
      for (int e : r.edges) --accepted[e];
    }
    rejected[depth] = 1;
    search(depth + 1, rejected_cost + r.cost);
    rejected[depth] = 0;
  }
};

struct MulticoverSearch {
  const SetCoverInstance& sc;
  std::vector<long> deficit;              // per element, remaining demand
  std::vector<int> order;                 // set positions in decision order
  std::vector<std::vector<int>> covering; // element -> decision depths of covering sets
  std::vector<char> chosen;
  Rat best_cost;
  std::vector<char> best_chosen;

  explicit MulticoverSearch(const SetCoverInstance& inst, std::vector<long> counts)
      : sc(inst), deficit(std::move(counts)) {
    const int m = sc.set_count();
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sc.set_costs[a] > sc.set_costs[b]; });
    covering.assign(sc.element_count, {});
    for (int depth = 0; depth < m; ++depth)
      for (int j : sc.sets[order[depth]]) covering[j].push_back(depth);
    chosen.assign(m, 0);
    best_cost = 0;
    for (const Rat& c : sc.set_costs) best_cost += c;  // choose everything
    best_chosen.assign(m, 1);
  }

  // Lower bound on the additional cost; negative deficit entries are ignored.
  // Returns false when some element can no longer be covered enough.
  bool lower_bound(int depth, Rat* bound) const {
    *bound = 0;
    std::vector<Rat> costs;
    for (int j = 0; j < sc.element_count; ++j) {
      if (deficit[j] <= 0) continue;
      costs.clear();
      for (int d : covering[j])
        if (d >= depth) costs.push_back(sc.set_costs[order[d]]);
      if (static_cast<long>(costs.size()) < deficit[j]) return false;
      std::sort(costs.begin(), costs.end());
      Rat sum = 0;
      for (long k = 0; k < deficit[j]; ++k) sum += costs[k];
      if (sum > *bound) *bound = sum;
    }
    return true;
  }

  void search(int depth, const Rat& cost) {
    Rat bound;
    if (!lower_bound(depth, &bound)) return;
    if (cost + bound >= best_cost) return;
    bool satisfied = bound == 0;
    if (satisfied) {
      best_cost = cost;
      best_chosen.assign(chosen.begin(), chosen.end());
      return;
    }
    if (depth == sc.set_count()) return;
    int set = order[depth];
    chosen[depth] = 1;
    for (int j : sc.sets[set]) --deficit[j];
    search(depth + 1, cost + sc.set_costs[set]);
    for (int j : sc.sets[set]) ++deficit[j];
    chosen[depth] = 0;
    search(depth + 1, cost);
  }
};

}  // namespace

OracleSolution integral_opt_admission(const NetworkInstance& net,
                                      const std::vector<Request>& requests, int budget) {
  if (static_cast<int>(requests.size()) > budget)
    throw OracleBudgetExceeded("integral admission oracle: " +
                               std::to_string(requests.size()) + " requests exceed budget " +
                               std::to_string(budget));
  AdmissionSearch search(net, requests);
  search.search(0, Rat(0));
  OracleSolution solution;
  solution.kind = OracleSolution::Kind::IntegralAdmission;
  solution.cost = search.best_cost;
  for (size_t depth = 0; depth < requests.size(); ++depth)
    if (search.best_rejected[depth]) solution.ids.push_back(requests[search.order[depth]].id);
  std::sort(solution.ids.begin(), solution.ids.end());
  return solution;
}

OracleSolution fractional_opt_admission(const NetworkInstance& net,
                                        const std::vector<Request>& requests, int budget) {
  if (static_cast<int>(requests.size()) > budget)
    throw OracleBudgetExceeded("fractional admission oracle: " +
                               std::to_string(requests.size()) + " requests exceed budget " +
                               std::to_string(budget));
  const int n = static_cast<int>(requests.size());
  CoveringLp lp;
  lp.objective.reserve(n);
  lp.upper.assign(n, Rat(1));
  for (const Request& r : requests) lp.objective.push_back(r.cost);
  std::vector<std::vector<int>> through(net.edge_count);
  for (int i = 0; i < n; ++i)
    for (int e : requests[i].edges) through[e].push_back(i);
  for (int e = 0; e < net.edge_count; ++e) {
    long deficit = static_cast<long>(through[e].size()) - net.capacities[e];
    if (deficit <= 0) continue;
    CoveringLp::Row row;
    for (int i : through[e]) row.terms.emplace_back(i, Rat(1));
    row.rhs = Rat(deficit);
    lp.rows.push_back(std::move(row));
  }
  OracleSolution solution;
  solution.kind = OracleSolution::Kind::FractionalAdmission;
  if (lp.rows.empty()) {
    solution.cost = 0;
    for (const Request& r : requests) solution.frac_weights[r.id] = 0;
    return solution;
  }
  LpSolution opt = solve_covering_lp(lp);
  solution.cost = opt.objective;
  for (int i = 0; i < n; ++i) {
    solution.frac_weights[requests[i].id] = opt.values[i];
    if (opt.values[i] > 0) solution.ids.push_back(requests[i].id);
  }
  std::sort(solution.ids.begin(), solution.ids.end());
  return solution;
}

OracleSolution opt_multicover(const SetCoverInstance& sc, const DemandSequence& demands,
                              int budget) {
  if (sc.set_count() > budget)
    throw OracleBudgetExceeded("multicover oracle: " + std::to_string(sc.set_count()) +
                               " sets exceed budget " + std::to_string(budget));
  std::vector<long> counts = demands.final_counts(sc.element_count);
  for (int j = 0; j < sc.element_count; ++j)
    if (counts[j] > static_cast<long>(sc.membership[j].size()))
      throw InfeasibleDemand("element " + std::to_string(j) + " demanded " +
                             std::to_string(counts[j]) + " times but only " +
                             std::to_string(sc.membership[j].size()) + " sets contain it");
  MulticoverSearch search(sc, counts);
  search.search(0, Rat(0));
  OracleSolution solution;
  solution.kind = OracleSolution::Kind::Multicover;
  solution.cost = search.best_cost;
  for (int depth = 0; depth < sc.set_count(); ++depth)
    if (search.best_chosen[depth]) solution.ids.push_back(search.order[depth]);
  std::sort(solution.ids.begin(), solution.ids.end());
  return solution;
}

}  // namespace admctl
