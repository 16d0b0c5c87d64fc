#include "admctl/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace admctl {

namespace {

// modulo draw: bias is irrelevant here, reproducibility is what matters
long bounded(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

std::vector<int> sample_subset(std::mt19937_64& rng, const std::vector<int>& pool, int size) {
  std::vector<int> scratch = pool;
  std::vector<int> picked;
  for (int k = 0; k < size && !scratch.empty(); ++k) {
    size_t at = static_cast<size_t>(rng() % scratch.size());
    picked.push_back(scratch[at]);
    scratch.erase(scratch.begin() + static_cast<long>(at));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

void check_positive(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("generator: ") + what);
}

}  // namespace

NetworkProblem gen_network(const NetworkGenParams& params) {
  check_positive(params.edges > 0, "edge count must be positive");
  check_positive(params.cap_max > 0, "capacity bound must be positive");
  check_positive(params.requests >= 0, "request count must be nonnegative");
  check_positive(params.cost_min >= 1 && params.cost_max >= params.cost_min,
                 "cost range must satisfy 1 <= min <= max");
  std::mt19937_64 rng(params.seed);
  NetworkProblem problem;
  problem.net.edge_count = params.edges;
  for (int e = 0; e < params.edges; ++e)
    problem.net.capacities.push_back(bounded(rng, 1, params.cap_max));
  problem.net.max_capacity =
      *std::max_element(problem.net.capacities.begin(), problem.net.capacities.end());

  std::vector<int> all_edges(params.edges);
  for (int e = 0; e < params.edges; ++e) all_edges[e] = e;
  int max_edges = params.max_request_edges > 0
                      ? std::min(params.max_request_edges, params.edges)
                      : params.edges;
  for (int i = 0; i < params.requests; ++i) {
    Request r;
    r.id = i;
    r.edges = sample_subset(rng, all_edges, static_cast<int>(bounded(rng, 1, max_edges)));
    r.cost = Rat(bounded(rng, params.cost_min, params.cost_max));
    problem.requests.push_back(std::move(r));
  }
  return problem;
}

NetworkProblem gen_hotspot(const HotspotGenParams& params) {
  check_positive(params.hotspot_edge >= 0 && params.hotspot_edge < params.base.edges,
                 "hotspot edge out of range");
  check_positive(params.target_excess >= 0, "target excess must be nonnegative");
  std::mt19937_64 rng(params.base.seed);
  NetworkProblem problem;
  problem.net.edge_count = params.base.edges;
  for (int e = 0; e < params.base.edges; ++e)
    problem.net.capacities.push_back(bounded(rng, 1, params.base.cap_max));
  problem.net.max_capacity =
      *std::max_element(problem.net.capacities.begin(), problem.net.capacities.end());

  std::vector<int> all_edges(params.base.edges);
  for (int e = 0; e < params.base.edges; ++e) all_edges[e] = e;
  int max_edges = params.base.max_request_edges > 0
                      ? std::min(params.base.max_request_edges, params.base.edges)
                      : params.base.edges;

  const long hot = params.hotspot_edge;
  long forced = params.target_excess == 0
                    ? 0
                    : problem.net.capacities[hot] + params.target_excess;
  std::vector<long> used(params.base.edges, 0);
  int total = std::max<int>(params.base.requests, static_cast<int>(forced));
  for (int i = 0; i < total; ++i) {
    Request r;
    r.id = i;
    if (i < forced) {
      r.edges = sample_subset(rng, all_edges, static_cast<int>(bounded(rng, 1, max_edges)));
      if (!std::binary_search(r.edges.begin(), r.edges.end(), static_cast<int>(hot))) {
        r.edges.push_back(static_cast<int>(hot));
        std::sort(r.edges.begin(), r.edges.end());
      }
    } else if (params.target_excess == 0) {
      // stay within capacities: draw only from edges with headroom
      std::vector<int> open;
      for (int e = 0; e < params.base.edges; ++e)
        if (used[e] < problem.net.capacities[e]) open.push_back(e);
      if (open.empty()) break;
      r.edges = sample_subset(rng, open,
                              static_cast<int>(bounded(rng, 1, static_cast<long>(open.size()))));
    } else {
      r.edges = sample_subset(rng, all_edges, static_cast<int>(bounded(rng, 1, max_edges)));
    }
    for (int e : r.edges) ++used[e];
    r.cost = Rat(bounded(rng, params.base.cost_min, params.base.cost_max));
    problem.requests.push_back(std::move(r));
  }
  return problem;
}

SetCoverProblem gen_setcover(const SetCoverGenParams& params) {
  check_positive(params.elements > 0, "element count must be positive");
  check_positive(params.sets > 0, "set count must be positive");
  check_positive(params.cost_min >= 1 && params.cost_max >= params.cost_min,
                 "cost range must satisfy 1 <= min <= max");
  std::mt19937_64 rng(params.seed);
  SetCoverProblem problem;
  problem.sc.element_count = params.elements;
  std::vector<int> all_elements(params.elements);
  for (int j = 0; j < params.elements; ++j) all_elements[j] = j;
  int max_size = params.max_set_size > 0 ? std::min(params.max_set_size, params.elements)
                                         : params.elements;
  for (int s = 0; s < params.sets; ++s) {
    problem.sc.sets.push_back(
        sample_subset(rng, all_elements, static_cast<int>(bounded(rng, 1, max_size))));
    problem.sc.set_costs.push_back(Rat(bounded(rng, params.cost_min, params.cost_max)));
  }
  // patch uncovered elements into a random set so the instance validates
  std::vector<char> covered(params.elements, 0);
  for (const auto& set : problem.sc.sets)
    for (int j : set) covered[j] = 1;
  for (int j = 0; j < params.elements; ++j) {
    if (covered[j]) continue;
    auto& set = problem.sc.sets[static_cast<size_t>(rng() % problem.sc.sets.size())];
    set.push_back(j);
    std::sort(set.begin(), set.end());
  }
  problem.sc.build_membership();
  problem.sc.validate();

  std::vector<long> demanded(params.elements, 0);
  for (int d = 0; d < params.demands; ++d) {
    if (params.feasible_demands) {
      std::vector<int> open;
      for (int j = 0; j < params.elements; ++j)
        if (demanded[j] < static_cast<long>(problem.sc.membership[j].size())) open.push_back(j);
      if (open.empty()) break;
      int j = open[static_cast<size_t>(rng() % open.size())];
      ++demanded[j];
      problem.demands.demands.push_back(j);
    } else {
      problem.demands.demands.push_back(static_cast<int>(rng() % params.elements));
    }
  }
  return problem;
}

}  // namespace admctl
