#include "admctl/reduction.hpp"

#include <algorithm>
#include <set>

namespace admctl {

Reduction build_reduction(const SetCoverInstance& sc) {
  sc.validate();
  Reduction red;
  red.map.element_count = sc.element_count;
  red.map.set_count = sc.set_count();
  red.net.edge_count = sc.element_count;
  red.net.capacities.resize(sc.element_count);
  for (int j = 0; j < sc.element_count; ++j)
    red.net.capacities[j] = static_cast<long>(sc.membership[j].size());
  red.net.max_capacity =
      *std::max_element(red.net.capacities.begin(), red.net.capacities.end());
  red.net.validate();

  for (int s = 0; s < sc.set_count(); ++s) {
    Request r;
    r.id = s;
    r.edges = sc.sets[s];  // element ids double as edge ids
    r.cost = sc.set_costs[s];
    r.phase = 1;
    red.phase1.push_back(std::move(r));
    red.map.phase1_total_cost += sc.set_costs[s];
  }
  red.map.phase2_cost = 1 + red.map.phase1_total_cost;
  return red;
}

Request demand_to_request(const ReductionMap& map, int element, int next_id) {
  if (element < 0 || element >= map.element_count)
    throw std::invalid_argument("demand for unknown element " + std::to_string(element));
  Request r;
  r.id = next_id;
  r.edges = {element};
  r.cost = map.phase2_cost;
  r.phase = 2;
  return r;
}

ExtractedCover extract_cover(const DecisionTrace& trace, const ReductionMap& map) {
  ExtractedCover out;
  std::set<int> chosen, violated;
  for (const TraceEvent& ev : trace.events()) {
    bool rejection = ev.kind == EventKind::RejectImmediate || ev.kind == EventKind::Preempt ||
                     ev.kind == EventKind::RejectOnArrival;
    if (!rejection) continue;
    if (ev.subject < map.set_count)
      chosen.insert(static_cast<int>(ev.subject));
    else
      violated.insert(static_cast<int>(ev.subject));
  }
  out.chosen_sets.assign(chosen.begin(), chosen.end());
  out.phase2_rejections.assign(violated.begin(), violated.end());
  return out;
}

MulticoverCheck verify_multicover(const SetCoverInstance& sc, const DemandSequence& demands,
                                  const std::vector<int>& cover) {
  std::vector<long> covered(sc.element_count, 0);
  std::set<int> distinct(cover.begin(), cover.end());
  for (int s : distinct)
    for (int j : sc.sets.at(s)) ++covered[j];
  std::vector<long> needed = demands.final_counts(sc.element_count);
  MulticoverCheck check;
  for (int j = 0; j < sc.element_count; ++j) {
    if (covered[j] >= needed[j]) continue;
    check.valid = false;
    check.element = j;
    check.deficit = needed[j] - covered[j];
    return check;
  }
  return check;
}

}  // namespace admctl
