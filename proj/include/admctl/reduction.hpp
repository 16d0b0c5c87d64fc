#pragma once

#include <vector>

#include "admctl/instance.hpp"
#include "admctl/trace.hpp"

namespace admctl {

// Multicover instance compiled into admission control: one edge per element
// with capacity equal to the number of sets containing it, one phase-1
// request per set, and one single-edge phase-2 request per demand.
struct ReductionMap {
  int element_count = 0;  // edges of the reduced network
  int set_count = 0;      // phase-1 requests; request id == set id
  Rat phase1_total_cost = 0;
  // Phase-2 requests cost more than all of phase 1 combined, so any
  // cost-sensitive algorithm strictly prefers rejecting phase-1 requests.
  Rat phase2_cost = 0;
};

struct Reduction {
  NetworkInstance net;
  std::vector<Request> phase1;  // in set-id order
  ReductionMap map;
};

Reduction build_reduction(const SetCoverInstance& sc);

// The k-th phase-2 request for element j; ids continue after phase 1.
Request demand_to_request(const ReductionMap& map, int element, int next_id);

struct ExtractedCover {
  std::vector<int> chosen_sets;        // sets whose phase-1 request got rejected
  std::vector<int> phase2_rejections;  // rejected phase-2 request ids (violations)
};

ExtractedCover extract_cover(const DecisionTrace& trace, const ReductionMap& map);

struct MulticoverCheck {
  bool valid = true;
  int element = -1;  // first failing element when invalid
  long deficit = 0;
};

MulticoverCheck verify_multicover(const SetCoverInstance& sc, const DemandSequence& demands,
                                  const std::vector<int>& cover);

}  // namespace admctl
