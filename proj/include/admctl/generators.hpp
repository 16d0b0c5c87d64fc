#pragma once

#include <cstdint>

#include "admctl/instance.hpp"

namespace admctl {

struct NetworkGenParams {
  int edges = 3;
  long cap_max = 2;        // capacities uniform in [1, cap_max]
  int requests = 8;
  long cost_min = 1;       // integer costs uniform in [cost_min, cost_max]
  long cost_max = 1;
  int max_request_edges = 0;  // 0: up to all edges
  uint64_t seed = 1;
};

NetworkProblem gen_network(const NetworkGenParams& params);

// Same request model, but the prefix of the sequence is forced through one
// edge until its excess reaches `target_excess`. With target 0 the whole
// sequence is kept within capacities.
struct HotspotGenParams {
  NetworkGenParams base;
  long target_excess = 1;
  int hotspot_edge = 0;
};

NetworkProblem gen_hotspot(const HotspotGenParams& params);

struct SetCoverGenParams {
  int elements = 4;
  int sets = 6;
  int max_set_size = 0;  // 0: up to all elements
  int demands = 5;
  bool feasible_demands = true;  // per-element demand count <= number of covering sets
  long cost_min = 1;
  long cost_max = 1;
  uint64_t seed = 1;
};

SetCoverProblem gen_setcover(const SetCoverGenParams& params);

}  // namespace admctl
