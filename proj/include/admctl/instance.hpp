#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "admctl/rational.hpp"

namespace admctl {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A demand arrived more often than the family can possibly serve it.
struct InfeasibleDemand : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge-capacitated network, reduced to what the algorithms actually use: a
// dense edge-id space with integer capacities. Topology is irrelevant since
// requests are arbitrary edge subsets.
struct NetworkInstance {
  int edge_count = 0;            // m
  std::vector<long> capacities;  // indexed by edge id
  long max_capacity = 0;         // c = max capacity, kept consistent

  void validate() const;
};

struct Request {
  int id = 0;
  std::vector<int> edges;  // sorted, unique, nonempty
  Rat cost;                // > 0
  int phase = 1;           // reduction bookkeeping; 1 unless generated in phase two
};

struct NetworkProblem {
  NetworkInstance net;
  std::vector<Request> requests;  // in arrival order, ids dense from 0
};

NetworkProblem load_network(const std::string& text);
std::string serialize_network(const NetworkProblem& problem);

struct SetCoverInstance {
  int element_count = 0;                     // n
  std::vector<std::vector<int>> sets;        // element lists, sorted unique
  std::vector<Rat> set_costs;                // positive
  std::vector<std::vector<int>> membership;  // element -> ids of sets containing it

  int set_count() const { return static_cast<int>(sets.size()); }
  void build_membership();
  void validate() const;
};

struct DemandSequence {
  std::vector<int> demands;  // element ids, repetitions allowed

  std::vector<long> final_counts(int element_count) const;
};

struct SetCoverProblem {
  SetCoverInstance sc;
  DemandSequence demands;
};

SetCoverProblem load_setcover(const std::string& text);
std::string serialize_setcover(const SetCoverProblem& problem);

// Q: the largest amount by which the request multiset overfills an edge,
// floored at zero. For unit costs the offline optimum must reject at least
// this many requests.
long max_excess(const NetworkInstance& net, const std::vector<Request>& requests);

}  // namespace admctl
