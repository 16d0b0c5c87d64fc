#include "admctl/instance.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace admctl {

using nlohmann::json;

void NetworkInstance::validate() const {
  if (edge_count <= 0) throw ParseError("edge_count: must be positive");
  if (static_cast<int>(capacities.size()) != edge_count)
    throw ParseError("capacities: expected one entry per edge id 0.." +
                     std::to_string(edge_count - 1));
  long maxc = 0;
  for (int e = 0; e < edge_count; ++e) {
    if (capacities[e] < 1)
      throw ParseError("edges[" + std::to_string(e) + "].cap: capacity must be >= 1");
    maxc = std::max(maxc, capacities[e]);
  }
  if (max_capacity != maxc)
    throw ParseError("max_capacity: inconsistent with capacities");
}

namespace {

Rat parse_cost(const json& value, const std::string& locus) {
  try {
    if (value.is_number_integer()) return Rat(static_cast<long>(value.get<long long>()));
    if (value.is_string()) return rat_parse(value.get<std::string>());
  } catch (const std::exception&) {
    throw ParseError(locus + ": bad rational literal");
  }
  throw ParseError(locus + ": cost must be an integer or a \"p/q\"/decimal string");
}

std::vector<int> parse_id_array(const json& arr, int limit, const std::string& locus,
                                const std::string& range_message) {
  if (!arr.is_array() || arr.empty())
    throw ParseError(locus + ": expected a nonempty array");
  std::vector<int> ids;
  std::set<int> seen;
  for (size_t k = 0; k < arr.size(); ++k) {
    const std::string at = locus + "[" + std::to_string(k) + "]";
    if (!arr[k].is_number_integer()) throw ParseError(at + ": expected an integer");
    long long v = arr[k].get<long long>();
    if (v < 0 || v >= limit) throw ParseError(at + ": " + range_message);
    if (!seen.insert(static_cast<int>(v)).second)
      throw ParseError(at + ": duplicate id");
    ids.push_back(static_cast<int>(v));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("document: not valid JSON");
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  return doc;
}

}  // namespace

NetworkProblem load_network(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.contains("edges") || !doc["edges"].is_array() || doc["edges"].empty())
    throw ParseError("edges: expected a nonempty array");

  NetworkProblem problem;
  const json& edges = doc["edges"];
  int m = static_cast<int>(edges.size());
  problem.net.edge_count = m;
  problem.net.capacities.assign(m, 0);
  std::vector<char> present(m, 0);
  for (size_t k = 0; k < edges.size(); ++k) {
    const std::string at = "edges[" + std::to_string(k) + "]";
    const json& edge = edges[k];
    if (!edge.is_object() || !edge.contains("id") || !edge.contains("cap"))
      throw ParseError(at + ": expected {\"id\":..., \"cap\":...}");
    if (!edge["id"].is_number_integer() || !edge["cap"].is_number_integer())
      throw ParseError(at + ": id and cap must be integers");
    long long id = edge["id"].get<long long>();
    long long cap = edge["cap"].get<long long>();
    if (id < 0 || id >= m) throw ParseError(at + ".id: edge ids must be dense 0..m-1");
    if (present[id]) throw ParseError(at + ".id: duplicate edge id");
    if (cap < 1) throw ParseError(at + ".cap: capacity must be >= 1");
    present[id] = 1;
    problem.net.capacities[id] = static_cast<long>(cap);
  }
  problem.net.max_capacity =
      *std::max_element(problem.net.capacities.begin(), problem.net.capacities.end());
  problem.net.validate();

  if (doc.contains("requests")) {
    const json& requests = doc["requests"];
    if (!requests.is_array()) throw ParseError("requests: expected an array");
    for (size_t k = 0; k < requests.size(); ++k) {
      const std::string at = "requests[" + std::to_string(k) + "]";
      const json& req = requests[k];
      if (!req.is_object() || !req.contains("edges") || !req.contains("cost"))
        throw ParseError(at + ": expected {\"edges\":[...], \"cost\":...}");
      Request r;
      r.id = static_cast<int>(k);
      r.edges = parse_id_array(req["edges"], m, at + ".edges", "edge id out of range");
      r.cost = parse_cost(req["cost"], at + ".cost");
      if (r.cost <= 0) throw ParseError(at + ".cost: must be positive");
      if (req.contains("phase")) {
        if (!req["phase"].is_number_integer()) throw ParseError(at + ".phase: expected 1 or 2");
        long long phase = req["phase"].get<long long>();
        if (phase != 1 && phase != 2) throw ParseError(at + ".phase: expected 1 or 2");
        r.phase = static_cast<int>(phase);
      }
      problem.requests.push_back(std::move(r));
    }
  }
  return problem;
}

std::string serialize_network(const NetworkProblem& problem) {
  json doc;
  doc["edges"] = json::array();
  for (int e = 0; e < problem.net.edge_count; ++e)
    doc["edges"].push_back({{"id", e}, {"cap", problem.net.capacities[e]}});
  doc["requests"] = json::array();
  for (const Request& r : problem.requests) {
    json req;
    req["edges"] = r.edges;
    req["cost"] = rat_str(r.cost);
    if (r.phase != 1) req["phase"] = r.phase;
    doc["requests"].push_back(std::move(req));
  }
  return doc.dump();
}

void SetCoverInstance::build_membership() {
  membership.assign(element_count, {});
  for (int s = 0; s < set_count(); ++s)
    for (int j : sets[s]) membership[j].push_back(s);
}

void SetCoverInstance::validate() const {
  if (element_count <= 0) throw ParseError("n: must be positive");
  if (sets.empty()) throw ParseError("sets: expected a nonempty array");
  if (set_costs.size() != sets.size() ||
      static_cast<int>(membership.size()) != element_count)
    throw ParseError("setcover: inconsistent derived data");
  for (size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].empty()) throw ParseError("sets[" + std::to_string(s) + "]: empty set");
    if (set_costs[s] <= 0)
      throw ParseError("sets[" + std::to_string(s) + "].cost: must be positive");
  }
  // membership must match the family, and every element must be coverable
  std::vector<std::vector<int>> rebuilt(element_count);
  for (int s = 0; s < set_count(); ++s)
    for (int j : sets[s]) rebuilt[j].push_back(s);
  for (int j = 0; j < element_count; ++j) {
    if (rebuilt[j].empty())
      throw ParseError("element " + std::to_string(j) + ": uncoverable element");
    if (rebuilt[j] != membership[j])
      throw ParseError("membership: inconsistent with sets");
  }
}

std::vector<long> DemandSequence::final_counts(int element_count) const {
  std::vector<long> counts(element_count, 0);
  for (int j : demands) counts[j] += 1;
  return counts;
}

SetCoverProblem load_setcover(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
    throw ParseError("n: expected a positive integer");
  SetCoverProblem problem;
  problem.sc.element_count = static_cast<int>(doc["n"].get<long long>());
  if (!doc.contains("sets") || !doc["sets"].is_array() || doc["sets"].empty())
    throw ParseError("sets: expected a nonempty array");
  const json& sets = doc["sets"];
  for (size_t s = 0; s < sets.size(); ++s) {
    const std::string at = "sets[" + std::to_string(s) + "]";
    const json& set = sets[s];
    if (!set.is_object() || !set.contains("elements") || !set.contains("cost"))
      throw ParseError(at + ": expected {\"elements\":[...], \"cost\":...}");
    problem.sc.sets.push_back(parse_id_array(set["elements"], problem.sc.element_count,
                                             at + ".elements", "element id out of range"));
    Rat cost = parse_cost(set["cost"], at + ".cost");
    if (cost <= 0) throw ParseError(at + ".cost: must be positive");
    problem.sc.set_costs.push_back(std::move(cost));
  }
  problem.sc.build_membership();
  problem.sc.validate();

  if (doc.contains("demands")) {
    const json& demands = doc["demands"];
    if (!demands.is_array()) throw ParseError("demands: expected an array");
    for (size_t k = 0; k < demands.size(); ++k) {
      const std::string at = "demands[" + std::to_string(k) + "]";
      if (!demands[k].is_number_integer()) throw ParseError(at + ": expected an integer");
      long long j = demands[k].get<long long>();
      if (j < 0 || j >= problem.sc.element_count)
        throw ParseError(at + ": demand for unknown element");
      problem.demands.demands.push_back(static_cast<int>(j));
    }
  }
  return problem;
}

std::string serialize_setcover(const SetCoverProblem& problem) {
  json doc;
  doc["n"] = problem.sc.element_count;
  doc["sets"] = json::array();
  for (int s = 0; s < problem.sc.set_count(); ++s)
    doc["sets"].push_back(
        {{"elements", problem.sc.sets[s]}, {"cost", rat_str(problem.sc.set_costs[s])}});
  doc["demands"] = problem.demands.demands;
  return doc.dump();
}

long max_excess(const NetworkInstance& net, const std::vector<Request>& requests) {
  std::vector<long> count(net.edge_count, 0);
  for (const Request& r : requests)
    for (int e : r.edges) count[e] += 1;
  long q = 0;
  for (int e = 0; e < net.edge_count; ++e)
    q = std::max(q, count[e] - net.capacities[e]);
  return q;
}

}  // namespace admctl
