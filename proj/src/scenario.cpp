#include "qroute/scenario.hpp"

#include <fstream>
#include <random>
#include <cmath>

#include "qroute/error.hpp"

namespace qroute {

namespace {

constexpr int kMaxGenerationAttempts = 1000;

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ScenarioInvalid, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ScenarioInvalid, std::string("field '") + key + "' has the wrong type");
  }
}

double optional_number(const nlohmann::json& j, const char* key, double fallback) {
  return j.contains(key) ? field<double>(j, key) : fallback;
}

bool reachable(std::size_t nodes, const std::vector<Edge>& edges, NodeId from, NodeId to) {
  std::vector<std::vector<NodeId>> adj(nodes);
  for (const Edge& e : edges) adj[e.tail].push_back(e.head);
  std::vector<bool> seen(nodes, false);
  std::vector<NodeId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (NodeId u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return false;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ScenarioInvalid, "scenario must be a JSON object");
  try {
    const auto nodes = field<std::size_t>(j, "nodes");
    std::vector<Edge> edges;
    for (const auto& e : field<nlohmann::json>(j, "edges")) {
      Edge edge;
      edge.tail = field<std::size_t>(e, "tail");
      edge.head = field<std::size_t>(e, "head");
      edge.metrics.delay = optional_number(e, "delay", 0.0);
      edge.metrics.energy = optional_number(e, "energy", 0.0);
      edge.metrics.loss = optional_number(e, "loss", 0.0);
      edge.metrics.interference = optional_number(e, "interference", 0.0);
      edges.push_back(edge);
    }
    std::vector<Coupling> couplings;
    if (j.contains("couplings")) {
      for (const auto& c : field<nlohmann::json>(j, "couplings")) {
        couplings.push_back({field<std::size_t>(c, "a"), field<std::size_t>(c, "b"), field<double>(c, "gamma")});
      }
    }
    const auto alpha = j.contains("alpha") ? field<std::vector<double>>(j, "alpha") : std::vector<double>{1, 1, 1, 1};
    if (alpha.size() != 4) throw Error(ErrorCode::ScenarioInvalid, "alpha needs exactly four entries");
    Scenario s{WirelessGraph(nodes, std::move(edges), std::move(couplings), optional_number(j, "time", 0.0)),
               CompositeWeights(alpha[0], alpha[1], alpha[2], alpha[3]), field<std::size_t>(j, "source"),
               field<std::size_t>(j, "dest")};
    demand_vector(s.source, s.dest, s.graph.node_count());
    if (j.contains("config")) {
      if (!j["config"].is_object()) throw Error(ErrorCode::ScenarioInvalid, "config must be an object");
      s.defaults = j["config"];
    }
    return s;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ScenarioInvalid) throw;
    throw Error(ErrorCode::ScenarioInvalid, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ScenarioInvalid, e.what());
  }
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["nodes"] = s.graph.node_count();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : s.graph.edges()) {
    nlohmann::ordered_json o;
    o["tail"] = e.tail;
    o["head"] = e.head;
    o["delay"] = e.metrics.delay;
    o["energy"] = e.metrics.energy;
    o["loss"] = e.metrics.loss;
    o["interference"] = e.metrics.interference;
    edges.push_back(std::move(o));
  }
  j["edges"] = std::move(edges);
  auto couplings = nlohmann::ordered_json::array();
  for (const auto& [pair, gamma] : s.graph.couplings()) {
    nlohmann::ordered_json o;
    o["a"] = pair.first;
    o["b"] = pair.second;
    o["gamma"] = gamma;
    couplings.push_back(std::move(o));
  }
  j["couplings"] = std::move(couplings);
  j["source"] = s.source;
  j["dest"] = s.dest;
  j["alpha"] = {s.alpha.delay(), s.alpha.energy(), s.alpha.loss(), s.alpha.interference()};
  j["time"] = s.graph.time();
  if (!s.defaults.empty()) j["config"] = nlohmann::ordered_json::parse(s.defaults.dump());
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ScenarioInvalid, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ScenarioInvalid, "'" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << scenario_to_json(s).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

Scenario generate_scenario(const GeneratorSpec& spec) {
  if (spec.nodes < 2) throw Error(ErrorCode::InvalidArgument, "need at least two nodes");
  for (double p : {spec.edge_prob, spec.coupling_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "probabilities must lie in [0, 1]");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) {
    // Rounded to four decimals.
    return std::round((lo + (hi - lo) * unit(rng)) * 1e4) / 1e4;
  };
  const NodeId source = 0;
  const NodeId dest = spec.nodes - 1;
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < spec.nodes; ++u) {
      for (NodeId v = 0; v < spec.nodes; ++v) {
        if (u == v || unit(rng) >= spec.edge_prob) continue;
        edges.push_back({u, v, LinkMetrics{uniform(1.0, 10.0), uniform(0.1, 2.0), uniform(0.0, 0.2), uniform(0.0, 1.0)}});
      }
    }
    if (edges.empty() || !reachable(spec.nodes, edges, source, dest)) continue;
    std::vector<Coupling> couplings;
    for (EdgeIndex a = 0; a < edges.size(); ++a) {
      for (EdgeIndex b = a + 1; b < edges.size(); ++b) {
        if (unit(rng) < spec.coupling_prob) couplings.push_back({a, b, uniform(0.1, 2.0)});
      }
    }
    return Scenario{WirelessGraph(spec.nodes, std::move(edges), std::move(couplings), 0.0),
                    CompositeWeights(1.0, 1.0, 1.0, 1.0), source, dest};
  }
  throw Error(ErrorCode::GenerationFailed,
              "no connected instance after " + std::to_string(kMaxGenerationAttempts) + " draws");
}

}  // namespace qroute
