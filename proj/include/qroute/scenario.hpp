#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "qroute/netgraph.hpp"

namespace qroute {

/// A routing instance: graph snapshot, objective mixing, and the demand pair.
/// `defaults` holds the optional embedded "config" object verbatim.
struct Scenario {
  WirelessGraph graph;
  CompositeWeights alpha;
  NodeId source;
  NodeId dest;
  nlohmann::json defaults = nlohmann::json::object();
};

/// Parses the scenario schema; any structural or invariant violation is
/// reported as ScenarioInvalid.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

struct GeneratorSpec {
  std::size_t nodes = 6;
  double edge_prob = 0.4;
  double coupling_prob = 0.1;
  std::uint64_t seed = 0;
};

/// Seeded random directed graph with source 0 and destination nodes-1,
/// resampled until the destination is reachable. Throws GenerationFailed
/// after 1000 rejected draws.
Scenario generate_scenario(const GeneratorSpec& spec);

}  // namespace qroute
