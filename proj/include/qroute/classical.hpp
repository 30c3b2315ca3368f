#pragma once

#include <cstddef>
#include <vector>

#include "qroute/encoding.hpp"
#include "qroute/netgraph.hpp"

namespace qroute {

struct BaselineResult {
  Path path;
  double cost = 0.0;            // path_cost, couplings included
  double additive_cost = 0.0;   // sum of composite edge costs only
  std::size_t work = 0;         // states expanded / paths evaluated
};

/// Additive shortest path. Couplings are ignored during the search; `cost`
/// reports what the chosen route really costs once they are added back.
/// Equal-distance ties go to the smaller predecessor edge index.
BaselineResult dijkstra(const WirelessGraph& g, const CompositeWeights& alpha, NodeId source, NodeId dest);

/// Exhaustive simple-path search minimizing path_cost including couplings;
/// ties go to the lexicographically smallest edge sequence.
BaselineResult brute_force_best_path(const WirelessGraph& g, const CompositeWeights& alpha, NodeId source,
                                     NodeId dest);

struct GroundState {
  std::vector<BasisIndex> minimizers;  // ascending
  double min_energy = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kMaxBruteForceVars = 24;

/// All argmin bitstrings of the model, found by full enumeration. Energies
/// within 1e-9 (relative, floor 1) of the minimum count as ties.
GroundState brute_force_ground_state(const QuboModel& model);

/// candidate / optimal. Throws InvalidOptimum for optimal <= 0 and
/// InfeasibleCandidate when the candidate undercuts the optimum.
double approximation_ratio(double candidate_cost, double optimal_cost);

}  // namespace qroute
