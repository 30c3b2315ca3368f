#include "qroute/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "qroute/error.hpp"

namespace qroute {

namespace {

void check_endpoints(const WirelessGraph& g, NodeId source, NodeId dest) {
  if (source >= g.node_count() || dest >= g.node_count()) {
    throw Error(ErrorCode::NodeOutOfRange, "path endpoint outside the graph");
  }
  if (source == dest) throw Error(ErrorCode::SameSourceDest, "source equals destination");
}

}  // namespace

BaselineResult dijkstra(const WirelessGraph& g, const CompositeWeights& alpha, NodeId source, NodeId dest) {
  check_endpoints(g, source, dest);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr EdgeIndex kNone = std::numeric_limits<EdgeIndex>::max();
  const std::vector<double> w = edge_costs(g, alpha);
  std::vector<double> dist(g.node_count(), kInf);
  std::vector<EdgeIndex> pred(g.node_count(), kNone);
  std::vector<bool> done(g.node_count(), false);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  BaselineResult r;
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    ++r.work;
    if (v == dest) break;
    for (EdgeIndex e : g.out_edges(v)) {
      const NodeId u = g.edges()[e].head;
      if (done[u]) continue;
      const double nd = d + w[e];
      if (nd < dist[u] || (nd == dist[u] && e < pred[u])) {
        dist[u] = nd;
        pred[u] = e;
        queue.emplace(nd, u);
      }
    }
  }
  if (!done[dest]) throw Error(ErrorCode::NoPathExists, "no path from source to destination");
  for (NodeId v = dest; v != source; v = g.edges()[pred[v]].tail) r.path.push_back(pred[v]);
  std::reverse(r.path.begin(), r.path.end());
  r.additive_cost = dist[dest];
  r.cost = path_cost(g, alpha, r.path);
  return r;
}

BaselineResult brute_force_best_path(const WirelessGraph& g, const CompositeWeights& alpha, NodeId source,
                                     NodeId dest) {
  check_endpoints(g, source, dest);
  BaselineResult best;
  bool found = false;
  std::size_t evaluated = 0;
  std::vector<bool> visited(g.node_count(), false);
  Path current;
  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (v == dest) {
      ++evaluated;
      const double c = path_cost(g, alpha, current);
      // Discovery order is lexicographic, so strict improvement keeps the
      // smallest sequence among ties.
      if (!found || c < best.cost) {
        best.path = current;
        best.cost = c;
        found = true;
      }
      return;
    }
    visited[v] = true;
    for (EdgeIndex e : g.out_edges(v)) {
      const NodeId u = g.edges()[e].head;
      if (visited[u]) continue;
      current.push_back(e);
      self(self, u);
      current.pop_back();
    }
    visited[v] = false;
  };
  dfs(dfs, source);
  if (!found) throw Error(ErrorCode::NoPathExists, "no path from source to destination");
  const std::vector<double> w = edge_costs(g, alpha);
  for (EdgeIndex e : best.path) best.additive_cost += w[e];
  best.work = evaluated;
  return best;
}

GroundState brute_force_ground_state(const QuboModel& model) {
  if (model.num_vars() > kMaxBruteForceVars) {
    throw Error(ErrorCode::TooManyVariables,
                std::to_string(model.num_vars()) + " variables exceeds " + std::to_string(kMaxBruteForceVars));
  }
  const std::size_t dim = std::size_t{1} << model.num_vars();
  std::vector<double> energies(dim);
  double min_e = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < dim; ++x) {
    energies[x] = model.energy(x);
    min_e = std::min(min_e, energies[x]);
  }
  GroundState gs;
  gs.min_energy = min_e;
  gs.evaluated = dim;
  const double tol = 1e-9 * std::max(1.0, std::abs(min_e));
  for (std::size_t x = 0; x < dim; ++x) {
    if (energies[x] - min_e <= tol) gs.minimizers.push_back(x);
  }
  return gs;
}

double approximation_ratio(double candidate_cost, double optimal_cost) {
  if (!std::isfinite(optimal_cost) || optimal_cost <= 0.0) {
    throw Error(ErrorCode::InvalidOptimum, "optimal cost must be positive");
  }
  if (!std::isfinite(candidate_cost) || candidate_cost < optimal_cost - 1e-12) {
    throw Error(ErrorCode::InfeasibleCandidate, "candidate cost below the optimum");
  }
  return std::max(1.0, candidate_cost / optimal_cost);
}

}  // namespace qroute
