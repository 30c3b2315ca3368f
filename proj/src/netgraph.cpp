#include "qroute/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qroute/error.hpp"

namespace qroute {

namespace {

void require_finite_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

void LinkMetrics::validate() const {
  require_finite_nonneg(delay, "delay");
  require_finite_nonneg(energy, "energy");
  require_finite_nonneg(loss, "loss");
  require_finite_nonneg(interference, "interference");
  if (loss > 1.0) throw Error(ErrorCode::InvalidArgument, "loss must lie in [0, 1]");
}

CompositeWeights::CompositeWeights(double delay, double energy, double loss, double interference)
    : w_{delay, energy, loss, interference} {
  bool any_positive = false;
  for (double w : w_) {
    require_finite_nonneg(w, "alpha");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::InvalidArgument, "at least one alpha must be positive");
}

EdgePair canonical_pair(EdgeIndex a, EdgeIndex b) noexcept { return {std::min(a, b), std::max(a, b)}; }

WirelessGraph::WirelessGraph(std::size_t node_count, std::vector<Edge> edges,
                             std::vector<Coupling> couplings, double time)
    : node_count_(node_count), edges_(std::move(edges)), time_(time) {
  if (node_count_ == 0) throw Error(ErrorCode::InvalidArgument, "graph needs at least one node");
  if (edges_.empty()) throw Error(ErrorCode::InvalidArgument, "graph needs at least one edge");
  if (!std::isfinite(time_) || time_ < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "snapshot time must be finite and >= 0");
  }
  out_.resize(node_count_);
  in_.resize(node_count_);
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail >= node_count_ || edge.head >= node_count_) {
      throw Error(ErrorCode::NodeOutOfRange, "edge " + std::to_string(e) + " endpoint out of range");
    }
    if (edge.tail == edge.head) {
      throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(e) + " is a self-loop");
    }
    edge.metrics.validate();
    for (EdgeIndex other : out_[edge.tail]) {
      if (edges_[other].head == edge.head) {
        throw Error(ErrorCode::InvalidArgument, "duplicate directed edge " + std::to_string(edge.tail) +
                                                    "->" + std::to_string(edge.head));
      }
    }
    out_[edge.tail].push_back(e);
    in_[edge.head].push_back(e);
  }
  for (const Coupling& c : couplings) {
    if (c.a >= edges_.size() || c.b >= edges_.size()) {
      throw Error(ErrorCode::EdgeOutOfRange, "coupling references a missing edge");
    }
    if (c.a == c.b) throw Error(ErrorCode::InvalidArgument, "coupling needs two distinct edges");
    if (!std::isfinite(c.gamma) || c.gamma < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "coupling gamma must be finite and >= 0");
    }
    if (!couplings_.emplace(canonical_pair(c.a, c.b), c.gamma).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate coupling");
    }
  }
}

const Edge& WirelessGraph::edge(EdgeIndex e) const {
  if (e >= edges_.size()) throw Error(ErrorCode::EdgeOutOfRange, "edge " + std::to_string(e));
  return edges_[e];
}

double WirelessGraph::coupling(EdgeIndex a, EdgeIndex b) const {
  auto it = couplings_.find(canonical_pair(a, b));
  return it == couplings_.end() ? 0.0 : it->second;
}

const std::vector<EdgeIndex>& WirelessGraph::out_edges(NodeId v) const {
  if (v >= node_count_) throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(v));
  return out_[v];
}

const std::vector<EdgeIndex>& WirelessGraph::in_edges(NodeId v) const {
  if (v >= node_count_) throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(v));
  return in_[v];
}

std::optional<EdgeIndex> WirelessGraph::find_edge(NodeId tail, NodeId head) const {
  if (tail >= node_count_) return std::nullopt;
  for (EdgeIndex e : out_[tail]) {
    if (edges_[e].head == head) return e;
  }
  return std::nullopt;
}

bool WirelessGraph::operator==(const WirelessGraph& other) const {
  if (node_count_ != other.node_count_ || time_ != other.time_ || couplings_ != other.couplings_ ||
      edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& x = edges_[i];
    const Edge& y = other.edges_[i];
    if (x.tail != y.tail || x.head != y.head || x.metrics.delay != y.metrics.delay ||
        x.metrics.energy != y.metrics.energy || x.metrics.loss != y.metrics.loss ||
        x.metrics.interference != y.metrics.interference) {
      return false;
    }
  }
  return true;
}

double composite_edge_cost(const LinkMetrics& m, const CompositeWeights& alpha) noexcept {
  return alpha.delay() * m.delay + alpha.energy() * m.energy + alpha.loss() * m.loss +
         alpha.interference() * m.interference;
}

std::vector<double> edge_costs(const WirelessGraph& g, const CompositeWeights& alpha) {
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (const Edge& e : g.edges()) w.push_back(composite_edge_cost(e.metrics, alpha));
  return w;
}

double path_cost(const WirelessGraph& g, const CompositeWeights& alpha, std::span<const EdgeIndex> path) {
  double cost = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Edge& e = g.edge(path[i]);
    if (i > 0 && g.edge(path[i - 1]).head != e.tail) {
      throw Error(ErrorCode::NonContiguousPath,
                  "edge " + std::to_string(path[i - 1]) + " does not lead into edge " + std::to_string(path[i]));
    }
    cost += composite_edge_cost(e.metrics, alpha);
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) cost += g.coupling(path[i], path[j]);
  }
  return cost;
}

Demand demand_vector(NodeId source, NodeId dest, std::size_t node_count) {
  if (source >= node_count || dest >= node_count) {
    throw Error(ErrorCode::NodeOutOfRange, "demand endpoint outside the graph");
  }
  if (source == dest) throw Error(ErrorCode::SameSourceDest, "source equals destination");
  Demand d{source, dest, std::vector<int>(node_count, 0)};
  d.b[source] = 1;
  d.b[dest] = -1;
  return d;
}

std::string_view to_string(InvalidReason r) noexcept {
  switch (r) {
    case InvalidReason::Disconnected: return "Disconnected";
    case InvalidReason::Branching: return "Branching";
    case InvalidReason::ContainsCycle: return "ContainsCycle";
    case InvalidReason::WrongEndpoints: return "WrongEndpoints";
    case InvalidReason::Empty: return "Empty";
  }
  return "Unknown";
}

PathCheck validate_path(const WirelessGraph& g, std::span<const EdgeIndex> selected, NodeId source,
                        NodeId dest) {
  if (source >= g.node_count() || dest >= g.node_count()) {
    throw Error(ErrorCode::NodeOutOfRange, "path endpoint outside the graph");
  }
  std::vector<bool> in_set(g.edge_count(), false);
  std::size_t count = 0;
  for (EdgeIndex e : selected) {
    if (e >= g.edge_count()) throw Error(ErrorCode::EdgeOutOfRange, "edge " + std::to_string(e));
    if (!in_set[e]) {
      in_set[e] = true;
      ++count;
    }
  }
  if (count == 0) return PathCheck::fail(InvalidReason::Empty);

  const std::size_t n = g.node_count();
  std::vector<int> out_deg(n, 0), in_deg(n, 0);
  std::vector<EdgeIndex> next(n, 0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!in_set[e]) continue;
    const Edge& edge = g.edges()[e];
    ++out_deg[edge.tail];
    ++in_deg[edge.head];
    next[edge.tail] = e;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (out_deg[v] > 1 || in_deg[v] > 1) return PathCheck::fail(InvalidReason::Branching);
  }
  if (source == dest || out_deg[source] != 1 || in_deg[source] != 0 || in_deg[dest] != 1 ||
      out_deg[dest] != 0) {
    return PathCheck::fail(InvalidReason::WrongEndpoints);
  }

  // With every degree at most one and no in-edge at the source, the walk from
  // the source cannot revisit a node, so it stops after at most n steps.
  Path path;
  NodeId v = source;
  while (out_deg[v] == 1) {
    EdgeIndex e = next[v];
    path.push_back(e);
    v = g.edges()[e].head;
  }
  if (v != dest) return PathCheck::fail(InvalidReason::Disconnected);
  if (path.size() == count) return PathCheck::ok(std::move(path));

  // Leftover edges: a closed cycle iff every touched node is balanced.
  std::vector<bool> on_path(g.edge_count(), false);
  for (EdgeIndex e : path) on_path[e] = true;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!in_set[e] || on_path[e]) continue;
    const Edge& edge = g.edges()[e];
    if (out_deg[edge.tail] != in_deg[edge.tail] || out_deg[edge.head] != in_deg[edge.head]) {
      return PathCheck::fail(InvalidReason::Disconnected);
    }
  }
  return PathCheck::fail(InvalidReason::ContainsCycle);
}

WirelessGraph apply_link_update(const WirelessGraph& g, EdgeIndex e, const LinkMetrics& metrics, double time) {
  if (e >= g.edge_count()) throw Error(ErrorCode::EdgeOutOfRange, "edge " + std::to_string(e));
  if (!(time >= g.time())) throw Error(ErrorCode::TimeRegression, "snapshot time cannot move backwards");
  metrics.validate();
  std::vector<Edge> edges = g.edges();
  edges[e].metrics = metrics;
  std::vector<Coupling> couplings;
  couplings.reserve(g.couplings().size());
  for (const auto& [pair, gamma] : g.couplings()) couplings.push_back({pair.first, pair.second, gamma});
  return WirelessGraph(g.node_count(), std::move(edges), std::move(couplings), time);
}

}  // namespace qroute
