#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qroute {

using NodeId = std::size_t;
using EdgeIndex = std::size_t;
using Path = std::vector<EdgeIndex>;

/// Per-link measurements. Units are abstract; only relative magnitudes matter.
struct LinkMetrics {
  double delay = 0.0;
  double energy = 0.0;
  double loss = 0.0;  // in [0, 1]
  double interference = 0.0;

  /// Throws InvalidArgument on non-finite, negative, or loss > 1.
  void validate() const;
};

/// Mixing coefficients of the composite link cost. At least one must be positive.
class CompositeWeights {
 public:
  CompositeWeights(double delay, double energy, double loss, double interference);

  double delay() const noexcept { return w_[0]; }
  double energy() const noexcept { return w_[1]; }
  double loss() const noexcept { return w_[2]; }
  double interference() const noexcept { return w_[3]; }

  bool operator==(const CompositeWeights&) const = default;

 private:
  double w_[4];
};

struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  LinkMetrics metrics;
};

struct Coupling {
  EdgeIndex a = 0;
  EdgeIndex b = 0;
  double gamma = 0.0;
};

/// Unordered edge pair, stored as (min, max).
using EdgePair = std::pair<EdgeIndex, EdgeIndex>;

EdgePair canonical_pair(EdgeIndex a, EdgeIndex b) noexcept;

/// Immutable directed snapshot of the network at time `time()`.
///
/// Edge order is the canonical variable order for every encoding built on
/// top of the graph: variable k (qubit k, bit k) is edge k.
class WirelessGraph {
 public:
  WirelessGraph(std::size_t node_count, std::vector<Edge> edges,
                std::vector<Coupling> couplings = {}, double time = 0.0);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  double time() const noexcept { return time_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeIndex e) const;
  const std::map<EdgePair, double>& couplings() const noexcept { return couplings_; }

  /// Coupling strength between two edges, 0 when none is declared.
  double coupling(EdgeIndex a, EdgeIndex b) const;

  /// Edge indices leaving / entering a node, ascending.
  const std::vector<EdgeIndex>& out_edges(NodeId v) const;
  const std::vector<EdgeIndex>& in_edges(NodeId v) const;

  std::optional<EdgeIndex> find_edge(NodeId tail, NodeId head) const;

  bool operator==(const WirelessGraph& other) const;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::map<EdgePair, double> couplings_;
  double time_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
};

/// Net flow demand of a single source-destination pair.
struct Demand {
  NodeId source = 0;
  NodeId dest = 0;
  std::vector<int> b;
};

double composite_edge_cost(const LinkMetrics& m, const CompositeWeights& alpha) noexcept;

/// Composite cost of every edge, in edge order.
std::vector<double> edge_costs(const WirelessGraph& g, const CompositeWeights& alpha);

/// Sum of composite edge costs plus every pairwise coupling between edges on
/// the path. Throws NonContiguousPath when consecutive edges do not chain.
double path_cost(const WirelessGraph& g, const CompositeWeights& alpha, std::span<const EdgeIndex> path);

Demand demand_vector(NodeId source, NodeId dest, std::size_t node_count);

enum class InvalidReason { Disconnected, Branching, ContainsCycle, WrongEndpoints, Empty };

std::string_view to_string(InvalidReason r) noexcept;

struct PathCheck {
  bool valid = false;
  Path path;  // ordered s -> d when valid
  InvalidReason reason = InvalidReason::Empty;

  static PathCheck ok(Path p) { return {true, std::move(p), InvalidReason::Empty}; }
  static PathCheck fail(InvalidReason r) { return {false, {}, r}; }
};

/// Valid iff the selected edges form exactly one simple directed path from
/// `source` to `dest`, with nothing left over. Duplicate indices are ignored.
PathCheck validate_path(const WirelessGraph& g, std::span<const EdgeIndex> selected, NodeId source,
                        NodeId dest);

/// New snapshot with one edge's metrics replaced; the input is untouched.
WirelessGraph apply_link_update(const WirelessGraph& g, EdgeIndex e, const LinkMetrics& metrics,
                                double time);

}  // namespace qroute
