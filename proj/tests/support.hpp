#pragma once

// Fixtures and reference oracles for the test suites. The oracles here are
// written from first principles and share no code paths with the library
// beyond the graph container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "qroute/error.hpp"
#include "qroute/netgraph.hpp"

#define CHECK_ERROR_CODE(expr, expected_code)                              \
  do {                                                                     \
    bool thrown_ = false;                                                  \
    try {                                                                  \
      (void)(expr);                                                        \
    } catch (const qroute::Error& e_) {                                    \
      thrown_ = true;                                                      \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());              \
    }                                                                      \
    CHECK_MESSAGE(thrown_, "expected an error from: " #expr);              \
  } while (0)

namespace qtest {

using namespace qroute;

inline LinkMetrics delay_only(double d) { return LinkMetrics{d, 0.0, 0.0, 0.0}; }

inline CompositeWeights delay_alpha() { return CompositeWeights(1, 0, 0, 0); }

/// e0 = 0->1 (delay 1), e1 = 1->2 (delay 1), e2 = 0->2 (delay 3).
inline WirelessGraph triangle(std::vector<Coupling> couplings = {}) {
  return WirelessGraph(3, {{0, 1, delay_only(1)}, {1, 2, delay_only(1)}, {0, 2, delay_only(3)}},
                       std::move(couplings));
}

inline std::vector<std::uint8_t> bits_of(std::initializer_list<int> v) {
  return std::vector<std::uint8_t>(v.begin(), v.end());
}

/// Independent per-node squared flow residual.
inline double flow_residual_energy(const WirelessGraph& g, const Demand& d, const std::vector<std::uint8_t>& x) {
  std::vector<double> net(g.node_count(), 0.0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!x[e]) continue;
    net[g.edges()[e].tail] += 1.0;
    net[g.edges()[e].head] -= 1.0;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const double r = net[i] - d.b[i];
    total += r * r;
  }
  return total;
}

/// True when the selected subset is exactly one simple directed s->d path.
/// Walks from s following the unique selected out-edge of each node.
inline std::optional<std::vector<std::size_t>> subset_as_path(const WirelessGraph& g, std::uint64_t mask,
                                                              std::size_t s, std::size_t d) {
  const std::size_t m = g.edge_count();
  std::vector<std::size_t> selected;
  for (std::size_t e = 0; e < m; ++e) {
    if (mask >> e & 1U) selected.push_back(e);
  }
  if (selected.empty()) return std::nullopt;
  std::vector<std::size_t> path;
  std::vector<bool> seen(g.node_count(), false);
  std::size_t v = s;
  seen[v] = true;
  while (v != d) {
    std::optional<std::size_t> next;
    for (std::size_t e : selected) {
      if (g.edges()[e].tail == v) {
        if (next) return std::nullopt;
        next = e;
      }
    }
    if (!next) return std::nullopt;
    path.push_back(*next);
    v = g.edges()[*next].head;
    if (seen[v]) return std::nullopt;
    seen[v] = true;
  }
  if (path.size() != selected.size()) return std::nullopt;
  return path;
}

/// Cost straight from the definition: weighted metric sum plus every
/// pairwise coupling among selected edges.
inline double subset_cost(const WirelessGraph& g, const CompositeWeights& a, const std::vector<std::size_t>& edges) {
  double c = 0.0;
  for (std::size_t e : edges) {
    const LinkMetrics& m = g.edges()[e].metrics;
    c += a.delay() * m.delay + a.energy() * m.energy + a.loss() * m.loss + a.interference() * m.interference;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto key = std::minmax(edges[i], edges[j]);
      auto it = g.couplings().find({key.first, key.second});
      if (it != g.couplings().end()) c += it->second;
    }
  }
  return c;
}

struct SubsetOptimum {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t path_count = 0;
};

/// Exhaustive optimum over all 2^m edge subsets.
inline SubsetOptimum subset_optimum(const WirelessGraph& g, const CompositeWeights& a, std::size_t s, std::size_t d) {
  SubsetOptimum best;
  const std::uint64_t limit = std::uint64_t{1} << g.edge_count();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    auto p = subset_as_path(g, mask, s, d);
    if (!p) continue;
    ++best.path_count;
    best.cost = std::min(best.cost, subset_cost(g, a, *p));
  }
  return best;
}

inline bool reachable(const WirelessGraph& g, std::size_t s, std::size_t d) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::size_t> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (const Edge& e : g.edges()) {
      if (e.tail == v && !seen[e.head]) {
        seen[e.head] = true;
        stack.push_back(e.head);
      }
    }
  }
  return seen[d];
}

struct RandomInstance {
  WirelessGraph graph;
  std::size_t source;
  std::size_t dest;
};

/// Random directed graph with positive metrics and a 0 -> n-1 path.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_edges,
                                      double coupling_prob) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_nodes)(rng);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v) pairs.emplace_back(u, v);
      }
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min(max_edges, pairs.size()))(rng);
    pairs.resize(m);
    std::sort(pairs.begin(), pairs.end());
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) {
      edges.push_back({u, v, LinkMetrics{0.5 + 9.5 * unit(rng), 0.1 + 2.0 * unit(rng), 0.2 * unit(rng), unit(rng)}});
    }
    std::vector<Coupling> couplings;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (unit(rng) < coupling_prob) couplings.push_back({a, b, 0.1 + 3.0 * unit(rng)});
      }
    }
    WirelessGraph g(n, std::move(edges), std::move(couplings));
    if (reachable(g, 0, n - 1)) return {std::move(g), 0, n - 1};
  }
}

}  // namespace qtest
