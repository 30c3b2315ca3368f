#include "qroute/grover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qroute/error.hpp"

namespace qroute {

namespace {

constexpr std::size_t kRetries = 3;

std::size_t pad_to_power_of_two(std::size_t count) { return std::max<std::size_t>(2, std::bit_ceil(count)); }

}  // namespace

CandidateSpace::CandidateSpace(std::vector<Path> paths, std::vector<double> costs)
    : paths_(std::move(paths)), costs_(std::move(costs)), padded_(0) {
  if (costs_.empty()) throw Error(ErrorCode::NoPathExists, "empty candidate space");
  if (!paths_.empty() && paths_.size() != costs_.size()) {
    throw Error(ErrorCode::SizeMismatch, "path and cost counts differ");
  }
  for (double c : costs_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "candidate costs must be finite");
  }
  padded_ = pad_to_power_of_two(costs_.size());
  if (n_qubits() > qubit_cap()) throw Error(ErrorCode::QubitLimitExceeded, "candidate space too large to simulate");
}

CandidateSpace CandidateSpace::from_costs(std::vector<double> costs) { return CandidateSpace({}, std::move(costs)); }

std::size_t CandidateSpace::n_qubits() const noexcept { return static_cast<std::size_t>(std::countr_zero(padded_)); }

std::vector<std::size_t> CandidateSpace::marked_below(double threshold) const {
  std::vector<std::size_t> marked;
  for (std::size_t x = 0; x < costs_.size(); ++x) {
    if (costs_[x] < threshold) marked.push_back(x);
  }
  return marked;
}

CandidateSpace enumerate_paths(const WirelessGraph& g, const CompositeWeights& alpha, NodeId source, NodeId dest,
                               std::size_t max_hops) {
  if (max_hops == 0) throw Error(ErrorCode::InvalidArgument, "max_hops must be >= 1");
  if (source >= g.node_count() || dest >= g.node_count()) {
    throw Error(ErrorCode::NodeOutOfRange, "path endpoint outside the graph");
  }
  std::vector<Path> paths;
  std::vector<bool> visited(g.node_count(), false);
  Path current;
  // Out-edges are visited in ascending index order, and no complete path is a
  // prefix of another, so discovery order is lexicographic.
  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (v == dest) {
      paths.push_back(current);
      return;
    }
    if (current.size() == max_hops) return;
    visited[v] = true;
    for (EdgeIndex e : g.out_edges(v)) {
      const NodeId next = g.edges()[e].head;
      if (visited[next]) continue;
      current.push_back(e);
      self(self, next);
      current.pop_back();
    }
    visited[v] = false;
  };
  if (source != dest) dfs(dfs, source);
  if (paths.empty()) throw Error(ErrorCode::NoPathExists, "no simple path within the hop bound");
  std::vector<double> costs;
  costs.reserve(paths.size());
  for (const Path& p : paths) costs.push_back(path_cost(g, alpha, p));
  return CandidateSpace(std::move(paths), std::move(costs));
}

void grover_iterate_inplace(StateVector& state, std::span<const std::size_t> marked) {
  if (marked.empty()) throw Error(ErrorCode::EmptyMarkedSet, "oracle marks nothing");
  auto amps = state.amplitudes();
  for (std::size_t x : marked) {
    if (x >= amps.size()) throw Error(ErrorCode::SizeMismatch, "marked index outside the state");
  }
  for (std::size_t x : marked) amps[x] = -amps[x];
  // D = 2|u><u| - I maps a -> 2 mean(a) - a.
  Complex mean = 0.0;
  for (const Complex& a : amps) mean += a;
  mean /= static_cast<double>(amps.size());
  for (Complex& a : amps) a = 2.0 * mean - a;
}

StateVector grover_iterate(StateVector state, std::span<const std::size_t> marked) {
  grover_iterate_inplace(state, marked);
  return state;
}

std::size_t optimal_iterations(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw Error(ErrorCode::InvalidCounts, "need 1 <= M <= N");
  if (m == n) return 0;
  const double k = std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n) / static_cast<double>(m)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

ThresholdResult threshold_search(const CandidateSpace& space, double threshold, Rng& rng) {
  ThresholdResult r;
  const std::vector<std::size_t> marked = space.marked_below(threshold);
  if (marked.empty()) return r;
  r.iterations = optimal_iterations(space.padded_size(), marked.size());

  for (std::size_t attempt = 0; attempt <= kRetries; ++attempt) {
    StateVector state = plus_state(space.n_qubits());
    for (std::size_t k = 0; k < r.iterations; ++k) grover_iterate_inplace(state, marked);
    r.oracle_calls += r.iterations;
    const std::vector<double> probs = state.probabilities();
    const std::size_t x = sample_distribution(probs, 1, rng).begin()->first;
    ++r.measurements;
    if (!space.is_padding(x)) ++r.valid_measurements;
    if (!space.is_padding(x) && space.costs()[x] < threshold) {
      r.found = true;
      r.index = x;
      return r;
    }
  }
  r.found = true;
  r.index = marked.front();
  r.fallback_used = true;
  return r;
}

ThresholdResult threshold_search(const CandidateSpace& space, double threshold, std::uint64_t seed) {
  Rng rng(seed);
  return threshold_search(space, threshold, rng);
}

MinimumResult minimum_finding(const CandidateSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, space.count() - 1);
  MinimumResult m;
  m.index = pick(rng);
  m.cost = space.costs()[m.index];
  for (;;) {
    const ThresholdResult step = threshold_search(space, m.cost, rng);
    ++m.rounds;
    m.oracle_calls += step.oracle_calls;
    m.max_iterations = std::max(m.max_iterations, step.iterations);
    m.measurements += step.measurements;
    m.valid_measurements += step.valid_measurements;
    m.fallback_used = m.fallback_used || step.fallback_used;
    if (!step.found) break;
    m.index = step.index;
    m.cost = space.costs()[step.index];
  }
  return m;
}

}  // namespace qroute
