#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qroute/netgraph.hpp"
#include "qroute/statevec.hpp"

namespace qroute {

/// Classically enumerated search domain indexed 0..N-1. Indices at or past
/// count() are padding and never satisfy any oracle.
class CandidateSpace {
 public:
  CandidateSpace(std::vector<Path> paths, std::vector<double> costs);
  /// Bare cost table (paths left empty); used for synthetic search tests.
  static CandidateSpace from_costs(std::vector<double> costs);

  std::size_t count() const noexcept { return costs_.size(); }
  std::size_t padded_size() const noexcept { return padded_; }
  std::size_t n_qubits() const noexcept;
  const std::vector<Path>& paths() const noexcept { return paths_; }
  const std::vector<double>& costs() const noexcept { return costs_; }
  bool is_padding(std::size_t index) const noexcept { return index >= costs_.size(); }

  /// {x < count : cost_x < threshold}, ascending.
  std::vector<std::size_t> marked_below(double threshold) const;

 private:
  std::vector<Path> paths_;
  std::vector<double> costs_;
  std::size_t padded_;
};

/// Simple s -> d paths with at most `max_hops` edges, in lexicographic order
/// of their edge-index sequences. Throws NoPathExists when none exist.
CandidateSpace enumerate_paths(const WirelessGraph& g, const CompositeWeights& alpha, NodeId source, NodeId dest,
                               std::size_t max_hops);

/// Oracle phase flip on `marked`, then reflection about the uniform state.
void grover_iterate_inplace(StateVector& state, std::span<const std::size_t> marked);
StateVector grover_iterate(StateVector state, std::span<const std::size_t> marked);

/// floor(pi/4 sqrt(N/M)), at least 1 when M < N, and 0 when M == N.
std::size_t optimal_iterations(std::size_t n, std::size_t m);

struct ThresholdResult {
  bool found = false;
  std::size_t index = 0;
  std::size_t iterations = 0;     // Grover steps per attempt
  std::size_t oracle_calls = 0;   // over all attempts
  std::size_t measurements = 0;
  std::size_t valid_measurements = 0;  // sampled index was a real candidate
  bool fallback_used = false;
};

/// Marks cost < threshold, amplifies, measures once and verifies classically.
/// Up to three re-runs on a failed verification, then a classical scan.
ThresholdResult threshold_search(const CandidateSpace& space, double threshold, std::uint64_t seed);
ThresholdResult threshold_search(const CandidateSpace& space, double threshold, Rng& rng);

struct MinimumResult {
  std::size_t index = 0;
  double cost = 0.0;
  std::size_t oracle_calls = 0;
  std::size_t rounds = 0;
  std::size_t max_iterations = 0;  // deepest single Grover circuit run
  std::size_t measurements = 0;
  std::size_t valid_measurements = 0;
  bool fallback_used = false;
};

/// Threshold descent from a random start until no candidate beats the
/// current best; exact because every improvement is verified classically.
MinimumResult minimum_finding(const CandidateSpace& space, std::uint64_t seed);

}  // namespace qroute
