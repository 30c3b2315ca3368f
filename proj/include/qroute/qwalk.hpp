#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qroute/netgraph.hpp"

namespace qroute {

inline constexpr std::size_t kMaxWalkNodes = 256;

enum class WalkKind { Adjacency, Laplacian, WeightedAdjacency };

std::string_view to_string(WalkKind k) noexcept;
WalkKind parse_walk_kind(std::string_view s);

/// Real symmetric generator on node space, with its eigendecomposition
/// H = Q diag(lambda) Q^T computed once at construction.
class WalkHamiltonian {
 public:
  WalkHamiltonian(WalkKind kind, Eigen::MatrixXd matrix);

  WalkKind kind() const noexcept { return kind_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return q_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return lambda_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// max |Q diag(lambda) Q^T - H|.
  double reconstruction_error() const;

 private:
  WalkKind kind_;
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd q_;
  Eigen::VectorXd lambda_;
};

class WalkState {
 public:
  explicit WalkState(Eigen::VectorXcd amplitudes);
  static WalkState at_node(std::size_t dimension, NodeId v);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }

 private:
  Eigen::VectorXcd amps_;
};

/// Undirected view of the graph: u~v when either direction exists. The
/// weighted kind uses the composite cost, averaged over present directions.
Eigen::MatrixXd symmetric_adjacency(const WirelessGraph& g, const CompositeWeights* alpha);

WalkHamiltonian build_walk_hamiltonian(const WirelessGraph& g, WalkKind kind, const CompositeWeights& alpha);

/// exp(-iHt) |state>.
WalkState evolve(const WalkState& state, const WalkHamiltonian& h, double t);

double arrival_probability(const WalkState& state, NodeId v);

/// Heat kernel exp(-L t) applied to a point mass at `start` (unweighted L).
std::vector<double> classical_diffusion(const WirelessGraph& g, NodeId start, double t);

struct HittingRow {
  double t = 0.0;
  double quantum_p = 0.0;
  double classical_p = 0.0;
};

std::vector<HittingRow> hitting_profile(const WirelessGraph& g, NodeId source, NodeId dest, WalkKind kind,
                                        const CompositeWeights& alpha, std::span<const double> times);

}  // namespace qroute
