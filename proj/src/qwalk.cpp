#include "qroute/qwalk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qroute/error.hpp"

namespace qroute {

std::string_view to_string(WalkKind k) noexcept {
  switch (k) {
    case WalkKind::Adjacency: return "adjacency";
    case WalkKind::Laplacian: return "laplacian";
    case WalkKind::WeightedAdjacency: return "weighted_adjacency";
  }
  return "unknown";
}

WalkKind parse_walk_kind(std::string_view s) {
  if (s == "adjacency") return WalkKind::Adjacency;
  if (s == "laplacian") return WalkKind::Laplacian;
  if (s == "weighted_adjacency") return WalkKind::WeightedAdjacency;
  throw Error(ErrorCode::InvalidArgument, "unknown walk kind '" + std::string(s) + "'");
}

WalkHamiltonian::WalkHamiltonian(WalkKind kind, Eigen::MatrixXd matrix) : kind_(kind), matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "walk Hamiltonian must be square and non-empty");
  }
  if (static_cast<std::size_t>(matrix_.rows()) > kMaxWalkNodes) {
    throw Error(ErrorCode::InvalidArgument, "walks are limited to " + std::to_string(kMaxWalkNodes) + " nodes");
  }
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "walk Hamiltonian must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "eigendecomposition failed");
  q_ = solver.eigenvectors();
  lambda_ = solver.eigenvalues();
}

double WalkHamiltonian::reconstruction_error() const {
  return (q_ * lambda_.asDiagonal() * q_.transpose() - matrix_).cwiseAbs().maxCoeff();
}

WalkState::WalkState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty walk state");
  if (std::abs(amps_.squaredNorm() - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "walk state is not normalized");
}

WalkState WalkState::at_node(std::size_t dimension, NodeId v) {
  if (v >= dimension) throw Error(ErrorCode::NodeOutOfRange, "start node outside the walk");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
  a[static_cast<Eigen::Index>(v)] = 1.0;
  return WalkState(std::move(a));
}

Eigen::MatrixXd symmetric_adjacency(const WirelessGraph& g, const CompositeWeights* alpha) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const double w = alpha ? composite_edge_cost(e.metrics, *alpha) : 1.0;
    const auto u = static_cast<Eigen::Index>(e.tail);
    const auto v = static_cast<Eigen::Index>(e.head);
    sum(u, v) += w;
    sum(v, u) += w;
    count(u, v) += 1.0;
    count(v, u) += 1.0;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (count(i, j) > 0.0) a(i, j) = alpha ? sum(i, j) / count(i, j) : 1.0;
    }
  }
  return a;
}

namespace {

Eigen::MatrixXd laplacian(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd l = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) l(i, i) = a.row(i).sum();
  return l;
}

void check_walk_size(const WirelessGraph& g) {
  if (g.node_count() > kMaxWalkNodes) {
    throw Error(ErrorCode::InvalidArgument, "walks are limited to " + std::to_string(kMaxWalkNodes) + " nodes");
  }
}

}  // namespace

WalkHamiltonian build_walk_hamiltonian(const WirelessGraph& g, WalkKind kind, const CompositeWeights& alpha) {
  check_walk_size(g);
  switch (kind) {
    case WalkKind::Adjacency: return WalkHamiltonian(kind, symmetric_adjacency(g, nullptr));
    case WalkKind::Laplacian: return WalkHamiltonian(kind, laplacian(symmetric_adjacency(g, nullptr)));
    case WalkKind::WeightedAdjacency: return WalkHamiltonian(kind, symmetric_adjacency(g, &alpha));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown walk kind");
}

WalkState evolve(const WalkState& state, const WalkHamiltonian& h, double t) {
  if (state.dimension() != h.dimension()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian differ");
  if (!std::isfinite(t) || t < 0.0) throw Error(ErrorCode::InvalidArgument, "evolution time must be >= 0");
  if (t == 0.0) return state;
  const Eigen::MatrixXd& q = h.eigenvectors();
  Eigen::VectorXcd coeff = q.transpose().cast<std::complex<double>>() * state.amplitudes();
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff[k] *= std::polar(1.0, -h.eigenvalues()[k] * t);
  Eigen::VectorXcd out = q.cast<std::complex<double>>() * coeff;
  return WalkState(std::move(out));
}

double arrival_probability(const WalkState& state, NodeId v) {
  if (v >= state.dimension()) throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(v));
  return std::norm(state.amplitudes()[static_cast<Eigen::Index>(v)]);
}

namespace {

std::vector<double> heat_kernel(const WalkHamiltonian& l, NodeId start, double t) {
  if (t == 0.0) {
    std::vector<double> point(l.dimension(), 0.0);
    point[start] = 1.0;
    return point;
  }
  const Eigen::MatrixXd& q = l.eigenvectors();
  Eigen::VectorXd coeff = q.row(static_cast<Eigen::Index>(start)).transpose();
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff[k] *= std::exp(-l.eigenvalues()[k] * t);
  const Eigen::VectorXd pi = q * coeff;
  std::vector<double> out(l.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(0.0, pi[static_cast<Eigen::Index>(i)]);
  return out;
}

}  // namespace

std::vector<double> classical_diffusion(const WirelessGraph& g, NodeId start, double t) {
  check_walk_size(g);
  if (start >= g.node_count()) throw Error(ErrorCode::NodeOutOfRange, "start node outside the graph");
  if (!std::isfinite(t) || t < 0.0) throw Error(ErrorCode::InvalidArgument, "diffusion time must be >= 0");
  return heat_kernel(WalkHamiltonian(WalkKind::Laplacian, laplacian(symmetric_adjacency(g, nullptr))), start, t);
}

std::vector<HittingRow> hitting_profile(const WirelessGraph& g, NodeId source, NodeId dest, WalkKind kind,
                                        const CompositeWeights& alpha, std::span<const double> times) {
  if (dest >= g.node_count()) throw Error(ErrorCode::NodeOutOfRange, "destination outside the graph");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw Error(ErrorCode::InvalidArgument, "times must be >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw Error(ErrorCode::InvalidArgument, "times must be sorted");
  }
  if (source >= g.node_count()) throw Error(ErrorCode::NodeOutOfRange, "source outside the graph");
  const WalkHamiltonian h = build_walk_hamiltonian(g, kind, alpha);
  const WalkHamiltonian l(WalkKind::Laplacian, laplacian(symmetric_adjacency(g, nullptr)));
  const WalkState start = WalkState::at_node(g.node_count(), source);
  std::vector<HittingRow> rows;
  rows.reserve(times.size());
  for (double t : times) {
    rows.push_back({t, arrival_probability(evolve(start, h, t), dest), heat_kernel(l, source, t)[dest]});
  }
  return rows;
}

}  // namespace qroute
