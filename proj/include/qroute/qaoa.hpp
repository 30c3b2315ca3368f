#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qroute/encoding.hpp"
#include "qroute/statevec.hpp"

namespace qroute {

/// Layer angles of a depth-p ansatz; depth() = gammas.size() = betas.size().
struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t depth() const noexcept { return gammas.size(); }
  void validate() const;

  /// Flattened as [gamma_1..gamma_p, beta_1..beta_p]; coordinates use this order.
  std::vector<double> flatten() const;
  static QaoaParams unflatten(const std::vector<double>& theta);

  /// Appends zero layers up to `depth`; the state is unchanged by them.
  QaoaParams padded(std::size_t depth) const;

  bool operator==(const QaoaParams&) const = default;
};

enum class OptimizerKind { NelderMead, GradientDescent };

std::string_view to_string(OptimizerKind k) noexcept;
OptimizerKind parse_optimizer(std::string_view s);

struct QaoaConfig {
  std::size_t depth = 2;
  OptimizerKind optimizer = OptimizerKind::NelderMead;
  std::size_t max_evals = 500;  // per restart
  std::uint64_t seed = 0;
  std::size_t restarts = 3;
  /// When set, the first restart starts here (padded to `depth`) instead of a random point.
  std::optional<QaoaParams> warm_start;
  /// 0 = exact expectation; otherwise F is estimated from this many samples.
  std::size_t objective_shots = 0;
  double fd_step = 1e-6;

  void validate() const;
};

struct QaoaResult {
  QaoaParams best_params;
  double best_objective = 0.0;
  std::vector<std::pair<std::size_t, double>> objective_history;  // (evaluation #, F)
  std::vector<double> final_distribution;
  std::size_t evaluations = 0;
  // Wall-clock split, excluded from equality.
  double simulation_seconds = 0.0;
  double optimizer_seconds = 0.0;

  bool operator==(const QaoaResult& o) const {
    return best_params == o.best_params && best_objective == o.best_objective &&
           objective_history == o.objective_history && final_distribution == o.final_distribution &&
           evaluations == o.evaluations;
  }
};

/// |+>^n followed by phase(gamma_l) then mixer(beta_l) for l = 1..p.
StateVector ansatz_state(const EnergyTable& table, const QaoaParams& params);

/// Exact F(gamma, beta) = <psi|H|psi>.
double objective(const EnergyTable& table, const QaoaParams& params);

/// 1/2 [F(theta + pi/2) - F(theta - pi/2)] on one flattened coordinate.
/// Equals dF/dtheta only when that angle's generator has a single eigenvalue
/// gap of 1 (e.g. a one-qubit phase with energies {0, 1}); it returns 0 for
/// mixer angles, whose generator X has period pi.
double two_point_shift_gradient(const EnergyTable& table, const QaoaParams& params, std::size_t coordinate);

std::vector<double> finite_difference_gradient(const EnergyTable& table, const QaoaParams& params, double step);

/// Seeded multi-restart outer loop. Initial angles uniform in [0, pi].
QaoaResult optimize(const EnergyTable& table, const QaoaConfig& config);

struct Candidate {
  BasisIndex x = 0;
  std::string bits;
  double energy = 0.0;
  std::size_t count = 0;
  bool feasible = false;
  Path path;
  double cost = 0.0;  // decoded path cost, feasible only
  InvalidReason reason = InvalidReason::Empty;
};

struct CandidateReport {
  std::vector<Candidate> candidates;  // feasible by cost, then infeasible by energy
  Counts samples;
  std::size_t shots = 0;
  std::size_t feasible_shots = 0;

  bool any_feasible() const noexcept { return feasible_shots > 0; }
};

struct SamplingSpec {
  std::size_t top_k = 8;
  std::size_t shots = 2048;
  std::uint64_t seed = 0;
  double noise_p = 0.0;
};

/// Depolarize, sample, decode each distinct outcome, rank.
CandidateReport extract_candidates(std::span<const double> distribution, const QuboModel& model,
                                   const WirelessGraph& g, const CompositeWeights& alpha, NodeId source,
                                   NodeId dest, const SamplingSpec& spec);

}  // namespace qroute
