#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qroute/encoding.hpp"
#include "qroute/qaoa.hpp"
#include "qroute/scenario.hpp"

namespace qroute {

enum class Kernel { Qaoa, Grover, ClassicalOnly };

std::string_view to_string(Kernel k) noexcept;
Kernel parse_kernel(std::string_view s);

struct PipelineConfig {
  Kernel kernel = Kernel::Qaoa;
  /// Each unset weight takes its auto_penalties value.
  std::optional<double> lambda_flow;
  std::optional<double> lambda_loop;
  std::optional<double> lambda_int;
  QaoaConfig qaoa;  // its seed is replaced by `seed`
  /// Hop bound for the Grover candidate space; unset = node_count - 1.
  std::optional<std::size_t> max_hops;
  std::size_t shots = 2048;
  std::size_t top_k = 8;
  double noise_p = 0.0;
  std::uint64_t seed = 0;
  /// Wall-clock bound (seconds) on prep+map+kernel; exceeded -> classical fallback.
  std::optional<double> latency_budget;
  double tau_gate = 1.0;
  /// When false every measured stage time is recorded as 0, which makes the
  /// serialized decision a pure function of (scenario, config).
  bool record_wall_clock = true;

  void validate() const;
  PenaltyWeights resolve_penalties(const WirelessGraph& g, const CompositeWeights& alpha) const;
};

/// Overlays keys of an embedded scenario "config" object onto `base`.
PipelineConfig apply_config_json(PipelineConfig base, const nlohmann::json& j);

/// Stage costs of one run. Measured stages are wall-clock seconds; the
/// quantum term is modeled as n_s * d_U * tau_gate.
struct RuntimeLedger {
  double t_prep = 0.0;
  double t_map = 0.0;
  double t_quantum_model = 0.0;
  double t_class_opt = 0.0;
  double t_post = 0.0;
  double t_kernel_wall = 0.0;  // measured kernel time, reported beside the model
  std::size_t d_u = 0;
  std::size_t n_s = 0;
  double tau_gate = 1.0;

  double total() const noexcept { return t_prep + t_map + t_quantum_model + t_class_opt + t_post; }
};

struct RoutingDecision {
  Kernel kernel = Kernel::Qaoa;
  std::string kernel_used;
  bool feasible = false;
  bool fallback_used = false;
  std::string fallback_reason;
  Path path;
  double cost = 0.0;
  std::optional<double> ratio;              // against the exact optimum, small instances only
  std::optional<double> optimal_cost;
  std::optional<double> dijkstra_relative;  // cost / dijkstra cost when ratio is unavailable
  double feasibility_rate = 0.0;
  std::optional<double> objective;          // optimized F (QAOA)
  std::optional<QaoaParams> qaoa_params;
  std::optional<std::size_t> oracle_calls;  // Grover
  std::vector<Candidate> candidates;
  RuntimeLedger ledger;
};

/// Largest instance for which the exhaustive optimum is computed.
inline constexpr std::size_t kOracleEdgeLimit = 12;

RoutingDecision run_pipeline(const Scenario& scenario, const PipelineConfig& config);

/// Shot-weighted fraction of samples that decode to a valid route.
double feasibility_rate(const Counts& samples, const QuboModel& model, const WirelessGraph& g,
                        const CompositeWeights& alpha, NodeId source, NodeId dest);

/// t_encode + t_classical / s_factor < t_classical.
bool speedup_condition(double t_encode, double t_classical, double s_factor);

/// p * (nonzero linear terms + quadratic terms + n).
std::size_t model_circuit_depth(const QuboModel& model, std::size_t p);

struct WorkloadShares {
  double monitor = 0.0;
  double reduce = 0.0;
  double opt = 0.0;
  double validate = 0.0;
  double deploy = 0.0;
};

/// Measured stage shares: monitor=prep, reduce=map, opt=kernel+class_opt,
/// validate=post, deploy=0. All zero when no wall clock was recorded.
WorkloadShares workload_report(const RoutingDecision& decision);

nlohmann::ordered_json to_json(const RoutingDecision& d);
nlohmann::ordered_json to_json(const RuntimeLedger& l);

}  // namespace qroute
