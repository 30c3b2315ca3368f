#include "qroute/hybrid.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "qroute/classical.hpp"
#include "qroute/error.hpp"
#include "qroute/grover.hpp"
#include "qroute/statevec.hpp"

namespace qroute {

std::string_view to_string(Kernel k) noexcept {
  switch (k) {
    case Kernel::Qaoa: return "qaoa";
    case Kernel::Grover: return "grover";
    case Kernel::ClassicalOnly: return "classical_only";
  }
  return "unknown";
}

Kernel parse_kernel(std::string_view s) {
  if (s == "qaoa") return Kernel::Qaoa;
  if (s == "grover") return Kernel::Grover;
  if (s == "classical_only") return Kernel::ClassicalOnly;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(s) + "'");
}

void PipelineConfig::validate() const {
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
  if (top_k == 0) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) throw Error(ErrorCode::InvalidProbability, "noise_p must lie in [0, 1]");
  if (!std::isfinite(tau_gate) || tau_gate < 0.0) throw Error(ErrorCode::InvalidArgument, "tau_gate must be >= 0");
  if (latency_budget && !(*latency_budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "latency budget must be > 0");
  if (max_hops && *max_hops == 0) throw Error(ErrorCode::InvalidArgument, "max_hops must be >= 1");
  for (const auto& l : {lambda_flow, lambda_loop, lambda_int}) {
    if (l && (!std::isfinite(*l) || *l < 0.0)) throw Error(ErrorCode::InvalidArgument, "penalty weights must be >= 0");
  }
  qaoa.validate();
}

PenaltyWeights PipelineConfig::resolve_penalties(const WirelessGraph& g, const CompositeWeights& alpha) const {
  PenaltyWeights w = auto_penalties(g, alpha);
  if (lambda_flow) w.flow = *lambda_flow;
  if (lambda_loop) w.loop = *lambda_loop;
  if (lambda_int) w.interference = *lambda_int;
  return w;
}

PipelineConfig apply_config_json(PipelineConfig base, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ScenarioInvalid, "config must be an object");
  try {
    if (j.contains("kernel")) base.kernel = parse_kernel(j["kernel"].get<std::string>());
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("shots")) base.shots = j["shots"].get<std::size_t>();
    if (j.contains("top_k")) base.top_k = j["top_k"].get<std::size_t>();
    if (j.contains("noise_p")) base.noise_p = j["noise_p"].get<double>();
    if (j.contains("depth")) base.qaoa.depth = j["depth"].get<std::size_t>();
    if (j.contains("restarts")) base.qaoa.restarts = j["restarts"].get<std::size_t>();
    if (j.contains("max_evals")) base.qaoa.max_evals = j["max_evals"].get<std::size_t>();
    if (j.contains("optimizer")) base.qaoa.optimizer = parse_optimizer(j["optimizer"].get<std::string>());
    if (j.contains("lambda_flow")) base.lambda_flow = j["lambda_flow"].get<double>();
    if (j.contains("lambda_loop")) base.lambda_loop = j["lambda_loop"].get<double>();
    if (j.contains("lambda_int")) base.lambda_int = j["lambda_int"].get<double>();
    if (j.contains("max_hops")) base.max_hops = j["max_hops"].get<std::size_t>();
    if (j.contains("latency_budget")) base.latency_budget = j["latency_budget"].get<double>();
    if (j.contains("tau_gate")) base.tau_gate = j["tau_gate"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ScenarioInvalid, std::string("config: ") + e.what());
  }
  return base;
}

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  explicit StageTimer(bool record) : record_(record), start_(Clock::now()), lap_(start_) {}

  /// Seconds since the previous lap (0 when not recording).
  double lap() {
    const auto now = Clock::now();
    const double s = std::chrono::duration<double>(now - lap_).count();
    lap_ = now;
    return record_ ? s : 0.0;
  }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  double recorded(double seconds) const { return record_ ? seconds : 0.0; }

 private:
  bool record_;
  Clock::time_point start_;
  Clock::time_point lap_;
};

struct KernelOutcome {
  bool have_route = false;
  Path path;
  double cost = 0.0;
  std::string failure;  // set when the kernel could not run
};

KernelOutcome run_qaoa(const Scenario& sc, const PipelineConfig& cfg, RoutingDecision& d, StageTimer& timer) {
  KernelOutcome out;
  const Demand demand = demand_vector(sc.source, sc.dest, sc.graph.node_count());
  const PenaltyWeights lambda = cfg.resolve_penalties(sc.graph, sc.alpha);
  d.ledger.t_prep = timer.lap();

  const QuboModel model = build_routing_hamiltonian(sc.graph, sc.alpha, demand, lambda);
  const EnergyTable table(model);
  d.ledger.t_map = timer.lap();

  QaoaConfig qc = cfg.qaoa;
  qc.seed = cfg.seed;
  const QaoaResult qr = optimize(table, qc);
  SamplingSpec spec{cfg.top_k, cfg.shots, cfg.seed + 1, cfg.noise_p};
  CandidateReport report =
      extract_candidates(qr.final_distribution, model, sc.graph, sc.alpha, sc.source, sc.dest, spec);
  const double kernel_total = timer.lap();
  d.ledger.t_class_opt = timer.recorded(qr.optimizer_seconds);
  d.ledger.t_kernel_wall = std::max(0.0, kernel_total - d.ledger.t_class_opt);
  d.ledger.d_u = model_circuit_depth(model, qc.depth);
  d.ledger.n_s = cfg.shots;

  d.objective = qr.best_objective;
  d.qaoa_params = qr.best_params;
  d.feasibility_rate = static_cast<double>(report.feasible_shots) / static_cast<double>(report.shots);
  if (!report.candidates.empty() && report.candidates.front().feasible) {
    out.have_route = true;
    out.path = report.candidates.front().path;
    out.cost = report.candidates.front().cost;
  } else {
    out.failure = "no_feasible_sample";
  }
  d.candidates = std::move(report.candidates);
  return out;
}

KernelOutcome run_grover(const Scenario& sc, const PipelineConfig& cfg, RoutingDecision& d, StageTimer& timer) {
  KernelOutcome out;
  demand_vector(sc.source, sc.dest, sc.graph.node_count());
  const std::size_t hops = cfg.max_hops.value_or(sc.graph.node_count() - 1);
  d.ledger.t_prep = timer.lap();

  const CandidateSpace space = enumerate_paths(sc.graph, sc.alpha, sc.source, sc.dest, hops);
  d.ledger.t_map = timer.lap();

  const MinimumResult m = minimum_finding(space, cfg.seed);
  d.ledger.t_kernel_wall = timer.lap();
  d.ledger.d_u = m.max_iterations;
  d.ledger.n_s = m.measurements;
  d.oracle_calls = m.oracle_calls;
  d.feasibility_rate = m.measurements == 0
                           ? 1.0
                           : static_cast<double>(m.valid_measurements) / static_cast<double>(m.measurements);
  out.have_route = true;
  out.path = space.paths()[m.index];
  out.cost = m.cost;
  return out;
}

KernelOutcome run_classical(const Scenario& sc, RoutingDecision& d, StageTimer& timer) {
  KernelOutcome out;
  demand_vector(sc.source, sc.dest, sc.graph.node_count());
  d.ledger.t_prep = timer.lap();
  d.ledger.t_map = timer.lap();
  const BaselineResult b = dijkstra(sc.graph, sc.alpha, sc.source, sc.dest);
  d.ledger.t_kernel_wall = timer.lap();
  d.feasibility_rate = 1.0;
  out.have_route = true;
  out.path = b.path;
  out.cost = b.cost;
  return out;
}

}  // namespace

RoutingDecision run_pipeline(const Scenario& scenario, const PipelineConfig& config) {
  config.validate();
  RoutingDecision d;
  d.kernel = config.kernel;
  d.kernel_used = std::string(to_string(config.kernel));
  d.ledger.tau_gate = config.tau_gate;
  StageTimer timer(config.record_wall_clock);

  KernelOutcome outcome;
  try {
    switch (config.kernel) {
      case Kernel::Qaoa: outcome = run_qaoa(scenario, config, d, timer); break;
      case Kernel::Grover: outcome = run_grover(scenario, config, d, timer); break;
      case Kernel::ClassicalOnly: outcome = run_classical(scenario, d, timer); break;
    }
  } catch (const Error& e) {
    outcome = KernelOutcome{};
    outcome.failure = std::string(to_string(e.code()));
  }
  d.ledger.t_quantum_model =
      static_cast<double>(d.ledger.n_s) * static_cast<double>(d.ledger.d_u) * d.ledger.tau_gate;

  if (outcome.have_route && config.latency_budget && timer.elapsed() > *config.latency_budget) {
    outcome.have_route = false;
    outcome.failure = "latency_budget_exceeded";
  }

  if (outcome.have_route) {
    d.feasible = validate_path(scenario.graph, outcome.path, scenario.source, scenario.dest).valid;
    d.path = outcome.path;
    d.cost = outcome.cost;
  }
  if (!d.feasible) {
    d.fallback_used = true;
    d.fallback_reason = outcome.failure.empty() ? "invalid_route" : outcome.failure;
    d.kernel_used = "dijkstra_fallback";
    d.path.clear();
    d.cost = 0.0;
    try {
      const BaselineResult b = dijkstra(scenario.graph, scenario.alpha, scenario.source, scenario.dest);
      d.path = b.path;
      d.cost = b.cost;
      d.feasible = true;
    } catch (const Error&) {
      d.feasible = false;
    }
  }

  if (d.feasible) {
    if (scenario.graph.edge_count() <= kOracleEdgeLimit) {
      const BaselineResult best = brute_force_best_path(scenario.graph, scenario.alpha, scenario.source, scenario.dest);
      d.optimal_cost = best.cost;
      if (best.cost > 0.0) d.ratio = approximation_ratio(d.cost, best.cost);
    } else {
      const BaselineResult base = dijkstra(scenario.graph, scenario.alpha, scenario.source, scenario.dest);
      if (base.cost > 0.0) d.dijkstra_relative = d.cost / base.cost;
    }
  }
  d.ledger.t_post = timer.lap();
  return d;
}

double feasibility_rate(const Counts& samples, const QuboModel& model, const WirelessGraph& g,
                        const CompositeWeights& alpha, NodeId source, NodeId dest) {
  std::size_t total = 0;
  std::size_t valid = 0;
  for (const auto& [x, count] : samples) {
    total += count;
    if (decode_index(model, x, g, alpha, source, dest).check.valid) valid += count;
  }
  if (total == 0) throw Error(ErrorCode::EmptySamples, "no samples to rate");
  return static_cast<double>(valid) / static_cast<double>(total);
}

bool speedup_condition(double t_encode, double t_classical, double s_factor) {
  if (!std::isfinite(t_encode) || t_encode < 0.0 || !std::isfinite(t_classical) || t_classical <= 0.0 ||
      !std::isfinite(s_factor) || s_factor <= 0.0) {
    throw Error(ErrorCode::InvalidInputs, "need t_encode >= 0, t_classical > 0, s_factor > 0");
  }
  return t_encode + t_classical / s_factor < t_classical;
}

std::size_t model_circuit_depth(const QuboModel& model, std::size_t p) {
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  std::size_t linear = 0;
  for (double w : model.linear()) {
    if (w != 0.0) ++linear;
  }
  return p * (linear + model.quadratic().size() + model.num_vars());
}

WorkloadShares workload_report(const RoutingDecision& decision) {
  const RuntimeLedger& l = decision.ledger;
  const double opt = l.t_kernel_wall + l.t_class_opt;
  const double total = l.t_prep + l.t_map + opt + l.t_post;
  if (!(total > 0.0)) return {};
  return {l.t_prep / total, l.t_map / total, opt / total, l.t_post / total, 0.0};
}

nlohmann::ordered_json to_json(const RuntimeLedger& l) {
  nlohmann::ordered_json j;
  j["t_prep"] = l.t_prep;
  j["t_map"] = l.t_map;
  j["t_quantum_model"] = l.t_quantum_model;
  j["t_class_opt"] = l.t_class_opt;
  j["t_post"] = l.t_post;
  j["total"] = l.total();
  j["t_kernel_wall"] = l.t_kernel_wall;
  j["d_U"] = l.d_u;
  j["n_s"] = l.n_s;
  j["tau_gate"] = l.tau_gate;
  return j;
}

nlohmann::ordered_json to_json(const RoutingDecision& d) {
  auto optional = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json j;
  j["kernel"] = to_string(d.kernel);
  j["kernel_used"] = d.kernel_used;
  j["feasible"] = d.feasible;
  j["fallback_used"] = d.fallback_used;
  j["fallback_reason"] = d.fallback_reason.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(d.fallback_reason);
  j["path"] = d.path;
  j["cost"] = d.cost;
  j["ratio"] = optional(d.ratio);
  j["optimal_cost"] = optional(d.optimal_cost);
  j["dijkstra_relative"] = optional(d.dijkstra_relative);
  j["feasibility_rate"] = d.feasibility_rate;
  j["objective"] = optional(d.objective);
  if (d.qaoa_params) {
    j["qaoa_params"] = {{"gammas", d.qaoa_params->gammas}, {"betas", d.qaoa_params->betas}};
  } else {
    j["qaoa_params"] = nullptr;
  }
  j["oracle_calls"] = d.oracle_calls ? nlohmann::ordered_json(*d.oracle_calls) : nlohmann::ordered_json();
  auto cands = nlohmann::ordered_json::array();
  for (const Candidate& c : d.candidates) {
    nlohmann::ordered_json o;
    o["bits"] = c.bits;
    o["count"] = c.count;
    o["energy"] = c.energy;
    o["feasible"] = c.feasible;
    if (c.feasible) {
      o["path"] = c.path;
      o["cost"] = c.cost;
    } else {
      o["reason"] = to_string(c.reason);
    }
    cands.push_back(std::move(o));
  }
  j["candidates"] = std::move(cands);
  j["ledger"] = to_json(d.ledger);
  return j;
}

}  // namespace qroute
