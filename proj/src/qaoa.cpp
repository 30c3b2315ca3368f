#include "qroute/qaoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "qroute/error.hpp"
#include "qroute/minimize.hpp"

namespace qroute {

void QaoaParams::validate() const {
  if (gammas.empty()) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  if (gammas.size() != betas.size()) throw Error(ErrorCode::InvalidArgument, "gamma and beta counts differ");
  for (double v : gammas) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite angle");
  }
  for (double v : betas) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite angle");
  }
}

std::vector<double> QaoaParams::flatten() const {
  std::vector<double> theta = gammas;
  theta.insert(theta.end(), betas.begin(), betas.end());
  return theta;
}

QaoaParams QaoaParams::unflatten(const std::vector<double>& theta) {
  if (theta.empty() || theta.size() % 2 != 0) throw Error(ErrorCode::InvalidArgument, "flattened angles must pair up");
  const auto p = static_cast<std::ptrdiff_t>(theta.size() / 2);
  return {std::vector<double>(theta.begin(), theta.begin() + p), std::vector<double>(theta.begin() + p, theta.end())};
}

QaoaParams QaoaParams::padded(std::size_t depth) const {
  QaoaParams out = *this;
  if (depth > out.depth()) {
    out.gammas.resize(depth, 0.0);
    out.betas.resize(depth, 0.0);
  }
  return out;
}

std::string_view to_string(OptimizerKind k) noexcept {
  return k == OptimizerKind::NelderMead ? "nelder_mead" : "grad_descent";
}

OptimizerKind parse_optimizer(std::string_view s) {
  if (s == "nelder_mead") return OptimizerKind::NelderMead;
  if (s == "grad_descent") return OptimizerKind::GradientDescent;
  throw Error(ErrorCode::InvalidArgument, "unknown optimizer '" + std::string(s) + "'");
}

void QaoaConfig::validate() const {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  if (max_evals == 0) throw Error(ErrorCode::InvalidArgument, "max_evals must be >= 1");
  if (restarts == 0) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  if (!(fd_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "fd_step must be positive");
  if (warm_start) {
    warm_start->validate();
    if (warm_start->depth() > depth) throw Error(ErrorCode::InvalidArgument, "warm start deeper than the ansatz");
  }
}

StateVector ansatz_state(const EnergyTable& table, const QaoaParams& params) {
  params.validate();
  StateVector state = plus_state(table.n_qubits());
  for (std::size_t l = 0; l < params.depth(); ++l) {
    apply_phase_inplace(state, table, params.gammas[l]);
    apply_mixer_inplace(state, params.betas[l]);
  }
  return state;
}

double objective(const EnergyTable& table, const QaoaParams& params) {
  return expectation(ansatz_state(table, params), table);
}

double two_point_shift_gradient(const EnergyTable& table, const QaoaParams& params, std::size_t coordinate) {
  params.validate();
  std::vector<double> theta = params.flatten();
  if (coordinate >= theta.size()) {
    throw Error(ErrorCode::CoordinateOutOfRange, "coordinate " + std::to_string(coordinate));
  }
  const double base = theta[coordinate];
  theta[coordinate] = base + std::numbers::pi / 2.0;
  const double up = objective(table, QaoaParams::unflatten(theta));
  theta[coordinate] = base - std::numbers::pi / 2.0;
  const double down = objective(table, QaoaParams::unflatten(theta));
  return 0.5 * (up - down);
}

std::vector<double> finite_difference_gradient(const EnergyTable& table, const QaoaParams& params, double step) {
  params.validate();
  return central_difference(
      [&](const std::vector<double>& theta) { return objective(table, QaoaParams::unflatten(theta)); },
      params.flatten(), step);
}

namespace {

using Clock = std::chrono::steady_clock;

double sampled_objective(const EnergyTable& table, const QaoaParams& params, std::size_t shots, Rng& rng) {
  const std::vector<double> probs = ansatz_state(table, params).probabilities();
  const Counts counts = sample_distribution(probs, shots, rng);
  double f = 0.0;
  for (const auto& [x, c] : counts) f += table[x] * static_cast<double>(c);
  return f / static_cast<double>(shots);
}

}  // namespace

QaoaResult optimize(const EnergyTable& table, const QaoaConfig& config) {
  config.validate();
  const auto started = Clock::now();
  Rng rng(config.seed);
  Rng shot_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);

  QaoaResult result;
  bool have_best = false;
  Clock::duration sim_time{};

  const Objective f = [&](const std::vector<double>& theta) {
    const QaoaParams params = QaoaParams::unflatten(theta);
    const auto t0 = Clock::now();
    const double value = config.objective_shots == 0
                             ? objective(table, params)
                             : sampled_objective(table, params, config.objective_shots, shot_rng);
    sim_time += Clock::now() - t0;
    ++result.evaluations;
    result.objective_history.emplace_back(result.evaluations, value);
    if (!have_best || value < result.best_objective) {
      result.best_objective = value;
      result.best_params = params;
      have_best = true;
    }
    return value;
  };

  for (std::size_t r = 0; r < config.restarts; ++r) {
    std::vector<double> x0(2 * config.depth);
    for (double& v : x0) v = angle(rng);
    if (r == 0 && config.warm_start) x0 = config.warm_start->padded(config.depth).flatten();
    if (config.optimizer == OptimizerKind::NelderMead) {
      nelder_mead(f, x0, config.max_evals);
    } else {
      gradient_descent(f, x0, config.max_evals, config.fd_step);
    }
  }

  const auto t0 = Clock::now();
  result.final_distribution = ansatz_state(table, result.best_params).probabilities();
  sim_time += Clock::now() - t0;
  const double total = std::chrono::duration<double>(Clock::now() - started).count();
  result.simulation_seconds = std::chrono::duration<double>(sim_time).count();
  result.optimizer_seconds = std::max(0.0, total - result.simulation_seconds);
  return result;
}

CandidateReport extract_candidates(std::span<const double> distribution, const QuboModel& model,
                                   const WirelessGraph& g, const CompositeWeights& alpha, NodeId source,
                                   NodeId dest, const SamplingSpec& spec) {
  if (spec.top_k == 0) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
  if (distribution.size() != (std::size_t{1} << model.num_vars())) {
    throw Error(ErrorCode::SizeMismatch, "distribution length differs from 2^n");
  }
  const std::vector<double> noisy = depolarize_distribution(distribution, spec.noise_p);
  Rng rng(spec.seed);
  CandidateReport report;
  report.samples = sample_distribution(noisy, spec.shots, rng);
  report.shots = spec.shots;

  std::vector<Candidate> all;
  for (const auto& [x, count] : report.samples) {
    Candidate c;
    c.x = x;
    c.bits = bitstring_label(x, model.num_vars());
    c.energy = model.energy(x);
    c.count = count;
    const DecodeResult d = decode_index(model, x, g, alpha, source, dest);
    c.feasible = d.check.valid;
    c.reason = d.check.reason;
    if (c.feasible) {
      c.path = d.check.path;
      c.cost = d.cost;
      report.feasible_shots += count;
    }
    all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.feasible && a.cost != b.cost) return a.cost < b.cost;
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.bits < b.bits;
  });
  if (all.size() > spec.top_k) all.resize(spec.top_k);
  report.candidates = std::move(all);
  return report;
}

}  // namespace qroute
