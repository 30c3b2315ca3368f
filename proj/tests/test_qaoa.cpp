#include "qroute/qaoa.hpp"

#include <numbers>

#include "qroute/classical.hpp"
#include "qroute/encoding.hpp"
#include "support.hpp"

using namespace qroute;
using namespace qtest;
using std::numbers::pi;

namespace {

QuboModel triangle_model() {
  PenaltyWeights w;
  w.flow = 10.0;
  return build_routing_hamiltonian(triangle(), delay_alpha(), demand_vector(0, 2, 3), w);
}

QaoaParams params(std::vector<double> g, std::vector<double> b) { return QaoaParams{std::move(g), std::move(b)}; }

// Closed form for one qubit with E = [0, 1] at depth 1.
double one_qubit_f(double gamma, double beta) { return 0.5 * (1.0 + std::sin(2 * beta) * std::sin(gamma)); }

const EnergyTable kOneQubit(1, {0.0, 1.0});

}  // namespace

TEST_CASE("params validation and flattening") {
  CHECK_ERROR_CODE(params({}, {}).validate(), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(params({1, 2}, {1}).validate(), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(params({std::nan("")}, {1}).validate(), ErrorCode::InvalidArgument);
  auto p = params({1, 2}, {3, 4});
  CHECK(p.flatten() == std::vector<double>{1, 2, 3, 4});
  CHECK(QaoaParams::unflatten(p.flatten()) == p);
  auto padded = p.padded(3);
  CHECK(padded.gammas == std::vector<double>{1, 2, 0});
  CHECK(padded.betas == std::vector<double>{3, 4, 0});
}

TEST_CASE("ansatz examples") {
  EnergyTable t(triangle_model());
  auto id = ansatz_state(t, params({0}, {0}));
  auto plus = plus_state(3);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(id[i] - plus[i]) < 1e-15);

  auto mixed = ansatz_state(t, params({0}, {1.234}));
  for (double pr : mixed.probabilities()) CHECK(pr == doctest::Approx(0.125));

  CHECK(ansatz_state(kOneQubit, params({pi}, {pi / 4})).probabilities()[1] == doctest::Approx(0.5));
  CHECK(ansatz_state(kOneQubit, params({pi / 2}, {pi / 4})).probabilities()[1] == doctest::Approx(1.0));
}

TEST_CASE("one-qubit objective matches the closed form") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    const double g = angle(rng), b = angle(rng);
    CHECK(objective(kOneQubit, params({g}, {b})) == doctest::Approx(one_qubit_f(g, b)).epsilon(1e-12));
  }
}

TEST_CASE("objective bounds") {
  EnergyTable t(triangle_model());
  CHECK(objective(t, params({0, 0}, {0, 0})) == doctest::Approx(t.mean()));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(0, pi);
  for (int i = 0; i < 200; ++i) {
    const double f = objective(t, params({angle(rng), angle(rng)}, {angle(rng), angle(rng)}));
    CHECK(f >= t.min() - 1e-9);
    CHECK(f <= t.max() + 1e-9);
  }
}

TEST_CASE("two-point shift on the one-qubit instance") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int i = 0; i < 50; ++i) {
    const double g = angle(rng), b = angle(rng);
    const auto p = params({g}, {b});
    const double analytic_dg = 0.5 * std::sin(2 * b) * std::cos(g);
    CHECK(two_point_shift_gradient(kOneQubit, p, 0) == doctest::Approx(analytic_dg).epsilon(1e-12));
    CHECK(std::abs(two_point_shift_gradient(kOneQubit, p, 0) - finite_difference_gradient(kOneQubit, p, 1e-5)[0]) <
          1e-6);
    // the mixer enters as sin(2 beta), so a pi/2 shift lands on the same value
    CHECK(std::abs(two_point_shift_gradient(kOneQubit, p, 1)) < 1e-12);
  }
  CHECK_ERROR_CODE(two_point_shift_gradient(kOneQubit, params({0}, {0}), 2), ErrorCode::CoordinateOutOfRange);
}

TEST_CASE("two-point shift disagrees with finite differences on three qubits") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<double> e(8);
  for (auto& v : e) v = u(rng);
  EnergyTable t(3, e);
  const auto p = params({0.4, 1.1}, {0.7, 0.3});
  const auto fd = finite_difference_gradient(t, p, 1e-5);
  double worst = 0.0;
  for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(two_point_shift_gradient(t, p, c) - fd[c]));
  CHECK(worst > 1e-3);
}

TEST_CASE("flat objective has zero gradients") {
  EnergyTable flat(3, std::vector<double>(8, 2.5));
  const auto p = params({0.3, 0.9}, {1.2, 0.1});
  for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(two_point_shift_gradient(flat, p, c)) < 1e-12);
  for (double g : finite_difference_gradient(flat, p, 1e-5)) CHECK(std::abs(g) < 1e-9);
  CHECK_ERROR_CODE(finite_difference_gradient(flat, p, 0.0), ErrorCode::InvalidArgument);
}

TEST_CASE("optimize: history, determinism and improvement") {
  EnergyTable t(triangle_model());
  QaoaConfig cfg;
  cfg.seed = 5;
  auto r = optimize(t, cfg);
  CHECK(r.evaluations == r.objective_history.size());
  CHECK(r.evaluations <= cfg.restarts * cfg.max_evals);
  double running = std::numeric_limits<double>::infinity();
  double prev = running;
  for (auto [i, f] : r.objective_history) {
    running = std::min(running, f);
    CHECK(running <= prev);
    prev = running;
  }
  CHECK(r.best_objective == doctest::Approx(running));
  CHECK(r.best_objective < t.mean());
  CHECK(objective(t, r.best_params) == doctest::Approx(r.best_objective));
  CHECK(optimize(t, cfg) == r);

  const auto gs = brute_force_ground_state(triangle_model());
  REQUIRE(gs.minimizers == std::vector<BasisIndex>{3});
  // every other level sits at least 1 above the ground energy 2
  CHECK(r.final_distribution[3] >= 1.0 - (r.best_objective - gs.min_energy) - 1e-12);
  CHECK(r.final_distribution[3] > 1.0 / 8.0);
}

TEST_CASE("optimize with gradient descent") {
  EnergyTable t(triangle_model());
  QaoaConfig cfg;
  cfg.seed = 6;
  cfg.optimizer = OptimizerKind::GradientDescent;
  auto r = optimize(t, cfg);
  CHECK(r.best_objective < t.mean());
  CHECK(optimize(t, cfg) == r);
}

TEST_CASE("stationary point has a small gradient") {
  EnergyTable t(triangle_model());
  QaoaConfig cfg;
  cfg.depth = 1;
  cfg.seed = 7;
  cfg.max_evals = 4000;
  auto r = optimize(t, cfg);
  const auto g = finite_difference_gradient(t, r.best_params, 1e-6);
  double norm = 0.0;
  for (double v : g) norm += v * v;
  CHECK(std::sqrt(norm) < 1e-4);
}

TEST_CASE("variational bound on random instances") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0, 2 * pi);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_instance(rng, 5, 8, 0.3);
    auto model = build_routing_hamiltonian(inst.graph, CompositeWeights(1, 1, 1, 1),
                                           demand_vector(inst.source, inst.dest, inst.graph.node_count()),
                                           auto_penalties(inst.graph, CompositeWeights(1, 1, 1, 1)));
    EnergyTable t(model);
    const double min_e = brute_force_ground_state(model).min_energy;
    for (int k = 0; k < 5; ++k) {
      CHECK(objective(t, params({angle(rng), angle(rng)}, {angle(rng), angle(rng)})) >= min_e - 1e-9);
    }
  }
}

TEST_CASE("warm-started depth never worsens the optimum") {
  EnergyTable t(triangle_model());
  QaoaConfig cfg;
  cfg.seed = 9;
  cfg.depth = 1;
  auto prev = optimize(t, cfg);
  for (std::size_t p = 2; p <= 4; ++p) {
    cfg.depth = p;
    cfg.warm_start = prev.best_params;
    auto next = optimize(t, cfg);
    CHECK(next.best_objective <= prev.best_objective + 1e-9);
    prev = next;
  }
  cfg.depth = 1;
  cfg.warm_start = params({1, 1}, {1, 1});
  CHECK_ERROR_CODE(optimize(t, cfg), ErrorCode::InvalidArgument);
}

TEST_CASE("uniform energy shift moves F by the shift") {
  EnergyTable t(triangle_model());
  QaoaConfig cfg;
  cfg.seed = 10;
  cfg.restarts = 1;
  cfg.max_evals = 200;
  auto a = optimize(t, cfg);
  auto b = optimize(t.shifted(4.0), cfg);
  REQUIRE(a.objective_history.size() == b.objective_history.size());
  for (std::size_t i = 0; i < a.objective_history.size(); ++i) {
    CHECK(b.objective_history[i].second == doctest::Approx(a.objective_history[i].second + 4.0).epsilon(1e-12));
  }
  const auto pa = a.best_params.flatten(), pb = b.best_params.flatten();
  for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pb[i] == doctest::Approx(pa[i]).epsilon(1e-9));
}

TEST_CASE("candidate extraction") {
  const auto g = triangle();
  const auto model = triangle_model();
  std::vector<double> point(8, 0.0);
  point[3] = 1.0;
  SamplingSpec spec;
  spec.shots = 100;
  auto r = extract_candidates(point, model, g, delay_alpha(), 0, 2, spec);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].feasible);
  CHECK(r.candidates[0].bits == "110");
  CHECK(r.candidates[0].cost == doctest::Approx(2.0));
  CHECK(r.feasible_shots == 100);

  // full noise: 2 of the 8 configurations are paths
  spec.noise_p = 1.0;
  spec.shots = 80000;
  spec.seed = 3;
  auto noisy = extract_candidates(point, model, g, delay_alpha(), 0, 2, spec);
  const double rate = static_cast<double>(noisy.feasible_shots) / 80000.0;
  CHECK(std::abs(rate - 0.25) < 5 * std::sqrt(0.25 * 0.75 / 80000.0));
  CHECK(noisy.candidates.size() == 8);
  CHECK(noisy.candidates[0].bits == "110");
  CHECK(noisy.candidates[1].bits == "001");
  for (std::size_t i = 2; i < noisy.candidates.size(); ++i) {
    CHECK_FALSE(noisy.candidates[i].feasible);
    CHECK(noisy.candidates[i].energy >= noisy.candidates[i - 1].energy);
  }

  spec.top_k = 1;
  spec.shots = 8;
  auto top = extract_candidates(point, model, g, delay_alpha(), 0, 2, spec);
  REQUIRE(top.candidates.size() == 1);
  if (top.any_feasible()) CHECK(top.candidates[0].feasible);

  spec.top_k = 0;
  CHECK_ERROR_CODE(extract_candidates(point, model, g, delay_alpha(), 0, 2, spec), ErrorCode::InvalidArgument);
}

TEST_CASE("feasible candidates always validate") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = random_instance(rng, 5, 8, 0.3);
    const CompositeWeights a(1, 1, 1, 1);
    auto model = build_routing_hamiltonian(inst.graph, a, demand_vector(inst.source, inst.dest, inst.graph.node_count()),
                                           auto_penalties(inst.graph, a));
    std::vector<double> dist(std::size_t{1} << model.num_vars());
    double s = 0;
    for (auto& v : dist) s += (v = u(rng));
    for (auto& v : dist) v /= s;
    SamplingSpec spec;
    spec.top_k = dist.size();
    spec.shots = 500;
    spec.seed = static_cast<std::uint64_t>(trial);
    auto r = extract_candidates(dist, model, inst.graph, a, inst.source, inst.dest, spec);
    for (const auto& c : r.candidates) {
      Path sel;
      for (std::size_t e = 0; e < model.num_vars(); ++e) {
        if (c.x >> e & 1U) sel.push_back(e);
      }
      CHECK(validate_path(inst.graph, sel, inst.source, inst.dest).valid == c.feasible);
      CHECK(evaluate_bitstring(model, to_bits(c.x, model.num_vars())) == doctest::Approx(c.energy));
    }
  }
}
