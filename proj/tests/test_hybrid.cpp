#include "qroute/hybrid.hpp"

#include <cstdlib>

#include "qroute/classical.hpp"
#include "support.hpp"

using namespace qroute;
using namespace qtest;

namespace {

Scenario triangle_scenario() { return Scenario{triangle(), delay_alpha(), 0, 2}; }

PipelineConfig quiet(Kernel k, std::uint64_t seed = 7) {
  PipelineConfig c;
  c.kernel = k;
  c.seed = seed;
  c.record_wall_clock = false;
  return c;
}

Scenario random_scenario(std::mt19937_64& rng, std::size_t nodes, std::size_t edges) {
  auto inst = random_instance(rng, nodes, edges, 0.2);
  return Scenario{std::move(inst.graph), CompositeWeights(1, 1, 1, 1), inst.source, inst.dest};
}

}  // namespace

TEST_CASE("qaoa kernel on the triangle") {
  auto d = run_pipeline(triangle_scenario(), quiet(Kernel::Qaoa));
  CHECK(d.feasible);
  CHECK_FALSE(d.fallback_used);
  CHECK(d.kernel_used == "qaoa");
  CHECK(d.path == Path{0, 1});
  CHECK(d.cost == doctest::Approx(2.0));
  REQUIRE(d.ratio);
  CHECK(*d.ratio == 1.0);
  CHECK(d.optimal_cost == 2.0);
  CHECK_FALSE(d.dijkstra_relative);
  REQUIRE(d.objective);
  REQUIRE(d.qaoa_params);
  CHECK(d.qaoa_params->depth() == 2);
  CHECK(d.feasibility_rate > 0.0);
  CHECK(d.feasibility_rate <= 1.0);
  CHECK(d.ledger.n_s == 2048);
}

TEST_CASE("classical kernel on the triangle") {
  auto d = run_pipeline(triangle_scenario(), quiet(Kernel::ClassicalOnly));
  CHECK(d.feasible);
  CHECK(d.path == Path{0, 1});
  CHECK(d.ledger.t_quantum_model == 0.0);
  CHECK(d.feasibility_rate == 1.0);
  CHECK(*d.ratio == 1.0);
  CHECK_FALSE(d.objective);
}

TEST_CASE("grover kernel on the triangle") {
  auto d = run_pipeline(triangle_scenario(), quiet(Kernel::Grover));
  CHECK(d.feasible);
  CHECK_FALSE(d.fallback_used);
  CHECK(d.path == Path{0, 1});
  REQUIRE(d.oracle_calls);
  CHECK(d.ledger.t_quantum_model ==
        static_cast<double>(d.ledger.n_s) * static_cast<double>(d.ledger.d_u) * d.ledger.tau_gate);
}

TEST_CASE("full noise still yields a route") {
  auto c = quiet(Kernel::Qaoa);
  c.noise_p = 1.0;
  c.shots = 4;
  auto d = run_pipeline(triangle_scenario(), c);
  CHECK(d.feasible);
  CHECK(validate_path(triangle(), d.path, 0, 2).valid);
  CHECK(*d.ratio >= 1.0);
  if (d.fallback_used) CHECK(d.kernel_used == "dijkstra_fallback");
}

TEST_CASE("serialized decisions are reproducible") {
  for (Kernel k : {Kernel::Qaoa, Kernel::Grover, Kernel::ClassicalOnly}) {
    const auto a = to_json(run_pipeline(triangle_scenario(), quiet(k, 3))).dump();
    const auto b = to_json(run_pipeline(triangle_scenario(), quiet(k, 3))).dump();
    CHECK(a == b);
  }
}

TEST_CASE("fallback guarantees a valid route and ratio >= 1") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const Scenario sc = random_scenario(rng, 6, 8);
    for (Kernel k : {Kernel::Qaoa, Kernel::Grover, Kernel::ClassicalOnly}) {
      auto c = quiet(k, static_cast<std::uint64_t>(trial));
      c.qaoa.depth = 1;
      c.qaoa.restarts = 1;
      c.qaoa.max_evals = 60;
      c.shots = 64;
      auto d = run_pipeline(sc, c);
      REQUIRE(d.feasible);
      CHECK(validate_path(sc.graph, d.path, sc.source, sc.dest).valid);
      CHECK(d.cost == doctest::Approx(subset_cost(sc.graph, sc.alpha, d.path)));
      REQUIRE(d.ratio);
      CHECK(*d.ratio >= 1.0);
      CHECK(*d.optimal_cost == doctest::Approx(subset_optimum(sc.graph, sc.alpha, sc.source, sc.dest).cost));
      CHECK(d.fallback_used == (d.kernel_used == "dijkstra_fallback"));
      const auto& l = d.ledger;
      CHECK(l.total() == l.t_prep + l.t_map + l.t_quantum_model + l.t_class_opt + l.t_post);
      CHECK(l.t_quantum_model == static_cast<double>(l.n_s) * static_cast<double>(l.d_u) * l.tau_gate);
    }
  }
}

TEST_CASE("large instances report the dijkstra-relative cost") {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < 8; ++v) {
    edges.push_back({v, v + 1, delay_only(1)});
    edges.push_back({v + 1, v, delay_only(1)});
  }
  const Scenario sc{WirelessGraph(8, edges), delay_alpha(), 0, 7};
  auto d = run_pipeline(sc, quiet(Kernel::ClassicalOnly));
  CHECK_FALSE(d.ratio);
  REQUIRE(d.dijkstra_relative);
  CHECK(*d.dijkstra_relative == 1.0);
}

TEST_CASE("kernel errors fall back to dijkstra") {
  ::setenv("QROUTE_QUBIT_CAP", "2", 1);
  auto d = run_pipeline(triangle_scenario(), quiet(Kernel::Qaoa));
  ::unsetenv("QROUTE_QUBIT_CAP");
  CHECK(d.fallback_used);
  CHECK(d.fallback_reason == "QubitLimitExceeded");
  CHECK(d.kernel_used == "dijkstra_fallback");
  CHECK(d.feasible);
  CHECK(d.path == Path{0, 1});

  auto c = quiet(Kernel::Grover);
  c.max_hops = 1;
  auto g = run_pipeline(Scenario{triangle(), delay_alpha(), 0, 2}, c);
  CHECK_FALSE(g.fallback_used);
  CHECK(g.path == Path{2});
  CHECK(*g.ratio == 1.5);

  auto none = run_pipeline(Scenario{triangle(), delay_alpha(), 2, 0}, quiet(Kernel::Grover));
  CHECK(none.fallback_used);
  CHECK(none.fallback_reason == "NoPathExists");
  CHECK_FALSE(none.feasible);
  CHECK(none.path.empty());
}

TEST_CASE("latency budget") {
  auto c = quiet(Kernel::Qaoa);
  c.latency_budget = 1e-9;
  auto d = run_pipeline(triangle_scenario(), c);
  CHECK(d.fallback_used);
  CHECK(d.fallback_reason == "latency_budget_exceeded");
  CHECK(d.feasible);
  c.latency_budget = 0.0;
  CHECK_ERROR_CODE(run_pipeline(triangle_scenario(), c), ErrorCode::InvalidArgument);
}

TEST_CASE("config validation and overlay") {
  PipelineConfig c;
  c.noise_p = 1.5;
  CHECK_ERROR_CODE(c.validate(), ErrorCode::InvalidProbability);
  c.noise_p = 0;
  c.shots = 0;
  CHECK_ERROR_CODE(c.validate(), ErrorCode::InvalidArgument);

  auto j = nlohmann::json::parse(R"({"kernel":"grover","seed":9,"shots":16,"depth":3,"lambda_flow":4.5})");
  auto o = apply_config_json(PipelineConfig{}, j);
  CHECK(o.kernel == Kernel::Grover);
  CHECK(o.seed == 9);
  CHECK(o.shots == 16);
  CHECK(o.qaoa.depth == 3);
  CHECK(o.lambda_flow == 4.5);
  CHECK_FALSE(o.lambda_loop);
  auto w = o.resolve_penalties(triangle(), delay_alpha());
  CHECK(w.flow == 4.5);
  CHECK(w.loop == auto_penalties(triangle(), delay_alpha()).loop);
  CHECK_ERROR_CODE(apply_config_json(PipelineConfig{}, nlohmann::json::parse(R"({"shots":"many"})")),
                   ErrorCode::ScenarioInvalid);
  CHECK_ERROR_CODE(apply_config_json(PipelineConfig{}, nlohmann::json::array()), ErrorCode::ScenarioInvalid);
  CHECK(parse_kernel("classical_only") == Kernel::ClassicalOnly);
  CHECK_ERROR_CODE(parse_kernel("annealer"), ErrorCode::InvalidArgument);
}

TEST_CASE("feasibility rate") {
  PenaltyWeights w;
  w.flow = 10;
  w.loop = 10;
  const auto model = build_routing_hamiltonian(triangle(), delay_alpha(), demand_vector(0, 2, 3), w);
  CHECK(feasibility_rate(Counts{{3, 10}, {4, 5}}, model, triangle(), delay_alpha(), 0, 2) == 1.0);
  Counts uniform;
  for (BasisIndex x = 0; x < 8; ++x) uniform[x] = 1;
  CHECK(feasibility_rate(uniform, model, triangle(), delay_alpha(), 0, 2) == 0.25);
  CHECK(feasibility_rate(Counts{{0, 3}, {7, 1}}, model, triangle(), delay_alpha(), 0, 2) == 0.0);
  CHECK_ERROR_CODE(feasibility_rate(Counts{}, model, triangle(), delay_alpha(), 0, 2), ErrorCode::EmptySamples);
}

TEST_CASE("speedup condition") {
  CHECK(speedup_condition(5, 100, 4));
  CHECK_FALSE(speedup_condition(80, 100, 4));
  CHECK_FALSE(speedup_condition(0.001, 100, 1));
  CHECK(speedup_condition(0, 100, 1.0001));
  CHECK_ERROR_CODE(speedup_condition(-1, 100, 4), ErrorCode::InvalidInputs);
  CHECK_ERROR_CODE(speedup_condition(1, 0, 4), ErrorCode::InvalidInputs);
  CHECK_ERROR_CODE(speedup_condition(1, 100, 0), ErrorCode::InvalidInputs);
}

TEST_CASE("model circuit depth") {
  QuboModel one({0});
  one.add_linear(0, 1.0);
  CHECK(model_circuit_depth(one, 1) == 2);
  PenaltyWeights w;
  w.flow = 10;
  w.loop = 10;
  const auto model = build_routing_hamiltonian(triangle(), delay_alpha(), demand_vector(0, 2, 3), w);
  const auto d1 = model_circuit_depth(model, 1);
  CHECK(model_circuit_depth(model, 2) == 2 * d1);
  std::size_t linear = 0;
  for (double v : model.linear()) linear += v != 0.0;
  CHECK(d1 == linear + model.quadratic().size() + 3);
  CHECK_ERROR_CODE(model_circuit_depth(model, 0), ErrorCode::InvalidArgument);
}

TEST_CASE("workload report") {
  auto silent = run_pipeline(triangle_scenario(), quiet(Kernel::Qaoa));
  auto z = workload_report(silent);
  CHECK(z.monitor + z.reduce + z.opt + z.validate + z.deploy == 0.0);

  auto classical = quiet(Kernel::ClassicalOnly);
  classical.record_wall_clock = true;
  auto c = run_pipeline(triangle_scenario(), classical);
  auto s = workload_report(c);
  CHECK(s.monitor + s.reduce + s.opt + s.validate + s.deploy == doctest::Approx(1.0));
  const auto& l = c.ledger;
  CHECK(s.opt == doctest::Approx(l.t_kernel_wall / (l.t_prep + l.t_map + l.t_kernel_wall + l.t_post)));

  std::mt19937_64 rng(52);
  Scenario big = random_scenario(rng, 6, 12);
  while (big.graph.edge_count() != 12) big = random_scenario(rng, 6, 12);
  auto q = quiet(Kernel::Qaoa);
  q.record_wall_clock = true;
  auto r = workload_report(run_pipeline(big, q));
  CHECK(r.opt > 0.5);
  CHECK(r.monitor + r.reduce + r.opt + r.validate + r.deploy == doctest::Approx(1.0));
}

TEST_CASE("decision json layout") {
  auto j = to_json(run_pipeline(triangle_scenario(), quiet(Kernel::ClassicalOnly)));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys.front() == "kernel");
  CHECK(keys.back() == "ledger");
  CHECK(j["path"] == nlohmann::ordered_json::array({0, 1}));
  CHECK(j["fallback_reason"].is_null());
  CHECK(j["ledger"]["total"] == 0.0);
}
