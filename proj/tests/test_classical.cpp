#include "qroute/classical.hpp"

#include "qroute/encoding.hpp"
#include "support.hpp"

using namespace qroute;
using namespace qtest;

TEST_CASE("dijkstra examples") {
  auto r = dijkstra(triangle(), delay_alpha(), 0, 2);
  CHECK(r.path == Path{0, 1});
  CHECK(r.cost == doctest::Approx(2.0));
  CHECK(r.work > 0);
  WirelessGraph single(2, {{0, 1, delay_only(4)}});
  CHECK(dijkstra(single, delay_alpha(), 0, 1).path == Path{0});
  CHECK_ERROR_CODE(dijkstra(triangle(), delay_alpha(), 2, 0), ErrorCode::NoPathExists);
}

TEST_CASE("dijkstra ignores couplings") {
  const auto g = triangle({{0, 1, 5.0}});
  auto d = dijkstra(g, delay_alpha(), 0, 2);
  CHECK(d.path == Path{0, 1});
  CHECK(d.additive_cost == doctest::Approx(2.0));
  CHECK(d.cost == doctest::Approx(7.0));
  auto b = brute_force_best_path(g, delay_alpha(), 0, 2);
  CHECK(b.path == Path{2});
  CHECK(b.cost == doctest::Approx(3.0));
  CHECK(d.cost > b.cost);
}

TEST_CASE("dijkstra tie-break prefers the smaller predecessor edge") {
  // two equal-cost routes 0->1->3 (edges 0,2) and 0->2->3 (edges 1,3)
  WirelessGraph g(4, {{0, 1, delay_only(1)}, {0, 2, delay_only(1)}, {1, 3, delay_only(1)}, {2, 3, delay_only(1)}});
  CHECK(dijkstra(g, delay_alpha(), 0, 3).path == Path{0, 2});
  CHECK(brute_force_best_path(g, delay_alpha(), 0, 3).path == Path{0, 2});
}

TEST_CASE("dijkstra matches brute force without couplings") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    auto inst = random_instance(rng, 8, 20, 0.0);
    const CompositeWeights a(1, 1, 1, 1);
    auto d = dijkstra(inst.graph, a, inst.source, inst.dest);
    auto b = brute_force_best_path(inst.graph, a, inst.source, inst.dest);
    REQUIRE(d.cost == doctest::Approx(b.cost).epsilon(1e-12));
    CHECK(validate_path(inst.graph, d.path, inst.source, inst.dest).valid);
    CHECK(d.cost == doctest::Approx(path_cost(inst.graph, a, d.path)));
  }
}

TEST_CASE("brute-force best path matches the subset oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_instance(rng, 7, 12, 0.3);
    const CompositeWeights a(1, 0.5, 3, 1);
    auto b = brute_force_best_path(inst.graph, a, inst.source, inst.dest);
    CHECK(b.cost == doctest::Approx(subset_optimum(inst.graph, a, inst.source, inst.dest).cost).epsilon(1e-12));
    CHECK(b.cost == doctest::Approx(path_cost(inst.graph, a, b.path)));
  }
  CHECK_ERROR_CODE(brute_force_best_path(triangle(), delay_alpha(), 2, 0), ErrorCode::NoPathExists);
}

TEST_CASE("ground state examples") {
  PenaltyWeights w;
  w.flow = 10;
  w.loop = 10;
  auto model = build_routing_hamiltonian(triangle(), delay_alpha(), demand_vector(0, 2, 3), w);
  auto gs = brute_force_ground_state(model);
  CHECK(gs.minimizers == std::vector<BasisIndex>{3});
  CHECK(gs.min_energy == doctest::Approx(2.0));
  CHECK(gs.evaluated == 8);

  QuboModel flat({0, 1, 2});
  flat.add_constant(1.5);
  CHECK(brute_force_ground_state(flat).minimizers.size() == 8);

  auto hc = build_cost_hamiltonian(triangle(), delay_alpha());
  CHECK(brute_force_ground_state(hc).minimizers == std::vector<BasisIndex>{0});

  std::vector<EdgeIndex> many(25);
  std::iota(many.begin(), many.end(), 0);
  CHECK_ERROR_CODE(brute_force_ground_state(QuboModel(many)), ErrorCode::TooManyVariables);
}

TEST_CASE("ground state of the routing hamiltonian is the best path") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_instance(rng, 8, 12, 0.25);
    const CompositeWeights a(1, 1, 1, 1);
    auto model = build_routing_hamiltonian(inst.graph, a, demand_vector(inst.source, inst.dest, inst.graph.node_count()),
                                           auto_penalties(inst.graph, a));
    auto gs = brute_force_ground_state(model);
    auto best = brute_force_best_path(inst.graph, a, inst.source, inst.dest);
    for (BasisIndex x : gs.minimizers) {
      auto dec = decode_index(model, x, inst.graph, a, inst.source, inst.dest);
      REQUIRE(dec.check.valid);
      CHECK(std::abs(dec.cost - best.cost) < 1e-9);
    }
    CHECK(std::abs(gs.min_energy - best.cost) < 1e-9);
  }
}

TEST_CASE("approximation ratio") {
  CHECK(approximation_ratio(2.0, 2.0) == 1.0);
  CHECK(approximation_ratio(3.0, 2.0) == 1.5);
  CHECK_ERROR_CODE(approximation_ratio(1.0, 2.0), ErrorCode::InfeasibleCandidate);
  CHECK_ERROR_CODE(approximation_ratio(1.0, 0.0), ErrorCode::InvalidOptimum);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.001, 1000);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CHECK(approximation_ratio(x, x) == 1.0);
  }
}
