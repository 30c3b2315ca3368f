#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qroute/netgraph.hpp"

namespace qroute {

/// One bit per edge variable, bit k = variable k. Stored LSB-first so the
/// basis-state index of a statevector is the same integer.
using BasisIndex = std::uint64_t;

/// Diagonal routing Hamiltonian in binary-variable form:
///   E(x) = constant + sum_a linear[a] x_a + sum_{a<b} quadratic[{a,b}] x_a x_b
/// The Pauli-Z form follows from x = (1 - Z) / 2 and is never materialized.
class QuboModel {
 public:
  /// Zero model over `n` variables, variable k bound to var_map[k].
  explicit QuboModel(std::vector<EdgeIndex> var_map);

  std::size_t num_vars() const noexcept { return var_map_.size(); }
  const std::vector<EdgeIndex>& var_map() const noexcept { return var_map_; }
  const std::vector<double>& linear() const noexcept { return linear_; }
  const std::map<EdgePair, double>& quadratic() const noexcept { return quadratic_; }
  double constant() const noexcept { return constant_; }

  void add_constant(double c) { constant_ += c; }
  void add_linear(std::size_t var, double w);
  /// Accumulates into the canonical (min, max) key. Throws when a == b.
  void add_quadratic(std::size_t a, std::size_t b, double w);

  double energy(BasisIndex x) const noexcept;
  double energy(std::span<const std::uint8_t> bits) const;

  bool operator==(const QuboModel&) const = default;

 private:
  std::vector<EdgeIndex> var_map_;
  std::vector<double> linear_;
  std::map<EdgePair, double> quadratic_;
  double constant_ = 0.0;
};

struct PenaltyWeights {
  double flow = 1.0;
  double connect = 0.0;
  double loop = 1.0;
  double interference = 1.0;

  void validate() const;
  bool operator==(const PenaltyWeights&) const = default;
};

/// Smallest scale at which any constraint violation outweighs every feasible
/// route: flow = loop = 1 + sum(edge costs) + sum(couplings), interference = 1.
PenaltyWeights auto_penalties(const WirelessGraph& g, const CompositeWeights& alpha);

QuboModel build_cost_hamiltonian(const WirelessGraph& g, const CompositeWeights& alpha);
QuboModel build_flow_penalty(const WirelessGraph& g, const Demand& demand);
QuboModel build_loop_penalty(const WirelessGraph& g, const Demand& demand);
QuboModel build_interference_penalty(const WirelessGraph& g);
/// The connectivity term has no closed form; it is the zero model and
/// connectivity is enforced by flow, degree, and decode-time rejection.
QuboModel build_connect_penalty(const WirelessGraph& g);

/// Termwise H_C + flow*H_flow + loop*H_loop + interference*H_int.
/// Throws VarMapMismatch when the components disagree on variables.
QuboModel assemble_total(const QuboModel& cost, const QuboModel& flow, const QuboModel& loop,
                         const QuboModel& interference, const PenaltyWeights& lambda);

/// Convenience: every builder plus assemble_total.
QuboModel build_routing_hamiltonian(const WirelessGraph& g, const CompositeWeights& alpha,
                                    const Demand& demand, const PenaltyWeights& lambda);

double evaluate_bitstring(const QuboModel& model, std::span<const std::uint8_t> bits);

/// Bits of `x` as a 0/1 vector of length n.
std::vector<std::uint8_t> to_bits(BasisIndex x, std::size_t n);
BasisIndex from_bits(std::span<const std::uint8_t> bits);
/// "x_0 x_1 ... x_{n-1}" as characters, e.g. x=(1,1,0) -> "110".
std::string bitstring_label(BasisIndex x, std::size_t n);

struct DecodeResult {
  PathCheck check;
  double cost = 0.0;  // path_cost when check.valid
};

DecodeResult decode_bitstring(const QuboModel& model, std::span<const std::uint8_t> bits,
                              const WirelessGraph& g, const CompositeWeights& alpha, NodeId source,
                              NodeId dest);
DecodeResult decode_index(const QuboModel& model, BasisIndex x, const WirelessGraph& g,
                          const CompositeWeights& alpha, NodeId source, NodeId dest);

/// {n, constant, linear, quadratic:[{a,b,w}], var_map} with deterministic order.
nlohmann::ordered_json to_json(const QuboModel& model);

}  // namespace qroute
