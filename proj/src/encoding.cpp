#include "qroute/encoding.hpp"

#include <cmath>

#include "qroute/error.hpp"

namespace qroute {

QuboModel::QuboModel(std::vector<EdgeIndex> var_map)
    : var_map_(std::move(var_map)), linear_(var_map_.size(), 0.0) {
  if (var_map_.empty()) throw Error(ErrorCode::InvalidArgument, "model needs at least one variable");
  if (var_map_.size() > 64) throw Error(ErrorCode::TooManyVariables, "at most 64 variables fit a basis index");
}

void QuboModel::add_linear(std::size_t var, double w) {
  if (var >= num_vars()) throw Error(ErrorCode::LengthMismatch, "variable out of range");
  linear_[var] += w;
}

void QuboModel::add_quadratic(std::size_t a, std::size_t b, double w) {
  if (a >= num_vars() || b >= num_vars()) throw Error(ErrorCode::LengthMismatch, "variable out of range");
  if (a == b) throw Error(ErrorCode::InvalidArgument, "quadratic term needs distinct variables");
  quadratic_[canonical_pair(a, b)] += w;
}

double QuboModel::energy(BasisIndex x) const noexcept {
  double e = constant_;
  for (std::size_t a = 0; a < linear_.size(); ++a) {
    if ((x >> a) & 1U) e += linear_[a];
  }
  for (const auto& [key, w] : quadratic_) {
    if (((x >> key.first) & 1U) && ((x >> key.second) & 1U)) e += w;
  }
  return e;
}

double QuboModel::energy(std::span<const std::uint8_t> bits) const {
  if (bits.size() != num_vars()) throw Error(ErrorCode::LengthMismatch, "bitstring length differs from model");
  return energy(from_bits(bits));
}

void PenaltyWeights::validate() const {
  for (double v : {flow, connect, loop, interference}) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidArgument, "penalty weights must be finite and >= 0");
  }
}

namespace {

std::vector<EdgeIndex> identity_map(const WirelessGraph& g) {
  std::vector<EdgeIndex> m(g.edge_count());
  for (EdgeIndex e = 0; e < m.size(); ++e) m[e] = e;
  return m;
}

void check_demand(const WirelessGraph& g, const Demand& demand) {
  if (demand.b.size() != g.node_count()) {
    throw Error(ErrorCode::InvalidArgument, "demand vector length differs from node count");
  }
}

// Adds sum_{pairs a<b in edges} x_a x_b.
void add_pair_products(QuboModel& m, const std::vector<EdgeIndex>& edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) m.add_quadratic(edges[i], edges[j], 1.0);
  }
}

}  // namespace

PenaltyWeights auto_penalties(const WirelessGraph& g, const CompositeWeights& alpha) {
  double scale = 1.0;
  for (double w : edge_costs(g, alpha)) scale += w;
  for (const auto& [pair, gamma] : g.couplings()) scale += gamma;
  return PenaltyWeights{scale, 0.0, scale, 1.0};
}

QuboModel build_cost_hamiltonian(const WirelessGraph& g, const CompositeWeights& alpha) {
  QuboModel m(identity_map(g));
  const std::vector<double> w = edge_costs(g, alpha);
  for (EdgeIndex e = 0; e < w.size(); ++e) m.add_linear(e, w[e]);
  return m;
}

QuboModel build_flow_penalty(const WirelessGraph& g, const Demand& demand) {
  check_demand(g, demand);
  QuboModel m(identity_map(g));
  // Residual r_i = sum_a c_a x_a - b_i with c = +1 (out) / -1 (in). Using
  // x^2 = x: r_i^2 = sum_a (c_a^2 - 2 b_i c_a) x_a + 2 sum_{a<b} c_a c_b x_a x_b + b_i^2.
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<std::pair<EdgeIndex, double>> terms;
    for (EdgeIndex e : g.out_edges(v)) terms.emplace_back(e, 1.0);
    for (EdgeIndex e : g.in_edges(v)) terms.emplace_back(e, -1.0);
    const double b = demand.b[v];
    m.add_constant(b * b);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto [a, ca] = terms[i];
      m.add_linear(a, ca * ca - 2.0 * b * ca);
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        m.add_quadratic(a, terms[j].first, 2.0 * ca * terms[j].second);
      }
    }
  }
  return m;
}

QuboModel build_loop_penalty(const WirelessGraph& g, const Demand& demand) {
  check_demand(g, demand);
  QuboModel m(identity_map(g));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    add_pair_products(m, g.out_edges(v));
    add_pair_products(m, g.in_edges(v));
  }
  return m;
}

QuboModel build_interference_penalty(const WirelessGraph& g) {
  QuboModel m(identity_map(g));
  for (const auto& [pair, gamma] : g.couplings()) m.add_quadratic(pair.first, pair.second, gamma);
  return m;
}

QuboModel build_connect_penalty(const WirelessGraph& g) { return QuboModel(identity_map(g)); }

QuboModel assemble_total(const QuboModel& cost, const QuboModel& flow, const QuboModel& loop,
                         const QuboModel& interference, const PenaltyWeights& lambda) {
  lambda.validate();
  for (const QuboModel* part : {&flow, &loop, &interference}) {
    if (part->var_map() != cost.var_map()) {
      throw Error(ErrorCode::VarMapMismatch, "component models bind different variables");
    }
  }
  QuboModel total(cost.var_map());
  const std::pair<const QuboModel*, double> parts[] = {
      {&cost, 1.0}, {&flow, lambda.flow}, {&loop, lambda.loop}, {&interference, lambda.interference}};
  for (const auto& [part, scale] : parts) {
    if (scale == 0.0) continue;
    total.add_constant(scale * part->constant());
    for (std::size_t a = 0; a < part->num_vars(); ++a) total.add_linear(a, scale * part->linear()[a]);
    for (const auto& [key, w] : part->quadratic()) {
      if (w != 0.0) total.add_quadratic(key.first, key.second, scale * w);
    }
  }
  return total;
}

QuboModel build_routing_hamiltonian(const WirelessGraph& g, const CompositeWeights& alpha,
                                    const Demand& demand, const PenaltyWeights& lambda) {
  return assemble_total(build_cost_hamiltonian(g, alpha), build_flow_penalty(g, demand),
                        build_loop_penalty(g, demand), build_interference_penalty(g), lambda);
}

double evaluate_bitstring(const QuboModel& model, std::span<const std::uint8_t> bits) {
  return model.energy(bits);
}

std::vector<std::uint8_t> to_bits(BasisIndex x, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t k = 0; k < n; ++k) bits[k] = static_cast<std::uint8_t>((x >> k) & 1U);
  return bits;
}

BasisIndex from_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw Error(ErrorCode::TooManyVariables, "bitstring longer than 64");
  BasisIndex x = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] > 1) throw Error(ErrorCode::InvalidArgument, "bits must be 0 or 1");
    if (bits[k]) x |= BasisIndex{1} << k;
  }
  return x;
}

std::string bitstring_label(BasisIndex x, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    if ((x >> k) & 1U) s[k] = '1';
  }
  return s;
}

DecodeResult decode_index(const QuboModel& model, BasisIndex x, const WirelessGraph& g,
                          const CompositeWeights& alpha, NodeId source, NodeId dest) {
  std::vector<EdgeIndex> selected;
  for (std::size_t k = 0; k < model.num_vars(); ++k) {
    if ((x >> k) & 1U) selected.push_back(model.var_map()[k]);
  }
  DecodeResult r{validate_path(g, selected, source, dest), 0.0};
  if (r.check.valid) r.cost = path_cost(g, alpha, r.check.path);
  return r;
}

DecodeResult decode_bitstring(const QuboModel& model, std::span<const std::uint8_t> bits,
                              const WirelessGraph& g, const CompositeWeights& alpha, NodeId source,
                              NodeId dest) {
  if (bits.size() != model.num_vars()) throw Error(ErrorCode::LengthMismatch, "bitstring length differs from model");
  return decode_index(model, from_bits(bits), g, alpha, source, dest);
}

nlohmann::ordered_json to_json(const QuboModel& model) {
  nlohmann::ordered_json j;
  j["n"] = model.num_vars();
  j["constant"] = model.constant();
  j["linear"] = model.linear();
  auto quad = nlohmann::ordered_json::array();
  for (const auto& [key, w] : model.quadratic()) {
    nlohmann::ordered_json t;
    t["a"] = key.first;
    t["b"] = key.second;
    t["w"] = w;
    quad.push_back(std::move(t));
  }
  j["quadratic"] = std::move(quad);
  j["var_map"] = model.var_map();
  return j;
}

}  // namespace qroute
