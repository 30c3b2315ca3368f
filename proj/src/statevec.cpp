#include "qroute/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "qroute/error.hpp"

namespace qroute {

namespace {

void check_qubits(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one qubit");
  if (n > qubit_cap()) {
    throw Error(ErrorCode::QubitLimitExceeded,
                std::to_string(n) + " qubits exceeds the cap of " + std::to_string(qubit_cap()));
  }
}

}  // namespace

std::size_t qubit_cap() {
  const char* env = std::getenv("QROUTE_QUBIT_CAP");
  if (env == nullptr || *env == '\0') return kMaxQubits;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kMaxQubits;
  return std::min<std::size_t>(v, kMaxQubits);
}

StateVector::StateVector(std::vector<Complex> amplitudes) : n_qubits_(0), amps_(std::move(amplitudes)) {
  if (amps_.size() < 2 || !std::has_single_bit(amps_.size())) {
    throw Error(ErrorCode::SizeMismatch, "amplitude count must be a power of two >= 2");
  }
  n_qubits_ = static_cast<std::size_t>(std::countr_zero(amps_.size()));
  check_qubits(n_qubits_);
  if (std::abs(norm_squared() - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "state is not normalized");
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amps, int)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {}

StateVector StateVector::basis(std::size_t n_qubits, BasisIndex x) {
  check_qubits(n_qubits);
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  if (x >= amps.size()) throw Error(ErrorCode::SizeMismatch, "basis index out of range");
  amps[x] = 1.0;
  return StateVector(n_qubits, std::move(amps), 0);
}

double StateVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
  return p;
}

EnergyTable::EnergyTable(const QuboModel& model) : n_qubits_(model.num_vars()) {
  check_qubits(n_qubits_);
  energies_.resize(std::size_t{1} << n_qubits_);
  for (std::size_t x = 0; x < energies_.size(); ++x) energies_[x] = model.energy(x);
}

EnergyTable::EnergyTable(std::size_t n_qubits, std::vector<double> energies)
    : n_qubits_(n_qubits), energies_(std::move(energies)) {
  check_qubits(n_qubits_);
  if (energies_.size() != (std::size_t{1} << n_qubits_)) throw Error(ErrorCode::SizeMismatch, "energy table length");
  for (double e : energies_) {
    if (!std::isfinite(e)) throw Error(ErrorCode::InvalidArgument, "energies must be finite");
  }
}

double EnergyTable::min() const noexcept { return *std::min_element(energies_.begin(), energies_.end()); }
double EnergyTable::max() const noexcept { return *std::max_element(energies_.begin(), energies_.end()); }
double EnergyTable::mean() const noexcept {
  return std::accumulate(energies_.begin(), energies_.end(), 0.0) / static_cast<double>(energies_.size());
}

EnergyTable EnergyTable::shifted(double c) const {
  std::vector<double> e = energies_;
  for (double& v : e) v += c;
  return EnergyTable(n_qubits_, std::move(e));
}

StateVector plus_state(std::size_t n_qubits) {
  check_qubits(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  return StateVector(std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

void apply_phase_inplace(StateVector& state, const EnergyTable& table, double gamma) {
  if (state.dimension() != table.size()) throw Error(ErrorCode::SizeMismatch, "state and energy table differ");
  auto amps = state.amplitudes();
  for (std::size_t x = 0; x < amps.size(); ++x) amps[x] *= std::polar(1.0, -gamma * table[x]);
}

StateVector apply_phase(StateVector state, const EnergyTable& table, double gamma) {
  apply_phase_inplace(state, table, gamma);
  return state;
}

void apply_mixer_inplace(StateVector& state, double beta) {
  const double c = std::cos(beta);
  const Complex mis(0.0, -std::sin(beta));
  auto amps = state.amplitudes();
  for (std::size_t k = 0; k < state.n_qubits(); ++k) {
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & bit) continue;
      const Complex a0 = amps[i];
      const Complex a1 = amps[i | bit];
      amps[i] = c * a0 + mis * a1;
      amps[i | bit] = mis * a0 + c * a1;
    }
  }
}

StateVector apply_mixer(StateVector state, double beta) {
  apply_mixer_inplace(state, beta);
  return state;
}

double expectation(const StateVector& state, const EnergyTable& table) {
  if (state.dimension() != table.size()) throw Error(ErrorCode::SizeMismatch, "state and energy table differ");
  double f = 0.0;
  for (std::size_t x = 0; x < table.size(); ++x) f += std::norm(state[x]) * table[x];
  return f;
}

double expectation(std::span<const double> probs, const EnergyTable& table) {
  if (probs.size() != table.size()) throw Error(ErrorCode::SizeMismatch, "distribution and energy table differ");
  double f = 0.0;
  for (std::size_t x = 0; x < table.size(); ++x) f += probs[x] * table[x];
  return f;
}

Counts sample_distribution(std::span<const double> probs, std::size_t shots, Rng& rng) {
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
  if (probs.empty()) throw Error(ErrorCode::SizeMismatch, "empty distribution");
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidProbability, "distribution has no mass");
  std::uniform_real_distribution<double> u(0.0, total);
  Counts counts;
  for (std::size_t s = 0; s < shots; ++s) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    // u can round up to the total; never land on a trailing zero-mass entry.
    while (probs[idx] == 0.0 && idx > 0) --idx;
    ++counts[idx];
  }
  return counts;
}

Counts sample(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<double> probs = state.probabilities();
  return sample_distribution(probs, shots, rng);
}

std::vector<double> depolarize_distribution(std::span<const double> probs, double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) throw Error(ErrorCode::InvalidProbability, "noise p must lie in [0, 1]");
  if (probs.empty()) throw Error(ErrorCode::InvalidProbability, "empty distribution");
  double total = 0.0;
  for (double v : probs) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidProbability, "negative or non-finite probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::InvalidProbability, "distribution does not sum to 1");
  const double floor = p / static_cast<double>(probs.size());
  std::vector<double> q(probs.size());
  for (std::size_t x = 0; x < probs.size(); ++x) q[x] = (1.0 - p) * probs[x] + floor;
  return q;
}

}  // namespace qroute
