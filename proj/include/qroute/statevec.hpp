#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "qroute/encoding.hpp"

namespace qroute {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr std::size_t kMaxQubits = 24;

/// Simulator qubit cap: kMaxQubits, lowered (never raised) by QROUTE_QUBIT_CAP.
std::size_t qubit_cap();

/// Normalized amplitudes over 2^n basis states; qubit k is bit k of the index.
class StateVector {
 public:
  /// Wraps explicit amplitudes (length must be a power of two, norm 1 within 1e-9).
  explicit StateVector(std::vector<Complex> amplitudes);

  static StateVector basis(std::size_t n_qubits, BasisIndex x);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept;
  std::vector<double> probabilities() const;

 private:
  StateVector(std::size_t n_qubits, std::vector<Complex> amps, int);

  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

/// Diagonal of a QuboModel over all 2^n basis states.
class EnergyTable {
 public:
  explicit EnergyTable(const QuboModel& model);
  EnergyTable(std::size_t n_qubits, std::vector<double> energies);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return energies_.size(); }
  std::span<const double> energies() const noexcept { return energies_; }
  double operator[](std::size_t i) const { return energies_[i]; }
  double min() const noexcept;
  double max() const noexcept;
  double mean() const noexcept;

  /// Same table with `c` added to every entry.
  EnergyTable shifted(double c) const;

 private:
  std::size_t n_qubits_;
  std::vector<double> energies_;
};

StateVector plus_state(std::size_t n_qubits);

/// a_x <- a_x exp(-i gamma E(x)).
void apply_phase_inplace(StateVector& state, const EnergyTable& table, double gamma);
StateVector apply_phase(StateVector state, const EnergyTable& table, double gamma);

/// exp(-i beta X) on every qubit.
void apply_mixer_inplace(StateVector& state, double beta);
StateVector apply_mixer(StateVector state, double beta);

/// Exact <psi|H|psi> for a diagonal H.
double expectation(const StateVector& state, const EnergyTable& table);
double expectation(std::span<const double> probs, const EnergyTable& table);

using Counts = std::map<BasisIndex, std::size_t>;

/// Multinomial draw of `shots` outcomes; counts sum to shots.
Counts sample_distribution(std::span<const double> probs, std::size_t shots, Rng& rng);
Counts sample(const StateVector& state, std::size_t shots, std::uint64_t seed);

/// Measurement statistics after the depolarizing channel
/// rho -> (1-p) rho + p I / 2^n: q_x = (1-p) p_x + p / 2^n.
std::vector<double> depolarize_distribution(std::span<const double> probs, double p);

}  // namespace qroute
