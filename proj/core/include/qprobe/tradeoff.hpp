#pragma once

// Information/disturbance fidelities of a two-outcome qubit POVM {Pi, I - Pi}.
//
// Both fidelities are averages over Haar-random pure input states with the
// measure normalized to one (dpsi = sin t dt dphi / 4 pi):
//   F: overlap of the post-measurement state with the input,
//   G: overlap of the outcome-conditioned guess with the input.
// For qubits they reduce to
//   F = (4 + 2 sqrt(a0^2 - |a|^2) + 2 sqrt((1 - a0)^2 - |a|^2)) / 6,
//   G = (3 + 2 |a|) / 6,
// and every POVM satisfies (F - 2/3)^2 + 4 (G - 1/2)^2 <= 1/9.

#include <cstdint>

#include "qprobe/model.hpp"

namespace qprobe {

/// Guess states for outcome 0 (Pi) and outcome 1 (I - Pi).
struct InferencePair {
  Ket2 phi0;
  Ket2 phi1;
};

struct InformationFidelity {
  double G = 0.0;
  InferencePair states;
};

struct TradeoffValue {
  double value = 0.0;
  bool saturated = false;
};

struct TradeoffPoint {
  double G = 0.0;
  double F = 0.0;
  double T = 0.0;
  bool saturated = false;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

inline constexpr double kTradeoffBound = 1.0 / 9.0;
inline constexpr double kSaturationTolerance = 1e-10;

class InvalidEffect : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws InvalidEffect unless validate_effect(e) passes.
void require_valid(const Effect& e);

/// Disturbance fidelity from the eigenvalues a0 +- |a|.
double fidelity_F(const Effect& e);
/// (2 + |tr sqrt(Pi)|^2 + |tr sqrt(I - Pi)|^2) / 6 via matrix square roots.
double fidelity_F_matrix(const Effect& e);
/// Exact sphere average: writing sqrt(E_k) = c0 I + c . sigma, the average of
/// <psi|sqrt(E_k)|psi>^2 is c0^2 + |c|^2 / 3.
double fidelity_F_sphere_identity(const Effect& e);

/// G with the guess states chosen as top eigenvectors of Pi and I - Pi.
InformationFidelity fidelity_G(const Effect& e);
/// (3 + 2|a|) / 6
double fidelity_G_closed(const Effect& e);

/// T = (F - 2/3)^2 + 4 (G - 1/2)^2, saturated when |T - 1/9| <= 1e-10.
TradeoffValue tradeoff_T(double G, double F);

/// Closed-form F, G and T for a valid effect.
TradeoffPoint evaluate_tradeoff(const Effect& e);

/// Number of samples per independent MC substream. Substream b covers samples
/// [b * kMCBlockSize, (b + 1) * kMCBlockSize) and is seeded with (seed, b).
inline constexpr std::uint64_t kMCBlockSize = 1u << 16;

/// Monte Carlo estimate of F over n Haar-random inputs. The result depends
/// only on (e, n, seed); `threads` changes wall time, not the value.
MCEstimate mc_fidelity_F(const Effect& e, std::uint64_t n, std::uint64_t seed, unsigned threads = 1);
/// Monte Carlo estimate of G with the guess states of fidelity_G.
MCEstimate mc_fidelity_G(const Effect& e, std::uint64_t n, std::uint64_t seed, unsigned threads = 1);

}  // namespace qprobe
