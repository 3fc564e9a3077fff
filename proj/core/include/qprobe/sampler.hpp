#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qprobe/model.hpp"
#include "qprobe/scenario.hpp"
#include "qprobe/tradeoff.hpp"

namespace qprobe {

/// One fully evaluated parameter draw.
struct SampleRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  ModelPoint point;
  double a0 = 0.0;
  Vec3 a{};
  double abs_a = 0.0;
  double F = 0.0;
  double G = 0.0;
  double T = 0.0;
};

/// Draws record `index` of the (scenario, seed) stream. Each index owns its
/// own random substream, drawn in the order a1, a2, a3, mu, theta, phi,
/// alpha, beta; a2 is uniform on [a2_lo(a1), a2_hi(a1)] and a3 on
/// [a3_lo(a1, a2), a3_hi(a1, a2)]. The effect comes from the closed form.
SampleRecord draw_one(const Scenario& s, std::uint64_t seed, std::uint64_t index);

/// Records 0..n-1. Output is identical for any thread count.
std::vector<SampleRecord> draw(const Scenario& s, std::uint64_t seed, std::uint64_t n, unsigned threads = 1);

/// Fixed histogram domain: the analytic ranges of G and F.
inline constexpr double kHistGMin = 0.5;
inline constexpr double kHistGMax = 5.0 / 6.0;
inline constexpr double kHistFMin = 2.0 / 3.0;
inline constexpr double kHistFMax = 1.0;

struct Histogram2D {
  std::vector<double> g_edges;  // g_bins + 1, strictly increasing
  std::vector<double> f_edges;  // f_bins + 1, strictly increasing
  std::vector<std::uint64_t> counts;  // g-major: counts[i * f_bins + j]
  std::uint64_t total = 0;

  std::size_t g_bins() const { return g_edges.size() - 1; }
  std::size_t f_bins() const { return f_edges.size() - 1; }
  std::uint64_t count(std::size_t g_bin, std::size_t f_bin) const { return counts[g_bin * f_bins() + f_bin]; }
  /// Bin index of a value along each axis (right-open bins, last bin closed).
  std::size_t g_bin_of(double g) const;
  std::size_t f_bin_of(double f) const;
};

/// Uniform bins over [1/2, 5/6] x [2/3, 1]. Values within 1e-9 outside the
/// domain are folded into the edge bins; anything further throws
/// std::domain_error. Throws std::invalid_argument on empty input or zero bins.
Histogram2D histogram(std::span<const SampleRecord> records, std::size_t g_bins, std::size_t f_bins);

/// Cartan triple of a CNOT coupling.
inline constexpr CartanParams kCnotCartan{-std::numbers::pi / 2.0, std::numbers::pi / 2.0, 0.0};

/// Probe/projector settings for the CNOT sweep. The defaults realize a lab
/// frame CNOT (signal control, probe target) followed by a sigma_z readout
/// of the probe prepared in cos(theta/2)|0> + sin(theta/2)|1>: the probe-side
/// local rotation of the CNOT's Cartan decomposition carries |0><0| to the
/// V-frame projector with alpha = pi/2, beta = pi/2.
struct CnotSweepOptions {
  std::size_t steps = 100;
  double mu = 1.0;
  double phi = 0.0;
  double alpha = std::numbers::pi / 2.0;
  double beta = std::numbers::pi / 2.0;
};

struct SweepPoint {
  double theta = 0.0;
  double F = 0.0;
  double G = 0.0;
  double T = 0.0;
};

/// theta on an even grid over [0, pi/2] (both endpoints included). Throws
/// std::invalid_argument for steps < 2 and ConstraintViolation for invalid
/// probe/projector settings.
std::vector<SweepPoint> cnot_sweep(const CnotSweepOptions& options);

}  // namespace qprobe
