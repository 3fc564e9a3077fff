#pragma once

#include <cstdint>
#include <random>

#include "qprobe/model.hpp"

namespace qprobe {

/// Reproducible random substream.
///
/// Stream (seed, index) is a std::mt19937_64 seeded through
/// std::seed_seq{seed_lo, seed_hi, index_lo, index_hi}. Both the engine and
/// seed_seq are fully specified by the standard, and doubles are formed from
/// the top 53 bits of each 64-bit output, so a stream yields the same values
/// on every conforming platform. Distinct indices give independent streams,
/// which is what lets parallel work be split by index without changing the
/// result.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi], clamped so rounding never leaves the interval.
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// A Haar-random pure qubit state together with its Bloch direction.
struct HaarSample {
  Vec3 direction{};
  Ket2 ket;
};

/// Draws cos(t) uniform on [-1, 1] and the azimuth uniform on [0, 2 pi).
HaarSample haar_state(Stream& stream);

}  // namespace qprobe
