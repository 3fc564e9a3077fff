#include "qprobe/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qprobe {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t index) : engine_(make_engine(seed, index)) {}

double Stream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Stream::uniform(double lo, double hi) {
  return std::clamp(lo + (hi - lo) * uniform(), lo, hi);
}

HaarSample haar_state(Stream& stream) {
  const double cos_t = 2.0 * stream.uniform() - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * stream.uniform();
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  HaarSample out;
  out.direction = {sin_t * std::cos(azimuth), sin_t * std::sin(azimuth), cos_t};
  out.ket = Ket2{{std::sqrt(0.5 * (1.0 + cos_t)), std::polar(std::sqrt(0.5 * (1.0 - cos_t)), azimuth)}};
  return out;
}

}  // namespace qprobe
