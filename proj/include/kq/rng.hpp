#pragma once

#include <cstdint>

namespace kq {

/// SplitMix64 (Steele, Lea & Flood 2014). Chosen because the whole stream is
/// defined by integer arithmetic only, so identical seeds give bit-identical
/// doubles on every platform; std:: distributions carry no such guarantee.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Independent substream for parallel work; streams are never shared.
  SeededRng split(std::uint64_t stream_id) const {
    SeededRng mixer(state_ ^ (0xA3EC647659359ACDULL * (stream_id + 1)));
    return SeededRng(mixer.next_u64());
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace kq
