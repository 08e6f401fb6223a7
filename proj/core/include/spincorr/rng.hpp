#pragma once

#include <cstdint>
#include <limits>

namespace spincorr {

// Counter-based SplitMix64 stream (Steele/Lea/Flood 2014).
//
// at(i) returns output i of the sequence rooted at `seed`:
//   at(i) = mix(seed + (i + 1) * 0x9E3779B97F4A7C15)
// Random access means a draw depends only on (seed, index), never on
// evaluation order, so work partitioned across workers reproduces the
// serial result bit for bit.
class RandomStream {
 public:
  explicit constexpr RandomStream(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t seed() const { return seed_; }

  constexpr std::uint64_t at(std::uint64_t index) const {
    std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform_at(std::uint64_t index) const {
    return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
  }

  // Derived stream for a tagged sub-task (per grid angle, per bootstrap
  // replicate, per worker). Distinct tags give statistically independent
  // streams; the derivation is pure, so substreams nest deterministically.
  constexpr RandomStream substream(std::uint64_t tag) const {
    return RandomStream(at(~tag) ^ 0xD1B54A32D192ED03ULL);
  }

 private:
  std::uint64_t seed_;
};

// UniformRandomBitGenerator adapter over a RandomStream cursor, for use
// with <random> distributions (sequential consumption).
class StreamGenerator {
 public:
  using result_type = std::uint64_t;

  explicit constexpr StreamGenerator(RandomStream stream, std::uint64_t start = 0)
      : stream_(stream), cursor_(start) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return stream_.at(cursor_++); }

  constexpr std::uint64_t cursor() const { return cursor_; }

 private:
  RandomStream stream_;
  std::uint64_t cursor_;
};

}  // namespace spincorr
