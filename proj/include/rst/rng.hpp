#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rst {

/// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw, SC'11).
///
/// The 128-bit counter is split into a 64-bit block index (words 0-1) and a
/// 64-bit stream identifier (words 2-3). Two generators with different keys or
/// different stream identifiers produce independent sequences, so replicates
/// never share state and can run in any order.
///
/// Satisfies std::uniform_random_bit_generator with 64-bit output.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t key, std::uint32_t stream_hi, std::uint32_t stream_lo);

  /// The raw 10-round bijection, exposed for known-answer tests.
  static Counter bijection(Counter counter, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Skip ahead by `n` 64-bit outputs.
  void discard(std::uint64_t n);

 private:
  void refill();

  Key key_;
  Counter counter_;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffered_ = 0;
};

/// SplitMix64 finalizer; used to derive keys from composite identifiers.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Named sub-streams within one replicate.
enum class Stream : std::uint32_t {
  points = 1,
  heads = 2,
  nodes = 3,
  chain = 4,
  field = 5,
  check = 6,
};

/// Generator for (seed, replicate_id, stream_id).
inline Philox4x32 make_stream(std::uint64_t seed, std::uint32_t replicate_id,
                              std::uint32_t stream_id) {
  return Philox4x32(seed, replicate_id, stream_id);
}

inline Philox4x32 make_stream(std::uint64_t seed, std::uint32_t replicate_id, Stream stream) {
  return make_stream(seed, replicate_id, static_cast<std::uint32_t>(stream));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Philox4x32& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace rst
