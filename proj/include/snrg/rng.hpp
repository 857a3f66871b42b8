#pragma once

// Deterministic random number generation for parallel Monte Carlo.
//
// Algorithm (pinned, platform-independent integer arithmetic):
//   - stream keys: splitmix64 mixing of (master seed, index words...)
//   - generator:   xoshiro256++ 1.0 (Blackman & Vigna), state seeded from
//                  four consecutive splitmix64 outputs
//   - normals:     Box-Muller transform on 53-bit uniforms
//
// Every shot owns an independent substream derived from the master seed and
// its indices, so ensemble results do not depend on worker count, scheduling,
// or evaluation order. The integer stream is bit-identical across platforms;
// the Gaussian transform additionally depends on libm (log/cos/sin), so
// floating-point traces are bit-identical given the same math library.

#include <cstdint>
#include <initializer_list>

namespace snrg {

// Advances `state` by the splitmix64 recurrence and returns the next output.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Order-sensitive hash of (master, i0, i1, ...) into a 64-bit substream key.
// stream_key(m, {a}) != stream_key(m, {a, 0}) by construction.
std::uint64_t stream_key(std::uint64_t master, std::initializer_list<std::uint64_t> indices);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform double in (0, 1]; safe as a log() argument.
  double uniform01_open_below();

  // Standard normal draw. Box-Muller; the paired draw is cached, so normals
  // are consumed from the stream two at a time.
  double normal();

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace snrg
