#pragma once

#include <cstdint>

namespace tailci {

// Deterministic 64-bit generator (splitmix64). Chosen over <random> engines
// because the output sequence is fully pinned by this header: results must be
// bit-reproducible across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1): 53 random bits, offset by half an
  // ulp so 0 and 1 are unreachable. Inverse-CDF samplers rely on openness.
  double next_uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Derive an independent stream seed for (master seed, label) pairs, e.g.
  // one stream per Monte-Carlo replication. The label is passed through the
  // same avalanche mix so contiguous labels give unrelated streams.
  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t label) {
    return mix(master_seed ^ mix(label));
  }

  static Rng derive(std::uint64_t master_seed, std::uint64_t label) {
    return Rng(derive_seed(master_seed, label));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace tailci
