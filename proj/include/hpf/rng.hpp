#pragma once

#include <cmath>
#include <cstdint>

namespace hpf {

/// Counter-based Philox4x32-10 generator (Salmon et al., SC 2011).
///
/// A generator is identified by (seed, stream). Distinct streams with the
/// same seed produce statistically independent, non-overlapping sequences,
/// which is what makes per-tree randomness reproducible regardless of how
/// many workers grow the forest: tree b always draws from stream b.
class Philox {
 public:
  Philox(uint64_t seed, uint64_t stream) {
    key_[0] = static_cast<uint32_t>(seed);
    key_[1] = static_cast<uint32_t>(seed >> 32);
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<uint32_t>(stream);
    ctr_[3] = static_cast<uint32_t>(stream >> 32);
  }

  uint32_t next_u32() {
    if (have_ == 0) {
      block(ctr_, key_, out_);
      // 64-bit block counter in words 0..1; words 2..3 hold the stream id.
      if (++ctr_[0] == 0) ++ctr_[1];
      have_ = 4;
    }
    return out_[4 - have_--];
  }

  uint64_t next_u64() {
    uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Unbiased integer in [0, n). n must be >= 1.
  uint32_t uniform_below(uint32_t n) {
    if (n <= 1) return 0;
    const uint32_t limit = UINT32_MAX - UINT32_MAX % n;
    uint32_t r;
    do {
      r = next_u32();
    } while (r >= limit);
    return r % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (second deviate cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;  // (0,1)
    const double u2 = uniform_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Raw 4x32 block for the given counter/key, exposed for known-answer tests.
  static void block(const uint32_t ctr[4], const uint32_t key[2],
                    uint32_t out[4]) {
    uint32_t c[4] = {ctr[0], ctr[1], ctr[2], ctr[3]};
    uint32_t k[2] = {key[0], key[1]};
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k[0] += 0x9E3779B9u;
        k[1] += 0xBB67AE85u;
      }
      const uint64_t p0 = static_cast<uint64_t>(0xD2511F53u) * c[0];
      const uint64_t p1 = static_cast<uint64_t>(0xCD9E8D57u) * c[2];
      const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
      const uint32_t lo0 = static_cast<uint32_t>(p0);
      const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
      const uint32_t lo1 = static_cast<uint32_t>(p1);
      const uint32_t n0 = hi1 ^ c[1] ^ k[0];
      const uint32_t n1 = lo1;
      const uint32_t n2 = hi0 ^ c[3] ^ k[1];
      const uint32_t n3 = lo0;
      c[0] = n0;
      c[1] = n1;
      c[2] = n2;
      c[3] = n3;
    }
    out[0] = c[0];
    out[1] = c[1];
    out[2] = c[2];
    out[3] = c[3];
  }

 private:
  uint32_t key_[2];
  uint32_t ctr_[4];
  uint32_t out_[4];
  int have_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; used to derive sub-seeds (per grid cell, etc.) from
/// a master seed without correlated streams.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return mix_seed(a ^ mix_seed(b));
}

inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) {
  return mix_seed(mix_seed(a, b) ^ mix_seed(c));
}

}  // namespace hpf
