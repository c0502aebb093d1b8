#pragma once

#include <cstdint>

namespace ernet::rng {

/**
 * Counter-based random draws.  Every value is a pure function of the key
 * words fed into the hash, so draws can be made in any order (or in
 * parallel) and still reproduce bit-for-bit from the seed alone.
 */

inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Stream tags keep independent consumers of the same seed from colliding.
enum Stream : uint64_t {
  EdgeStream = 0x45444745,
  DtwaStream = 0x44545741,
  SubsampleStream = 0x53554253,
};

inline uint64_t hash_key(uint64_t seed, uint64_t stream, uint64_t a, uint64_t b,
                         uint64_t c = 0) {
  const uint64_t golden = 0x9e3779b97f4a7c15ULL;
  uint64_t h = mix64(seed + golden);
  h = mix64(h ^ (stream + golden));
  h = mix64(h ^ (a + golden));
  h = mix64(h ^ (b + golden));
  h = mix64(h ^ (c + golden));
  return h;
}

/// Uniform double in [0, 1) from a key; 53-bit resolution.
inline double uniform(uint64_t seed, uint64_t stream, uint64_t a, uint64_t b,
                      uint64_t c = 0) {
  return static_cast<double>(hash_key(seed, stream, a, b, c) >> 11) * 0x1.0p-53;
}

/// Random sign (+1 or -1) from a key.
inline double sign(uint64_t seed, uint64_t stream, uint64_t a, uint64_t b,
                   uint64_t c = 0) {
  return (hash_key(seed, stream, a, b, c) & 1u) ? 1.0 : -1.0;
}

}  // namespace ernet::rng
