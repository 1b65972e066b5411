// Copyright 2026 The crclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic randomness for corpus generation and error injection.
//
// The generator is SplitMix64 (Steele/Lea/Flood), chosen because it is a
// tiny, well-known, counter-based design: any block's stream can be opened
// directly from (master_seed, stream_id) without touching neighbouring
// blocks, which is what makes parallel corpus generation reproducible.

#ifndef CRCLAB_RNG_HPP_
#define CRCLAB_RNG_HPP_

#include <cstdint>

namespace crclab {

// SplitMix64 finalizer. Bijective on 64-bit values.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform draw from [0, bound) via rejection, bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform draw from the inclusive range [lo, hi].
  std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
    return lo + next_below(hi - lo + 1);
  }

  bool next_bit() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

// Seed of the stream `stream_id` under `master_seed`. Streams are decorrelated
// by running the ids through the finalizer twice; the derivation depends only
// on the two arguments, never on generation order.
inline std::uint64_t substream_seed(std::uint64_t master_seed,
                                    std::uint64_t stream_id) {
  return mix64(mix64(master_seed ^ 0x6A09E667F3BCC909ULL) + stream_id);
}

// Streams with equal ids but different roles (clean payload vs corruption
// draws vs retries) must not collide; tag them apart.
enum class StreamRole : std::uint64_t {
  kCleanPayload = 0x01,
  kCorruption = 0x02,
  kRetry = 0x03,
};

inline std::uint64_t role_seed(std::uint64_t master_seed, StreamRole role,
                               std::uint64_t stream_id) {
  return substream_seed(master_seed ^ (static_cast<std::uint64_t>(role) << 56),
                        stream_id);
}

}  // namespace crclab

#endif  // CRCLAB_RNG_HPP_
