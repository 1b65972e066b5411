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

// Deterministic packet corpora and error injection.
//
// A corpus is never stored: packet i and its corruption are pure functions
// of (config, master_seed, i), so any block can be regenerated bit-exactly,
// in any order, on any number of workers. The manifest records what was done
// to each block and is sufficient for replay.
//
// Error classes: burst (a XOR pattern whose first and last bits are set, so
// the span between the outermost errors equals the recorded length), random
// bit flips, bit insertion, bit deletion, and span replacement. Corruptions
// that leave the block unchanged are rejected and redrawn from a retry
// substream, so every record changes its block.

#ifndef CRCLAB_ERRINJECT_HPP_
#define CRCLAB_ERRINJECT_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crclab/bitvec.hpp"

namespace crclab {

enum class ErrorKind : int {
  kBurst = 0,
  kRandomFlips = 1,
  kInsertion = 2,
  kDeletion = 3,
  kReplacement = 4,
};
inline constexpr int kErrorKindCount = 5;

std::string to_string(ErrorKind kind);
ErrorKind error_kind_from_string(const std::string& name);

struct ErrorSpec {
  ErrorKind kind = ErrorKind::kBurst;
  std::uint64_t offset = 0;  // bit index
  // Burst/replacement: span in bits. Flips: flip count. Insertion/deletion:
  // number of bits added or removed.
  std::uint64_t length = 0;
  // Optional explicit burst pattern (length bits, first and last set).
  std::optional<BitVec> pattern;
};

struct CorruptionRecord {
  std::uint64_t block_id = 0;
  std::vector<ErrorSpec> specs;
  std::uint64_t seed = 0;  // substream that produced the applied draws
  std::uint64_t resulting_length = 0;  // bits
  std::uint64_t hd = 0;                // vs the clean block, tail-padded
  std::uint64_t length_delta = 0;
  std::uint64_t differing_bytes = 0;
};

// Draw ranges for the randomized error parameters, all inclusive. A zero
// max means "packet_bits".
struct ErrorModelParams {
  std::uint64_t burst_min = 2, burst_max = 0;
  std::uint64_t flips_min = 1, flips_max = 64;
  std::uint64_t insert_min = 1, insert_max = 64;
  std::uint64_t delete_min = 1, delete_max = 64;
  std::uint64_t replace_min = 18, replace_max = 0;
};

struct CorpusConfig {
  std::uint64_t packet_count = 727552;
  std::uint64_t packet_bits = 65536;  // must be a multiple of 8
  // Proportion of blocks per error kind, indexed by ErrorKind; sums to 1.
  std::array<double, kErrorKindCount> mix = {0.2, 0.2, 0.2, 0.2, 0.2};
  std::uint64_t master_seed = 0;
  std::string payload_file;  // empty: seeded-random payloads
  ErrorModelParams params;

  void validate() const;  // throws ConfigError
};

// Clean packet i. Deterministic from (config, master_seed, i).
BitVec generate_clean(const CorpusConfig& config, std::uint64_t block_id);

// Tail-padded Hamming distance: the shorter input is zero-extended, the
// length difference is reported separately rather than folded in.
struct HammingDistance {
  std::uint64_t hd = 0;
  std::uint64_t length_delta = 0;
};
HammingDistance hamming_distance(const BitVec& a, const BitVec& b);
std::uint64_t differing_bytes(const BitVec& a, const BitVec& b);

// Applies one error spec. Randomized fields (patterns, positions) are drawn
// from `seed`; a draw that would leave the block unchanged is redrawn from
// the next retry substream, up to a bounded number of attempts.
std::pair<BitVec, CorruptionRecord> corrupt(const BitVec& block,
                                            const ErrorSpec& spec,
                                            std::uint64_t seed,
                                            std::uint64_t block_id = 0);

// The error kind assigned to a block. A fixed coprime stride spreads the
// kinds across block ids while keeping each kind's total within one block
// of its exact proportion.
ErrorKind kind_for_block(const CorpusConfig& config, std::uint64_t block_id);

// Clean packet + drawn corruption for one block, all from substreams of the
// master seed.
std::pair<BitVec, CorruptionRecord> corrupt_block(const CorpusConfig& config,
                                                  std::uint64_t block_id,
                                                  const BitVec& clean);

struct Manifest {
  CorpusConfig config;
  std::vector<CorruptionRecord> records;  // one per block, by block_id
};

// Generates every block's corruption record. Workers only affect speed;
// 0 means use all hardware threads.
Manifest build_corpus(const CorpusConfig& config, int workers = 1);

// Regenerates the corrupted block described by a record.
BitVec replay_block(const CorpusConfig& config, const CorruptionRecord& rec);

// Manifest file: one JSON object per line, header first.
void write_manifest(std::ostream& out, const Manifest& manifest);
Manifest read_manifest(std::istream& in);

// Raw clean-corpus file: "CRCCORP1" magic, version, packet_bits, count,
// then the packets back to back.
void materialize_clean(const CorpusConfig& config, const std::string& path);

}  // namespace crclab

#endif  // CRCLAB_ERRINJECT_HPP_
