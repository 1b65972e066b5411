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

// Hamming single-error-correcting codec with the SECDED extension.
//
// Parity bits sit at the power-of-two positions (1, 2, 4, 8, ...) and are
// chosen for EVEN parity over their coverage groups (the positions whose
// index has that power's bit set). The syndrome of a received word is then
// the XOR of the 1-based positions holding a 1, which names the flipped
// position directly. Messages that do not fill a complete code are handled
// as shortened codes: the high data positions are implied zero and dropped.

#ifndef CRCLAB_HAMMING_HPP_
#define CRCLAB_HAMMING_HPP_

#include <cstdint>
#include <optional>

#include "crclab/bitvec.hpp"

namespace crclab {

struct HammingParams {
  unsigned r = 0;  // parity bits
  unsigned n = 0;  // codeword length, 2^r - 1
  unsigned k = 0;  // message bits, n - r
  double rate = 0; // k / n
  // Message length actually carried when the code is shortened.
  std::optional<unsigned> shortened_k;
};

// Parameters of the complete code with r parity bits; r >= 2.
HammingParams params(unsigned r);

// Parameters used to encode a message of this many bits: the smallest
// complete code that fits, with shortened_k set when it is not exact.
HammingParams params_for_message(unsigned message_bits);

BitVec encode(const BitVec& message);

enum class Correction { kNone, kPosition, kUncorrectable };

struct DecodeResult {
  BitVec message;
  unsigned syndrome = 0;
  Correction correction = Correction::kNone;
  // 1-based position that was repaired, when correction == kPosition.
  unsigned position = 0;
};

// Decodes a (possibly shortened) codeword of at least 3 bits. A zero
// syndrome means no correction; a syndrome pointing inside the word flips
// that position; one pointing past the end (possible only for shortened
// codes) is uncorrectable.
DecodeResult decode(const BitVec& codeword);

// Appends the overall even-parity bit.
BitVec extend_secded(const BitVec& codeword);

enum class SecdedStatus { kClean, kCorrected, kDoubleError };

struct SecdedResult {
  SecdedStatus status = SecdedStatus::kClean;
  unsigned position = 0;  // corrected 1-based position, parity bit = n+1
  BitVec message;
};

SecdedResult check_secded(const BitVec& extended);

}  // namespace crclab

#endif  // CRCLAB_HAMMING_HPP_
