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

#include "crclab/hamming.hpp"

#include <stdexcept>

namespace crclab {

namespace {

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

HammingParams params(unsigned r) {
  if (r < 2) throw std::domain_error("Hamming codes need r >= 2 parity bits");
  if (r >= 32) throw std::domain_error("r out of range");
  HammingParams p;
  p.r = r;
  p.n = (1u << r) - 1;
  p.k = p.n - r;
  p.rate = static_cast<double>(p.k) / static_cast<double>(p.n);
  return p;
}

HammingParams params_for_message(unsigned message_bits) {
  if (message_bits < 1)
    throw std::domain_error("message must carry at least one bit");
  unsigned r = 2;
  while (params(r).k < message_bits) ++r;
  HammingParams p = params(r);
  if (p.k != message_bits) p.shortened_k = message_bits;
  return p;
}

BitVec encode(const BitVec& message) {
  const HammingParams p =
      params_for_message(static_cast<unsigned>(message.size()));
  const unsigned length = static_cast<unsigned>(message.size()) + p.r;
  BitVec code(length);  // position i of the code is 1-based index i+1
  std::size_t next = 0;
  for (unsigned pos = 1; pos <= length; ++pos) {
    if (is_power_of_two(pos)) continue;
    code.set(pos - 1, message.get(next++));
  }
  for (unsigned parity = 1; parity <= length; parity <<= 1) {
    bool sum = false;
    for (unsigned pos = 1; pos <= length; ++pos)
      if ((pos & parity) != 0 && pos != parity && code.get(pos - 1))
        sum = !sum;
    code.set(parity - 1, sum);  // even parity over the coverage group
  }
  return code;
}

namespace {

unsigned syndrome_of(const BitVec& codeword) {
  unsigned syndrome = 0;
  for (std::size_t i = 0; i < codeword.size(); ++i)
    if (codeword.get(i)) syndrome ^= static_cast<unsigned>(i + 1);
  return syndrome;
}

BitVec extract_message(const BitVec& codeword) {
  BitVec message;
  for (std::size_t i = 0; i < codeword.size(); ++i)
    if (!is_power_of_two(static_cast<unsigned>(i + 1)))
      message.push_back(codeword.get(i));
  return message;
}

}  // namespace

DecodeResult decode(const BitVec& codeword) {
  if (codeword.size() < 3)
    throw std::invalid_argument("codeword too short to carry data");
  DecodeResult result;
  result.syndrome = syndrome_of(codeword);
  if (result.syndrome == 0) {
    result.correction = Correction::kNone;
    result.message = extract_message(codeword);
    return result;
  }
  if (result.syndrome > codeword.size()) {
    // Only reachable on shortened codes: the syndrome names a dropped
    // position, so more than one error must have occurred.
    result.correction = Correction::kUncorrectable;
    return result;
  }
  BitVec repaired = codeword;
  repaired.flip(result.syndrome - 1);
  result.correction = Correction::kPosition;
  result.position = result.syndrome;
  result.message = extract_message(repaired);
  return result;
}

BitVec extend_secded(const BitVec& codeword) {
  BitVec extended = codeword;
  extended.push_back(codeword.popcount() % 2 != 0);
  return extended;
}

SecdedResult check_secded(const BitVec& extended) {
  if (extended.size() < 4)
    throw std::invalid_argument("extended codeword too short");
  const BitVec inner = extended.slice(0, extended.size() - 1);
  const bool overall_odd = extended.popcount() % 2 != 0;
  const unsigned syndrome = syndrome_of(inner);
  SecdedResult result;
  if (!overall_odd && syndrome == 0) {
    result.status = SecdedStatus::kClean;
    result.message = extract_message(inner);
    return result;
  }
  if (overall_odd) {
    // A single flip somewhere, possibly in the parity bit itself.
    if (syndrome == 0) {
      result.status = SecdedStatus::kCorrected;
      result.position = static_cast<unsigned>(extended.size());
      result.message = extract_message(inner);
      return result;
    }
    if (syndrome <= inner.size()) {
      BitVec repaired = inner;
      repaired.flip(syndrome - 1);
      result.status = SecdedStatus::kCorrected;
      result.position = syndrome;
      result.message = extract_message(repaired);
      return result;
    }
  }
  result.status = SecdedStatus::kDoubleError;
  return result;
}

}  // namespace crclab
