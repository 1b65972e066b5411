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

// Packed bit string with MSB-first addressing: bit i of the stream lives in
// byte i/8 at bit position 7-(i%8). This matches how a message enters a CRC
// shift register, so byte-at-a-time engines can consume bytes() directly.

#ifndef CRCLAB_BITVEC_HPP_
#define CRCLAB_BITVEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crclab {

class SplitMix64;

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : bytes_((nbits + 7) / 8), nbits_(nbits) {}

  static BitVec from_string(std::string_view bits);  // "0101..."
  static BitVec from_bytes(std::span<const std::uint8_t> bytes,
                           std::size_t nbits);
  // Low `nbits` of `value`, emitted most significant bit first.
  static BitVec from_uint(std::uint64_t value, std::size_t nbits);
  static BitVec random(std::size_t nbits, SplitMix64& rng);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
  }
  void set(std::size_t i, bool v) {
    const std::uint8_t m = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
    if (v)
      bytes_[i >> 3] |= m;
    else
      bytes_[i >> 3] &= static_cast<std::uint8_t>(~m);
  }
  void flip(std::size_t i) { bytes_[i >> 3] ^= 1u << (7 - (i & 7)); }

  void push_back(bool v);
  void append(const BitVec& other);

  // XORs `pattern` into bits [offset, offset+pattern.size()); must fit.
  void xor_at(std::size_t offset, const BitVec& pattern);
  // Inserts the bits of `pattern` before position `pos` (pos may equal size).
  void insert(std::size_t pos, const BitVec& pattern);
  // Removes bits [pos, pos+count); must fit.
  void erase(std::size_t pos, std::size_t count);
  // Overwrites bits [pos, pos+pattern.size()) with `pattern`; must fit.
  void overwrite(std::size_t pos, const BitVec& pattern);

  BitVec slice(std::size_t pos, std::size_t count) const;

  std::size_t popcount() const;

  // Unused bits of the final byte are kept zero.
  std::span<const std::uint8_t> bytes() const { return bytes_; }

  std::string to_string() const;
  // Interprets the bits as an MSB-first integer; size() must be <= 64.
  std::uint64_t to_uint() const;

  bool operator==(const BitVec&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

}  // namespace crclab

#endif  // CRCLAB_BITVEC_HPP_
