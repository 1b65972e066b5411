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

#include "crclab/bitvec.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

#include "crclab/errors.hpp"
#include "crclab/rng.hpp"

namespace crclab {

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw ParseError(std::string("invalid bit character '") + bits[i] + "'",
                       i);
  }
  return v;
}

BitVec BitVec::from_bytes(std::span<const std::uint8_t> bytes,
                          std::size_t nbits) {
  assert(nbits <= bytes.size() * 8);
  BitVec v(nbits);
  const std::size_t full = nbits / 8;
  for (std::size_t i = 0; i < full; ++i) v.bytes_[i] = bytes[i];
  const std::size_t rest = nbits % 8;
  if (rest != 0) {
    const std::uint8_t mask =
        static_cast<std::uint8_t>(0xFF << (8 - rest));
    v.bytes_[full] = bytes[full] & mask;
  }
  return v;
}

BitVec BitVec::from_uint(std::uint64_t value, std::size_t nbits) {
  assert(nbits <= 64);
  BitVec v(nbits);
  for (std::size_t i = 0; i < nbits; ++i)
    v.set(i, (value >> (nbits - 1 - i)) & 1);
  return v;
}

BitVec BitVec::random(std::size_t nbits, SplitMix64& rng) {
  BitVec v(nbits);
  std::size_t i = 0;
  // Eight bytes per draw, consumed most significant byte first.
  while (i + 8 <= v.bytes_.size()) {
    std::uint64_t w = rng.next();
    for (int k = 7; k >= 0; --k) v.bytes_[i++] = (w >> (8 * k)) & 0xFF;
  }
  if (i < v.bytes_.size()) {
    std::uint64_t w = rng.next();
    for (int k = 7; i < v.bytes_.size(); --k) v.bytes_[i++] = (w >> (8 * k)) & 0xFF;
  }
  const std::size_t rest = nbits % 8;
  if (rest != 0)
    v.bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - rest));
  return v;
}

void BitVec::push_back(bool v) {
  if (nbits_ % 8 == 0) bytes_.push_back(0);
  ++nbits_;
  set(nbits_ - 1, v);
}

void BitVec::append(const BitVec& other) {
  if (nbits_ % 8 == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    nbits_ += other.nbits_;
    return;
  }
  for (std::size_t i = 0; i < other.nbits_; ++i) push_back(other.get(i));
}

void BitVec::xor_at(std::size_t offset, const BitVec& pattern) {
  assert(offset + pattern.size() <= nbits_);
  if (offset % 8 == 0) {
    for (std::size_t b = 0; b < pattern.bytes_.size(); ++b)
      bytes_[offset / 8 + b] ^= pattern.bytes_[b];
    return;
  }
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern.get(i)) flip(offset + i);
}

void BitVec::insert(std::size_t pos, const BitVec& pattern) {
  assert(pos <= nbits_);
  BitVec out(nbits_ + pattern.size());
  std::size_t o = 0;
  for (std::size_t i = 0; i < pos; ++i) out.set(o++, get(i));
  for (std::size_t i = 0; i < pattern.size(); ++i) out.set(o++, pattern.get(i));
  for (std::size_t i = pos; i < nbits_; ++i) out.set(o++, get(i));
  *this = std::move(out);
}

void BitVec::erase(std::size_t pos, std::size_t count) {
  assert(pos + count <= nbits_);
  BitVec out(nbits_ - count);
  std::size_t o = 0;
  for (std::size_t i = 0; i < pos; ++i) out.set(o++, get(i));
  for (std::size_t i = pos + count; i < nbits_; ++i) out.set(o++, get(i));
  *this = std::move(out);
}

void BitVec::overwrite(std::size_t pos, const BitVec& pattern) {
  assert(pos + pattern.size() <= nbits_);
  for (std::size_t i = 0; i < pattern.size(); ++i) set(pos + i, pattern.get(i));
}

BitVec BitVec::slice(std::size_t pos, std::size_t count) const {
  assert(pos + count <= nbits_);
  BitVec out(count);
  for (std::size_t i = 0; i < count; ++i) out.set(i, get(pos + i));
  return out;
}

std::size_t BitVec::popcount() const {
  std::size_t n = 0;
  for (std::uint8_t b : bytes_) n += std::popcount(b);
  return n;
}

std::string BitVec::to_string() const {
  std::string s(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::uint64_t BitVec::to_uint() const {
  if (nbits_ > 64) throw std::length_error("BitVec::to_uint: more than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < nbits_; ++i) v = (v << 1) | (get(i) ? 1u : 0u);
  return v;
}

}  // namespace crclab
