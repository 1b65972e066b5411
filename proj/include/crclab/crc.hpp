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

// Cyclic redundancy checksums over GF(2).
//
// Two engines compute the same function: a bit-serial long-division engine
// (the reference; handles any message length in bits) and a byte-at-a-time
// table engine for throughput. The convention is fixed MSB-first with no
// reflection and no final XOR; with init = 0 the checksum is the remainder
// of message(x) * x^width modulo the generator, and a valid codeword is a
// multiple of the generator. A nonzero init preloads the register, which
// trades the divisibility property for protection of leading zero bits.

#ifndef CRCLAB_CRC_HPP_
#define CRCLAB_CRC_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "crclab/bitvec.hpp"
#include "crclab/gf2poly.hpp"

namespace crclab {

struct CrcSpec {
  Gf2Poly generator;    // degree == width
  unsigned width = 0;   // parity bits, 1..64
  std::uint64_t init = 0;

  // Derived constants for the register loops.
  std::uint64_t poly_low = 0;  // generator with the x^width term dropped
  std::uint64_t mask = 0;      // width low bits set

  // Validates 1 <= deg(generator) <= 64 and fills the derived fields.
  static CrcSpec make(Gf2Poly generator, std::uint64_t init = 0);
};

// Reference engine: one long-division step per message bit.
std::uint64_t crc_bitwise(const BitVec& message, const CrcSpec& spec);
std::uint64_t crc_bitwise(std::span<const std::uint8_t> message,
                          const CrcSpec& spec);

struct CrcTable {
  std::array<std::uint64_t, 256> entry;
};

// Sarwate table: entry[b] extends the register by the byte b. Requires
// width >= 8 (narrower widths stay on the bitwise engine).
CrcTable build_table(const CrcSpec& spec);

// Byte-at-a-time engine; equal to crc_bitwise on every whole-byte message.
std::uint64_t crc_table(std::span<const std::uint8_t> message,
                        const CrcSpec& spec, const CrcTable& table);

// Bit-granular message through the table engine: whole bytes via the table,
// trailing bits via the bitwise step. Falls back to crc_bitwise semantics.
std::uint64_t crc_bits(const BitVec& message, const CrcSpec& spec,
                       const CrcTable& table);

struct Codeword {
  BitVec bits;                   // message followed by the checksum
  std::size_t message_bits = 0;  // n; total length is n + width
  unsigned width = 0;

  BitVec message() const { return bits.slice(0, message_bits); }
  std::uint64_t checksum() const {
    return bits.slice(message_bits, width).to_uint();
  }
};

Codeword append_checksum(const BitVec& message, const CrcSpec& spec);

// Accept iff running the received word through the register leaves it zero.
// With init = 0 that means the word is a multiple of the generator; for any
// init it accepts exactly the outputs of append_checksum. Words shorter than
// the checksum width are malformed and throw std::invalid_argument.
bool verify(const BitVec& codeword, const CrcSpec& spec);

// Zero-padded binary rendering of a width-bit checksum, e.g. "001".
std::string checksum_binary(std::uint64_t value, unsigned width);
std::string checksum_hex(std::uint64_t value, unsigned width);

}  // namespace crclab

#endif  // CRCLAB_CRC_HPP_
