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

#include "crclab/crc.hpp"

#include <stdexcept>

#include "crclab/errors.hpp"

namespace crclab {

namespace {

inline std::uint64_t width_mask(unsigned width) {
  return width == 64 ? ~0ULL : (1ULL << width) - 1;
}

// One division step: shift a message bit into the register.
inline std::uint64_t step_bit(std::uint64_t reg, bool bit,
                              const CrcSpec& spec) {
  const bool feedback = ((reg >> (spec.width - 1)) & 1) ^ bit;
  reg = (reg << 1) & spec.mask;
  if (feedback) reg ^= spec.poly_low;
  return reg;
}

inline std::uint64_t step_byte(std::uint64_t reg, std::uint8_t byte,
                               const CrcSpec& spec, const CrcTable& table) {
  const std::uint8_t idx =
      static_cast<std::uint8_t>((reg >> (spec.width - 8)) ^ byte);
  return ((reg << 8) & spec.mask) ^ table.entry[idx];
}

}  // namespace

CrcSpec CrcSpec::make(Gf2Poly generator, std::uint64_t init) {
  const auto deg = generator.degree();
  if (!deg || *deg < 1 || *deg > 64)
    throw std::invalid_argument(
        "CRC generator must have degree between 1 and 64");
  CrcSpec spec;
  spec.width = *deg;
  spec.mask = width_mask(spec.width);
  // Drop the leading term; the low bits fit the register by construction.
  Gf2Poly low = generator + Gf2Poly::monomial(spec.width);
  spec.poly_low = low.is_zero() ? 0 : low.to_u64();
  spec.generator = std::move(generator);
  if ((init & spec.mask) != init)
    throw std::invalid_argument("CRC init value wider than the register");
  spec.init = init;
  return spec;
}

std::uint64_t crc_bitwise(const BitVec& message, const CrcSpec& spec) {
  std::uint64_t reg = spec.init;
  for (std::size_t i = 0; i < message.size(); ++i)
    reg = step_bit(reg, message.get(i), spec);
  return reg;
}

std::uint64_t crc_bitwise(std::span<const std::uint8_t> message,
                          const CrcSpec& spec) {
  std::uint64_t reg = spec.init;
  for (std::uint8_t byte : message)
    for (int k = 7; k >= 0; --k) reg = step_bit(reg, (byte >> k) & 1, spec);
  return reg;
}

CrcTable build_table(const CrcSpec& spec) {
  if (spec.width < 8)
    throw UnsupportedDegreeError(
        "table engine needs width >= 8; use the bitwise engine");
  CrcTable table;
  CrcSpec zero_init = spec;
  zero_init.init = 0;
  for (unsigned b = 0; b < 256; ++b) {
    const std::uint8_t byte[1] = {static_cast<std::uint8_t>(b)};
    table.entry[b] = crc_bitwise(std::span<const std::uint8_t>(byte, 1),
                                 zero_init);
  }
  return table;
}

std::uint64_t crc_table(std::span<const std::uint8_t> message,
                        const CrcSpec& spec, const CrcTable& table) {
  std::uint64_t reg = spec.init;
  for (std::uint8_t byte : message) reg = step_byte(reg, byte, spec, table);
  return reg;
}

std::uint64_t crc_bits(const BitVec& message, const CrcSpec& spec,
                       const CrcTable& table) {
  const std::size_t full_bytes = message.size() / 8;
  std::uint64_t reg = spec.init;
  const auto bytes = message.bytes();
  for (std::size_t i = 0; i < full_bytes; ++i)
    reg = step_byte(reg, bytes[i], spec, table);
  for (std::size_t i = full_bytes * 8; i < message.size(); ++i)
    reg = step_bit(reg, message.get(i), spec);
  return reg;
}

Codeword append_checksum(const BitVec& message, const CrcSpec& spec) {
  Codeword cw;
  cw.message_bits = message.size();
  cw.width = spec.width;
  cw.bits = message;
  cw.bits.append(BitVec::from_uint(crc_bitwise(message, spec), spec.width));
  return cw;
}

bool verify(const BitVec& codeword, const CrcSpec& spec) {
  if (codeword.size() < spec.width)
    throw std::invalid_argument("codeword shorter than the checksum width");
  return crc_bitwise(codeword, spec) == 0;
}

std::string checksum_binary(std::uint64_t value, unsigned width) {
  std::string out(width, '0');
  for (unsigned i = 0; i < width; ++i)
    if ((value >> (width - 1 - i)) & 1) out[i] = '1';
  return out;
}

std::string checksum_hex(std::uint64_t value, unsigned width) {
  const unsigned digits = (width + 3) / 4;
  std::string out(digits, '0');
  for (unsigned i = 0; i < digits; ++i)
    out[digits - 1 - i] = "0123456789ABCDEF"[(value >> (4 * i)) & 0xF];
  return "0x" + out;
}

}  // namespace crclab
