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

#include <doctest.h>

#include <string>
#include <vector>

#include "crclab/crc.hpp"
#include "crclab/errors.hpp"
#include "crclab/polygen.hpp"
#include "crclab/rng.hpp"

using namespace crclab;

namespace {

CrcSpec spec_of(const char* hex, std::uint64_t init = 0) {
  return CrcSpec::make(Gf2Poly::parse_hex(hex), init);
}

BitVec random_bits(SplitMix64& rng, std::size_t max_bits) {
  return BitVec::random(rng.next_below(max_bits + 1), rng);
}

}  // namespace

TEST_CASE("worked long-division checksums") {
  const CrcSpec g1101 = CrcSpec::make(Gf2Poly::parse_binary("1101"));
  CHECK(crc_bitwise(BitVec::from_string("100100"), g1101) == 0b001);
  CHECK(checksum_binary(crc_bitwise(BitVec::from_string("100100"), g1101),
                        3) == "001");

  const CrcSpec g10011 = CrcSpec::make(Gf2Poly::parse_binary("10011"));
  CHECK(crc_bitwise(BitVec::from_string("11010110"), g10011) == 0b0110);
  // The nine-bit variant of the same message checks to 1111, not 0110.
  CHECK(crc_bitwise(BitVec::from_string("110101101"), g10011) == 0b1111);

  CHECK(crc_bitwise(BitVec(), g1101) == 0);
}

TEST_CASE("append then verify") {
  const CrcSpec g1101 = CrcSpec::make(Gf2Poly::parse_binary("1101"));
  const Codeword cw = append_checksum(BitVec::from_string("100100"), g1101);
  CHECK(cw.bits.to_string() == "100100001");
  CHECK(verify(cw.bits, g1101));

  const CrcSpec g10011 = CrcSpec::make(Gf2Poly::parse_binary("10011"));
  const Codeword cw2 = append_checksum(BitVec::from_string("11010110"), g10011);
  CHECK(cw2.bits.to_string() == "110101100110");
  CHECK(verify(cw2.bits, g10011));

  const Codeword empty = append_checksum(BitVec(), g1101);
  CHECK(empty.checksum() == 0);
  CHECK(verify(empty.bits, g1101));

  CHECK_THROWS_AS(verify(BitVec::from_string("10"), g1101),
                  std::invalid_argument);
}

TEST_CASE("a corrupted word that is a generator multiple slips through") {
  // 110011001 = 1101 * 100111; the division leaves no remainder, so this
  // corruption of 100100001 is accepted. It is the canonical undetected
  // error fixture.
  const CrcSpec g1101 = CrcSpec::make(Gf2Poly::parse_binary("1101"));
  const BitVec corrupted = BitVec::from_string("110011001");
  CHECK(verify(corrupted, g1101));
  CHECK((Gf2Poly::parse_binary("110011001") % Gf2Poly::parse_binary("1101"))
            .is_zero());
}

TEST_CASE("single bit flips are always rejected") {
  const CrcSpec g1101 = CrcSpec::make(Gf2Poly::parse_binary("1101"));
  const BitVec valid = BitVec::from_string("100100001");
  for (std::size_t i = 0; i < valid.size(); ++i) {
    BitVec flipped = valid;
    flipped.flip(i);
    CHECK_FALSE(verify(flipped, g1101));
  }

  // Exhaustive over positions for a 256-bit codeword and a few generators.
  SplitMix64 rng(101);
  for (const char* hex : {"0x11021", "0x18005", "0x136C3"}) {
    const CrcSpec spec = spec_of(hex);
    const Codeword cw = append_checksum(BitVec::random(240, rng), spec);
    for (std::size_t i = 0; i < cw.bits.size(); ++i) {
      BitVec flipped = cw.bits;
      flipped.flip(i);
      CHECK_FALSE(verify(flipped, spec));
    }
  }
}

TEST_CASE("table entries match the bitwise engine byte by byte") {
  const CrcSpec spec = spec_of("0x11021");
  const CrcTable table = build_table(spec);
  CHECK(table.entry[0] == 0);
  // entry[0x80] extends an empty register by the byte 0x80, which is the
  // remainder of x^7 * x^16 modulo the generator.
  CHECK(table.entry[0x80] ==
        powmod_x(7 + 16, spec.generator).to_u64());
  for (unsigned b = 0; b < 256; ++b) {
    const std::uint8_t byte[1] = {static_cast<std::uint8_t>(b)};
    CrcSpec zero = spec;
    zero.init = 0;
    CHECK(table.entry[b] ==
          crc_bitwise(std::span<const std::uint8_t>(byte, 1), zero));
  }
  CHECK_THROWS_AS(build_table(CrcSpec::make(Gf2Poly::parse_binary("1101"))),
                  crclab::UnsupportedDegreeError);
}

TEST_CASE("table engine equals bitwise engine") {
  const std::vector<GeneratorRecord> records =
      load_curated_strict(default_table_path());
  SplitMix64 rng(202);
  for (const GeneratorRecord& rec : records) {
    const CrcSpec spec = CrcSpec::make(rec.poly);
    const CrcTable table = build_table(spec);
    for (int i = 0; i < 20; ++i) {
      const std::size_t nbytes = rng.next_below(512);
      std::vector<std::uint8_t> msg(nbytes);
      for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next());
      CHECK(crc_table(msg, spec, table) == crc_bitwise(msg, spec));
    }
  }
}

TEST_CASE("checksum of the ASCII digits") {
  const CrcSpec spec = spec_of("0x11021");
  const CrcTable table = build_table(spec);
  const std::string digits = "123456789";
  std::vector<std::uint8_t> msg(digits.begin(), digits.end());
  CHECK(crc_table(msg, spec, table) == 0x31C3);
  CHECK(crc_bitwise(msg, spec) == 0x31C3);
  CHECK(checksum_hex(0x31C3, 16) == "0x31C3");
  CHECK(crc_table(std::vector<std::uint8_t>{}, spec, table) == 0);
}

TEST_CASE("bit-granular messages through the table engine") {
  const CrcSpec spec = spec_of("0x18005");
  const CrcTable table = build_table(spec);
  SplitMix64 rng(303);
  for (int i = 0; i < 100; ++i) {
    const BitVec msg = random_bits(rng, 200);
    CHECK(crc_bits(msg, spec, table) == crc_bitwise(msg, spec));
  }
}

TEST_CASE("nonzero init preloads the register") {
  const CrcSpec spec = spec_of("0x11021", 0xFFFF);
  const CrcTable table = build_table(spec);
  SplitMix64 rng(404);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::uint8_t> msg(rng.next_below(64));
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next());
    CHECK(crc_table(msg, spec, table) == crc_bitwise(msg, spec));
  }
  // Append/verify still round-trips, but the codeword is no longer a
  // multiple of the generator.
  const BitVec msg = BitVec::from_string("1100110011");
  const Codeword cw = append_checksum(msg, spec);
  CHECK(verify(cw.bits, spec));
  CHECK_FALSE((Gf2Poly::parse_binary(cw.bits.to_string()) % spec.generator)
                  .is_zero());
  CHECK_THROWS_AS(spec_of("0x11021", 0x10000), std::invalid_argument);
}

TEST_CASE("undetected errors are exactly the generator multiples") {
  SplitMix64 rng(505);
  const CrcSpec spec = spec_of("0x18005");
  const Codeword cw = append_checksum(BitVec::random(300, rng), spec);
  int undetected = 0;
  for (int i = 0; i < 400; ++i) {
    // Random error pattern over the whole codeword, sometimes sparse.
    BitVec error(cw.bits.size());
    const int flips = 1 + static_cast<int>(rng.next_below(40));
    for (int f = 0; f < flips; ++f)
      error.flip(rng.next_below(error.size()));
    if (error.popcount() == 0) continue;
    BitVec corrupted = cw.bits;
    corrupted.xor_at(0, error);
    const bool accepted = verify(corrupted, spec);
    const bool divisible =
        (Gf2Poly::parse_binary(error.to_string()) % spec.generator).is_zero();
    CHECK(accepted == divisible);
    if (accepted) ++undetected;
  }
  // Also exercise a guaranteed-undetected case: a shifted generator.
  BitVec corrupted = cw.bits;
  const BitVec gen_pattern = BitVec::from_string(spec.generator.to_binary());
  corrupted.xor_at(37, gen_pattern);
  CHECK(verify(corrupted, spec));
  (void)undetected;
}

TEST_CASE("bursts no longer than the width never pass") {
  // Unit-sized slice of the exhaustive property: one generator, a 128-bit
  // codeword, every burst span up to 16 at every offset, random interiors.
  SplitMix64 rng(606);
  const CrcSpec spec = spec_of("0x11021");
  const Codeword cw = append_checksum(BitVec::random(112, rng), spec);
  for (unsigned span = 1; span <= 16; ++span) {
    for (std::size_t offset = 0; offset + span <= cw.bits.size(); ++offset) {
      BitVec pattern = BitVec::random(span, rng);
      pattern.set(0, true);
      pattern.set(span - 1, true);
      BitVec corrupted = cw.bits;
      corrupted.xor_at(offset, pattern);
      CHECK_FALSE(verify(corrupted, spec));
    }
  }
}

TEST_CASE("odd-weight errors never pass when x+1 divides the generator") {
  const CrcSpec spec = spec_of("0x18005");  // (x+1)(x^15+x+1)
  SplitMix64 rng(707);
  const Codeword cw = append_checksum(BitVec::random(200, rng), spec);
  for (int i = 0; i < 300; ++i) {
    BitVec error(cw.bits.size());
    const int flips = 1 + 2 * static_cast<int>(rng.next_below(20));
    // Flip an odd number of distinct positions.
    std::set<std::uint64_t> pos;
    while (pos.size() < static_cast<std::size_t>(flips))
      pos.insert(rng.next_below(error.size()));
    for (std::uint64_t p : pos) error.flip(p);
    BitVec corrupted = cw.bits;
    corrupted.xor_at(0, error);
    CHECK_FALSE(verify(corrupted, spec));
  }
}
