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

#include "crclab/bitvec.hpp"
#include "crclab/errors.hpp"
#include "crclab/rng.hpp"

using crclab::BitVec;
using crclab::SplitMix64;

TEST_CASE("string round trip and addressing") {
  const BitVec v = BitVec::from_string("100110100");
  CHECK(v.size() == 9);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
  CHECK(v.get(3));
  CHECK(v.to_string() == "100110100");
  CHECK_THROWS_AS(BitVec::from_string("102"), crclab::ParseError);
}

TEST_CASE("bytes are packed MSB first with a zero tail") {
  const BitVec v = BitVec::from_string("1000000101");
  const auto bytes = v.bytes();
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0x81);
  CHECK(bytes[1] == 0x40);  // trailing 6 bits stay zero
}

TEST_CASE("from_uint emits most significant bit first") {
  CHECK(BitVec::from_uint(0b0110, 4).to_string() == "0110");
  CHECK(BitVec::from_uint(1, 3).to_string() == "001");
  CHECK(BitVec::from_uint(0b0110, 4).to_uint() == 6);
}

TEST_CASE("xor_at flips exactly the pattern bits") {
  BitVec v = BitVec::from_string("00000000000");
  v.xor_at(3, BitVec::from_string("10011"));
  CHECK(v.to_string() == "00010011000");
  v.xor_at(3, BitVec::from_string("10011"));
  CHECK(v.popcount() == 0);
}

TEST_CASE("insert and erase shift the remainder") {
  BitVec v = BitVec::from_string("101010");
  v.insert(2, BitVec::from_string("111"));
  CHECK(v.to_string() == "101111010");
  v.erase(2, 3);
  CHECK(v.to_string() == "101010");
  v.insert(6, BitVec::from_string("1"));  // at the end
  CHECK(v.to_string() == "1010101");
}

TEST_CASE("overwrite and slice") {
  BitVec v = BitVec::from_string("11111111");
  v.overwrite(2, BitVec::from_string("000"));
  CHECK(v.to_string() == "11000111");
  CHECK(v.slice(2, 3).to_string() == "000");
  CHECK(v.slice(0, 0).size() == 0);
}

TEST_CASE("append crosses byte boundaries") {
  BitVec v = BitVec::from_string("1100110");
  v.append(BitVec::from_string("0101"));
  CHECK(v.to_string() == "11001100101");
  BitVec w = BitVec::from_string("11001100");
  w.append(BitVec::from_string("10"));
  CHECK(w.to_string() == "1100110010");
}

TEST_CASE("random generation is deterministic per seed") {
  SplitMix64 a(42), b(42), c(43);
  const BitVec va = BitVec::random(1000, a);
  const BitVec vb = BitVec::random(1000, b);
  const BitVec vc = BitVec::random(1000, c);
  CHECK(va == vb);
  CHECK(va != vc);
  // Roughly half the bits set; this is a sanity band, not a statistics test.
  CHECK(va.popcount() > 400);
  CHECK(va.popcount() < 600);
}
