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

#include <set>

#include "crclab/errors.hpp"
#include "crclab/gf2poly.hpp"
#include "crclab/rng.hpp"

using crclab::Gf2Poly;
using crclab::SplitMix64;

namespace {

Gf2Poly random_poly(SplitMix64& rng, unsigned max_degree) {
  const unsigned deg = static_cast<unsigned>(rng.next_below(max_degree + 1));
  Gf2Poly p = Gf2Poly::monomial(deg);
  for (unsigned i = 0; i < deg; ++i)
    if (rng.next_bit()) p = p + Gf2Poly::monomial(i);
  return p;
}

// Order by brute-force register stepping, independent of the lcm route.
std::uint64_t order_by_stepping(const Gf2Poly& f) {
  Gf2Poly cur = Gf2Poly::x() % f;
  std::uint64_t d = 1;
  while (!cur.is_one()) {
    cur = (cur * Gf2Poly::x()) % f;
    ++d;
  }
  return d;
}

}  // namespace

TEST_CASE("parsing the three text forms") {
  const Gf2Poly ccitt = Gf2Poly::parse_hex("0x11021");
  CHECK(ccitt.to_terms() == "x^16+x^12+x^5+1");
  CHECK(ccitt.degree() == 16u);
  CHECK(ccitt.weight() == 4);

  const Gf2Poly g4 = Gf2Poly::parse_binary("10011");
  CHECK(g4.to_terms() == "x^4+x+1");

  CHECK(Gf2Poly::parse_hex("0x1").is_one());
  CHECK(Gf2Poly::parse_terms("x^16+x^12+x^5+1") == ccitt);
  CHECK(Gf2Poly::parse_terms("1") == Gf2Poly::one());
  CHECK(Gf2Poly::parse_terms("x") == Gf2Poly::x());
  CHECK(Gf2Poly::parse_terms("0").is_zero());
}

TEST_CASE("parse errors name the offending position") {
  CHECK_THROWS_AS(Gf2Poly::parse_hex("0x1G021"), crclab::ParseError);
  CHECK_THROWS_AS(Gf2Poly::parse_binary("10021"), crclab::ParseError);
  CHECK_THROWS_AS(Gf2Poly::parse_terms("x^16+y"), crclab::ParseError);
  CHECK_THROWS_AS(Gf2Poly::parse_terms("x^5+x^5"), crclab::ParseError);
  CHECK_THROWS_AS(Gf2Poly::parse_binary(""), crclab::ParseError);
  try {
    Gf2Poly::parse_binary("10021");
    FAIL("expected a parse error");
  } catch (const crclab::ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("implicit leading term form") {
  CHECK(Gf2Poly::parse_hex_implicit("0x1021", 16) ==
        Gf2Poly::parse_hex("0x11021"));
  CHECK(Gf2Poly::parse_hex_implicit("0x8005", 16) ==
        Gf2Poly::parse_hex("0x18005"));
  CHECK_THROWS_AS(Gf2Poly::parse_hex_implicit("0x11021", 16),
                  crclab::ParseError);
}

TEST_CASE("rendering round trips in every form") {
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Gf2Poly p = random_poly(rng, 100);
    CHECK(Gf2Poly::parse_hex(p.to_hex()) == p);
    CHECK(Gf2Poly::parse_binary(p.to_binary()) == p);
    CHECK(Gf2Poly::parse_terms(p.to_terms()) == p);
  }
}

TEST_CASE("addition is XOR") {
  const Gf2Poly a = Gf2Poly::parse_hex("0x11021");
  CHECK((a + a).is_zero());
  CHECK((Gf2Poly::parse_terms("x+1") + Gf2Poly::x()) == Gf2Poly::one());
  CHECK((a + Gf2Poly::parse_hex("0x1100B")) ==
        Gf2Poly::from_u64(0x11021 ^ 0x1100B));
}

TEST_CASE("multiplication is carry-less") {
  const Gf2Poly xp1 = Gf2Poly::parse_terms("x+1");
  const Gf2Poly p15 = Gf2Poly::parse_terms("x^15+x+1");
  CHECK((xp1 * p15) == Gf2Poly::parse_hex("0x18005"));
  CHECK((xp1 * xp1).to_terms() == "x^2+1");  // squaring maps x^i to x^2i

  SplitMix64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Gf2Poly a = random_poly(rng, 80);
    const Gf2Poly b = random_poly(rng, 80);
    CHECK((a * Gf2Poly::one()) == a);
    CHECK((a * b) == (b * a));
    CHECK(*(a * b).degree() == *a.degree() + *b.degree());
  }
}

TEST_CASE("long division reproduces the worked examples") {
  // 100100 with three appended zero bits, divided by 1101.
  const auto [q1, r1] = Gf2Poly::divmod(Gf2Poly::parse_binary("100100000"),
                                        Gf2Poly::parse_binary("1101"));
  CHECK(r1 == Gf2Poly::parse_binary("001"));
  CHECK(q1 == Gf2Poly::parse_binary("111101"));

  // 11010110 with four appended zero bits, divided by 10011.
  const auto [q2, r2] = Gf2Poly::divmod(Gf2Poly::parse_binary("110101100000"),
                                        Gf2Poly::parse_binary("10011"));
  CHECK(r2 == Gf2Poly::parse_binary("0110"));

  const Gf2Poly a = Gf2Poly::parse_hex("0x1ACD7");
  const auto [qa, ra] = Gf2Poly::divmod(a, Gf2Poly::one());
  CHECK(qa == a);
  CHECK(ra.is_zero());

  CHECK_THROWS_AS(Gf2Poly::divmod(a, Gf2Poly::zero()), std::domain_error);
}

TEST_CASE("divmod reconstructs the dividend") {
  SplitMix64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Gf2Poly a = random_poly(rng, 64);
    Gf2Poly b = random_poly(rng, 64);
    if (b.is_zero()) b = Gf2Poly::one();
    const auto [q, r] = Gf2Poly::divmod(a, b);
    CHECK((q * b + r) == a);
    if (!r.is_zero()) CHECK(*r.degree() < *b.degree());
  }
}

TEST_CASE("powmod_x") {
  const Gf2Poly m = Gf2Poly::parse_hex("0x14AA7");
  CHECK(powmod_x(1, m) == Gf2Poly::x());
  CHECK(powmod_x(2, Gf2Poly::parse_terms("x^2+1")).is_one());
  CHECK(powmod_x(65535, Gf2Poly::parse_hex("0x136C3")).is_one());

  // Against a plain multiply loop.
  SplitMix64 rng(17);
  for (int i = 0; i < 50; ++i) {
    Gf2Poly mod = random_poly(rng, 20);
    if (!mod.degree() || *mod.degree() < 1) mod = Gf2Poly::parse_terms("x^3+x+1");
    const std::uint64_t e = rng.next_below(200);
    Gf2Poly naive = Gf2Poly::one() % mod;
    for (std::uint64_t k = 0; k < e; ++k) naive = (naive * Gf2Poly::x()) % mod;
    CHECK(powmod_x(e, mod) == naive);
  }
}

TEST_CASE("irreducibility fixtures") {
  CHECK(is_irreducible(Gf2Poly::parse_terms("x^2+x+1")));
  CHECK_FALSE(is_irreducible(Gf2Poly::parse_hex("0x11021")));
  CHECK(is_irreducible(Gf2Poly::parse_hex("0x14AA7")));
  CHECK(is_irreducible(Gf2Poly::x()));
  CHECK(is_irreducible(Gf2Poly::parse_terms("x+1")));
  CHECK_FALSE(is_irreducible(Gf2Poly::parse_terms("x^2+1")));
}

TEST_CASE("even weight means divisible by x+1") {
  const Gf2Poly xp1 = Gf2Poly::parse_terms("x+1");
  SplitMix64 rng(19);
  for (int i = 0; i < 200; ++i) {
    Gf2Poly p = random_poly(rng, 24);
    const bool even = p.weight() % 2 == 0;
    CHECK((p % xp1).is_zero() == even);
    if (even && p.degree() && *p.degree() >= 2) CHECK_FALSE(is_irreducible(p));
  }
}

TEST_CASE("primitivity fixtures") {
  CHECK(is_primitive(Gf2Poly::parse_hex("0x136C3")));
  CHECK_FALSE(is_primitive(Gf2Poly::parse_hex("0x18005")));
  CHECK(is_primitive(Gf2Poly::parse_terms("x^2+x+1")));
  CHECK(is_primitive(Gf2Poly::parse_terms("x^15+x+1")));
  CHECK_THROWS_AS(is_primitive(Gf2Poly::monomial(40) + Gf2Poly::one()),
                  crclab::UnsupportedDegreeError);
}

TEST_CASE("primitive implies irreducible") {
  SplitMix64 rng(23);
  for (int i = 0; i < 300; ++i) {
    Gf2Poly p = random_poly(rng, 16);
    if (!p.degree() || *p.degree() < 1) continue;
    if (is_primitive(p)) CHECK(is_irreducible(p));
  }
}

TEST_CASE("order of x") {
  CHECK(order_of_x(Gf2Poly::parse_terms("x+1")) == 1);
  CHECK(order_of_x(Gf2Poly::parse_terms("x^2+x+1")) == 3);
  CHECK(order_of_x(Gf2Poly::parse_hex("0x18005")) == 32767);
  CHECK(order_of_x(Gf2Poly::parse_hex("0x10001")) == 16);  // x^16+1
  CHECK_THROWS_AS(order_of_x(Gf2Poly::parse_terms("x^3+x")),
                  std::domain_error);
}

TEST_CASE("order matches brute-force stepping") {
  SplitMix64 rng(29);
  int tested = 0;
  while (tested < 60) {
    Gf2Poly p = random_poly(rng, 12);
    if (!p.degree() || *p.degree() < 1 || !p.constant_term()) continue;
    ++tested;
    CHECK(order_of_x(p) == order_by_stepping(p));
  }
}

TEST_CASE("order divides the group size for irreducibles") {
  SplitMix64 rng(31);
  int tested = 0;
  while (tested < 40) {
    Gf2Poly p = random_poly(rng, 16);
    if (!p.degree() || *p.degree() < 2 || !p.constant_term()) continue;
    if (!is_irreducible(p)) continue;
    ++tested;
    const std::uint64_t group = (1ULL << *p.degree()) - 1;
    CHECK(group % order_of_x(p) == 0);
  }
}

TEST_CASE("factorization fixtures") {
  const auto f18005 = factor(Gf2Poly::parse_hex("0x18005"));
  REQUIRE(f18005.size() == 2);
  CHECK(f18005[0].first == Gf2Poly::parse_terms("x+1"));
  CHECK(f18005[0].second == 1);
  CHECK(f18005[1].first == Gf2Poly::parse_terms("x^15+x+1"));
  CHECK(f18005[1].second == 1);

  const auto fsq = factor(Gf2Poly::parse_terms("x^2+1"));
  REQUIRE(fsq.size() == 1);
  CHECK(fsq[0].first == Gf2Poly::parse_terms("x+1"));
  CHECK(fsq[0].second == 2);

  const auto firr = factor(Gf2Poly::parse_hex("0x14AA7"));
  REQUIRE(firr.size() == 1);
  CHECK(firr[0].second == 1);

  CHECK_THROWS_AS(factor(Gf2Poly::monomial(17) + Gf2Poly::one()),
                  crclab::UnsupportedDegreeError);
}

TEST_CASE("factors multiply back and are irreducible") {
  SplitMix64 rng(37);
  for (int i = 0; i < 120; ++i) {
    Gf2Poly p = random_poly(rng, 16);
    if (!p.degree() || *p.degree() < 1) continue;
    Gf2Poly product = Gf2Poly::one();
    for (const auto& [q, mult] : factor(p)) {
      CHECK(is_irreducible(q));
      for (int k = 0; k < mult; ++k) product = product * q;
    }
    CHECK(product == p);
  }
}

TEST_CASE("small-degree enumeration counts") {
  // Degree 4: (2^4 - 2^2)/4 = 3 irreducible, phi(15)/4 = 2 primitive.
  // Degree 8: (2^8 - 2^4)/8 = 30 irreducible, phi(255)/8 = 16 primitive.
  for (const auto& [deg, want_irr, want_prim] :
       {std::tuple{4u, 3, 2}, std::tuple{8u, 30, 16}}) {
    int irr = 0, prim = 0;
    for (std::uint64_t v = (1ULL << deg) | 1; v < (1ULL << (deg + 1)); v += 2) {
      const Gf2Poly f = Gf2Poly::from_u64(v);
      if (is_irreducible(f)) {
        ++irr;
        if (is_primitive(f)) ++prim;
      }
    }
    CHECK(irr == want_irr);
    CHECK(prim == want_prim);
  }
}

TEST_CASE("ordering is by coefficient value") {
  CHECK(Gf2Poly::parse_hex("0x11021") < Gf2Poly::parse_hex("0x18005"));
  CHECK(Gf2Poly::zero() < Gf2Poly::one());
  std::set<Gf2Poly> s{Gf2Poly::one(), Gf2Poly::x(), Gf2Poly::one()};
  CHECK(s.size() == 2);
}

TEST_CASE("zero polynomial has no degree") {
  CHECK_FALSE(Gf2Poly::zero().degree().has_value());
  CHECK(Gf2Poly::one().degree() == 0u);
  CHECK_THROWS_AS(is_irreducible(Gf2Poly::zero()), std::domain_error);
}
