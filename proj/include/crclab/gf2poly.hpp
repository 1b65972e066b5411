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

// Exact arithmetic on polynomials over GF(2).
//
// Coefficients are stored as a bit vector indexed by exponent (bit i is the
// coefficient of x^i). Addition is XOR, multiplication is carry-less. The
// zero polynomial has no degree; degree() reports that as an empty optional
// rather than an integer sentinel.
//
// Text formats:
//   hex     "0x11021"          full coefficient pattern, leading term explicit
//   binary  "10001000000100001" MSB-first coefficient string
//   terms   "x^16+x^12+x^5+1"
// A hex form with the leading coefficient left implicit is accepted as an
// explicit alternate parse (the caller must supply the degree).

#ifndef CRCLAB_GF2POLY_HPP_
#define CRCLAB_GF2POLY_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crclab {

enum class PolyForm { kHex, kBinary, kTerms };

class Gf2Poly {
 public:
  Gf2Poly() = default;  // zero

  static Gf2Poly zero() { return Gf2Poly(); }
  static Gf2Poly one() { return from_u64(1); }
  static Gf2Poly x() { return from_u64(2); }
  static Gf2Poly monomial(unsigned exponent);
  static Gf2Poly from_u64(std::uint64_t coefficient_bits);

  static Gf2Poly parse(std::string_view text, PolyForm form);
  static Gf2Poly parse_hex(std::string_view text);
  static Gf2Poly parse_binary(std::string_view text);
  static Gf2Poly parse_terms(std::string_view text);
  // Alternate convention where the top coefficient is not written:
  // parse_hex_implicit("0x1021", 16) == parse_hex("0x11021").
  static Gf2Poly parse_hex_implicit(std::string_view text, unsigned degree);

  std::string to_hex() const;
  std::string to_binary() const;
  std::string to_terms() const;
  std::string render(PolyForm form) const;

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return words_.size() == 1 && words_[0] == 1; }
  std::optional<unsigned> degree() const;
  bool coeff(unsigned i) const;
  unsigned weight() const;  // number of nonzero terms
  bool constant_term() const { return coeff(0); }

  // Value as a plain bit pattern; requires degree <= 63.
  std::uint64_t to_u64() const;
  bool fits_u64() const { return words_.size() <= 1; }

  Gf2Poly shifted_left(unsigned bits) const;  // multiply by x^bits

  friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b);
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  // Quotient and remainder, deg(remainder) < deg(b). b must be nonzero.
  static std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a,
                                            const Gf2Poly& b);
  Gf2Poly operator%(const Gf2Poly& b) const { return divmod(*this, b).second; }
  Gf2Poly operator/(const Gf2Poly& b) const { return divmod(*this, b).first; }

  bool operator==(const Gf2Poly&) const = default;
  // Orders by integer value of the coefficient pattern.
  std::strong_ordering operator<=>(const Gf2Poly& other) const;

 private:
  void normalize();

  // Least significant word first; normalized so the top word is nonzero.
  std::vector<std::uint64_t> words_;
};

Gf2Poly gcd(Gf2Poly a, Gf2Poly b);

// x^e reduced modulo m (square and multiply). deg(m) >= 1.
Gf2Poly powmod_x(std::uint64_t e, const Gf2Poly& m);

// a*b mod m.
Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m);

// Rabin's test: f is irreducible iff x^(2^n) == x (mod f) and, for every
// maximal proper divisor n/p of n, gcd(x^(2^(n/p)) - x, f) = 1. deg(f) >= 1.
bool is_irreducible(const Gf2Poly& f);

// Irreducible and x generates the full multiplicative group, i.e. the order
// of x modulo f is 2^deg(f)-1. Needs the prime factors of 2^deg-1, found by
// trial division; degrees up to 32 are supported.
bool is_primitive(const Gf2Poly& f);

// Smallest d >= 1 with x^d == 1 (mod f). Requires constant term 1 (otherwise
// x is a zero divisor; throws std::domain_error). Computed from the
// factorization of f for reducible inputs, so reducible support is bounded
// by factor()'s degree limit.
std::uint64_t order_of_x(const Gf2Poly& f);

// Full factorization into irreducible factors with multiplicity, by trial
// division over all candidate divisors of degree <= deg(f)/2. Supported for
// deg(f) <= 16; larger degrees throw UnsupportedDegreeError.
std::vector<std::pair<Gf2Poly, int>> factor(const Gf2Poly& f);

inline constexpr unsigned kFactorDegreeLimit = 16;
inline constexpr unsigned kPrimitivityDegreeLimit = 32;

enum class PolyKind { kPrimitive, kIrreducible, kReducible };

std::string to_string(PolyKind kind);

// Classification result. `factors` is populated only when factorization is
// supported for the degree; `order` only when the constant term is 1 and the
// order is computable within the same bounds.
struct PolyClass {
  PolyKind kind = PolyKind::kReducible;
  std::optional<std::uint64_t> order;
  std::vector<std::pair<Gf2Poly, int>> factors;
  bool factors_available = false;
};

// Prime factors of n (single exponent each), trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace crclab

#endif  // CRCLAB_GF2POLY_HPP_
