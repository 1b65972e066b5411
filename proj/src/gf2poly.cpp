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

#include "crclab/gf2poly.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "crclab/errors.hpp"

namespace crclab {

namespace {

int top_bit(std::uint64_t w) { return 63 - std::countl_zero(w); }

// Single-word long division; used whenever both operands fit in one word so
// the small cases common in search loops stay allocation-free.
std::pair<std::uint64_t, std::uint64_t> divmod_u64(std::uint64_t a,
                                                   std::uint64_t b) {
  const int db = top_bit(b);
  std::uint64_t q = 0;
  while (a != 0) {
    const int da = top_bit(a);
    if (da < db) break;
    const int s = da - db;
    q |= 1ULL << s;
    a ^= b << s;
  }
  return {q, a};
}

}  // namespace

void Gf2Poly::normalize() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Gf2Poly Gf2Poly::from_u64(std::uint64_t bits) {
  Gf2Poly p;
  if (bits != 0) p.words_.push_back(bits);
  return p;
}

Gf2Poly Gf2Poly::monomial(unsigned exponent) {
  Gf2Poly p;
  p.words_.assign(exponent / 64 + 1, 0);
  p.words_.back() = 1ULL << (exponent % 64);
  return p;
}

std::optional<unsigned> Gf2Poly::degree() const {
  if (words_.empty()) return std::nullopt;
  return static_cast<unsigned>((words_.size() - 1) * 64 +
                               top_bit(words_.back()));
}

bool Gf2Poly::coeff(unsigned i) const {
  const std::size_t w = i / 64;
  if (w >= words_.size()) return false;
  return (words_[w] >> (i % 64)) & 1;
}

unsigned Gf2Poly::weight() const {
  unsigned n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::uint64_t Gf2Poly::to_u64() const {
  if (words_.size() > 1)
    throw std::length_error("Gf2Poly::to_u64: degree above 63");
  return words_.empty() ? 0 : words_[0];
}

Gf2Poly Gf2Poly::shifted_left(unsigned bits) const {
  if (is_zero() || bits == 0) {
    Gf2Poly r = *this;
    return r;
  }
  const unsigned words = bits / 64, rem = bits % 64;
  Gf2Poly r;
  r.words_.assign(words_.size() + words + 1, 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    r.words_[i + words] ^= words_[i] << rem;
    if (rem != 0) r.words_[i + words + 1] ^= words_[i] >> (64 - rem);
  }
  r.normalize();
  return r;
}

Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly r;
  r.words_.resize(std::max(a.words_.size(), b.words_.size()), 0);
  for (std::size_t i = 0; i < a.words_.size(); ++i) r.words_[i] ^= a.words_[i];
  for (std::size_t i = 0; i < b.words_.size(); ++i) r.words_[i] ^= b.words_[i];
  r.normalize();
  return r;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.is_zero() || b.is_zero()) return Gf2Poly::zero();
  Gf2Poly r;
  r.words_.assign(a.words_.size() + b.words_.size(), 0);
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const std::uint64_t w = a.words_[i];
    if (w == 0) continue;
    for (int bit = 0; bit < 64; ++bit) {
      if (!((w >> bit) & 1)) continue;
      // r ^= b << (64*i + bit)
      for (std::size_t j = 0; j < b.words_.size(); ++j) {
        r.words_[i + j] ^= b.words_[j] << bit;
        if (bit != 0) r.words_[i + j + 1] ^= b.words_[j] >> (64 - bit);
      }
    }
  }
  r.normalize();
  return r;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& a,
                                            const Gf2Poly& b) {
  if (b.is_zero())
    throw std::domain_error("gf2 division by the zero polynomial");
  if (a.words_.size() <= 1 && b.words_.size() == 1) {
    auto [q, r] = divmod_u64(a.words_.empty() ? 0 : a.words_[0], b.words_[0]);
    return {from_u64(q), from_u64(r)};
  }
  const unsigned db = *b.degree();
  Gf2Poly rem = a;
  Gf2Poly quot;
  while (!rem.is_zero()) {
    const unsigned da = *rem.degree();
    if (da < db) break;
    const unsigned s = da - db;
    if (quot.words_.size() < s / 64 + 1) quot.words_.resize(s / 64 + 1, 0);
    quot.words_[s / 64] ^= 1ULL << (s % 64);
    // rem ^= b << s, in place
    const unsigned words = s / 64, sh = s % 64;
    if (rem.words_.size() < b.words_.size() + words + 1)
      rem.words_.resize(b.words_.size() + words + 1, 0);
    for (std::size_t j = 0; j < b.words_.size(); ++j) {
      rem.words_[j + words] ^= b.words_[j] << sh;
      if (sh != 0) rem.words_[j + words + 1] ^= b.words_[j] >> (64 - sh);
    }
    rem.normalize();
  }
  quot.normalize();
  return {quot, rem};
}

std::strong_ordering Gf2Poly::operator<=>(const Gf2Poly& other) const {
  if (words_.size() != other.words_.size())
    return words_.size() <=> other.words_.size();
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != other.words_[i]) return words_[i] <=> other.words_[i];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Parsing and rendering

Gf2Poly Gf2Poly::parse(std::string_view text, PolyForm form) {
  switch (form) {
    case PolyForm::kHex:
      return parse_hex(text);
    case PolyForm::kBinary:
      return parse_binary(text);
    case PolyForm::kTerms:
      return parse_terms(text);
  }
  throw std::logic_error("unknown poly form");
}

Gf2Poly Gf2Poly::parse_hex(std::string_view text) {
  std::string_view digits = text;
  std::size_t base = 0;
  if (digits.size() >= 2 && digits[0] == '0' &&
      (digits[1] == 'x' || digits[1] == 'X')) {
    digits.remove_prefix(2);
    base = 2;
  }
  if (digits.empty())
    throw ParseError("empty hex polynomial \"" + std::string(text) + "\"");
  Gf2Poly p;
  p.words_.assign((digits.size() * 4 + 63) / 64, 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw ParseError(std::string("invalid hex digit '") + c + "'", base + i);
    // Nibble shifts are multiples of 4, so a digit never straddles words.
    const std::size_t shift = (digits.size() - 1 - i) * 4;
    p.words_[shift / 64] |= static_cast<std::uint64_t>(v) << (shift % 64);
  }
  p.normalize();
  return p;
}

Gf2Poly Gf2Poly::parse_hex_implicit(std::string_view text, unsigned degree) {
  Gf2Poly low = parse_hex(text);
  if (auto d = low.degree(); d && *d >= degree)
    throw ParseError("implicit-form value already has degree " +
                     std::to_string(*d) + ", leading term would overlap");
  return low + monomial(degree);
}

Gf2Poly Gf2Poly::parse_binary(std::string_view text) {
  if (text.empty()) throw ParseError("empty binary polynomial");
  Gf2Poly p;
  p.words_.assign(text.size() / 64 + 1, 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '0' && c != '1')
      throw ParseError(std::string("invalid binary digit '") + c + "'", i);
    if (c == '1') {
      const std::size_t e = text.size() - 1 - i;
      p.words_[e / 64] |= 1ULL << (e % 64);
    }
  }
  p.normalize();
  return p;
}

Gf2Poly Gf2Poly::parse_terms(std::string_view text) {
  Gf2Poly p;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) {
      if (first) throw ParseError("empty term list");
      break;
    }
    if (!first) {
      if (text[i] != '+')
        throw ParseError(std::string("expected '+', found '") + text[i] + "'",
                         i);
      ++i;
      skip_ws();
    }
    first = false;
    unsigned exponent = 0;
    if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      exponent = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || text[i] < '0' || text[i] > '9')
          throw ParseError("missing exponent after '^'", i);
        unsigned long v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + (text[i] - '0');
          if (v > 1'000'000) throw ParseError("exponent out of range", i);
          ++i;
        }
        exponent = static_cast<unsigned>(v);
      }
    } else if (i < text.size() && text[i] == '1') {
      ++i;
      exponent = 0;
    } else if (i < text.size() && text[i] == '0' && p.is_zero() &&
               i + 1 >= text.size()) {
      ++i;
      break;  // the zero polynomial, written "0"
    } else {
      throw ParseError(std::string("expected term, found '") +
                           (i < text.size() ? std::string(1, text[i]) : "end"),
                       i);
    }
    if (p.coeff(exponent))
      throw ParseError("duplicate term x^" + std::to_string(exponent), i);
    p = p + monomial(exponent);
  }
  return p;
}

std::string Gf2Poly::to_hex() const {
  if (is_zero()) return "0x0";
  const unsigned d = *degree();
  std::string out;
  for (int nib = static_cast<int>(d / 4); nib >= 0; --nib) {
    unsigned v = 0;
    for (int b = 3; b >= 0; --b)
      v = (v << 1) | (coeff(static_cast<unsigned>(nib) * 4 + b) ? 1u : 0u);
    out += "0123456789ABCDEF"[v];
  }
  return "0x" + out;
}

std::string Gf2Poly::to_binary() const {
  if (is_zero()) return "0";
  const unsigned d = *degree();
  std::string out(d + 1, '0');
  for (unsigned i = 0; i <= d; ++i)
    if (coeff(d - i)) out[i] = '1';
  return out;
}

std::string Gf2Poly::to_terms() const {
  if (is_zero()) return "0";
  std::string out;
  const unsigned d = *degree();
  for (unsigned i = d + 1; i-- > 0;) {
    if (!coeff(i)) continue;
    if (!out.empty()) out += "+";
    if (i == 0)
      out += "1";
    else if (i == 1)
      out += "x";
    else
      out += "x^" + std::to_string(i);
  }
  return out;
}

std::string Gf2Poly::render(PolyForm form) const {
  switch (form) {
    case PolyForm::kHex:
      return to_hex();
    case PolyForm::kBinary:
      return to_binary();
    case PolyForm::kTerms:
      return to_terms();
  }
  throw std::logic_error("unknown poly form");
}

// ---------------------------------------------------------------------------
// Number-theoretic operations

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) {
  return (a * b) % m;
}

Gf2Poly powmod_x(std::uint64_t e, const Gf2Poly& m) {
  if (!m.degree() || *m.degree() < 1)
    throw std::domain_error("powmod_x: modulus must have degree >= 1");
  Gf2Poly result = Gf2Poly::one() % m;
  Gf2Poly base = Gf2Poly::x() % m;
  while (e != 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// x^(2^k) mod f by k successive squarings.
Gf2Poly x_pow_pow2(unsigned k, const Gf2Poly& f) {
  Gf2Poly r = Gf2Poly::x() % f;
  for (unsigned i = 0; i < k; ++i) r = mulmod(r, r, f);
  return r;
}

}  // namespace

bool is_irreducible(const Gf2Poly& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("is_irreducible: degree must be >= 1");
  const unsigned n = *deg;
  if (n == 1) return true;
  const Gf2Poly x_mod = Gf2Poly::x() % f;
  if (x_pow_pow2(n, f) != x_mod) return false;
  for (std::uint64_t p : prime_factors(n)) {
    const Gf2Poly h = x_pow_pow2(n / static_cast<unsigned>(p), f) + x_mod;
    if (!gcd(f, h).is_one()) return false;
  }
  return true;
}

bool is_primitive(const Gf2Poly& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("is_primitive: degree must be >= 1");
  const unsigned n = *deg;
  if (n > kPrimitivityDegreeLimit)
    throw UnsupportedDegreeError(
        "is_primitive supports degree <= " +
        std::to_string(kPrimitivityDegreeLimit) + ", got " + std::to_string(n));
  if (!is_irreducible(f)) return false;
  if (n == 1) return f == Gf2Poly::from_u64(3);  // x+1; x itself has no order
  const std::uint64_t group = (1ULL << n) - 1;
  if (!powmod_x(group, f).is_one()) return false;
  for (std::uint64_t p : prime_factors(group)) {
    if (powmod_x(group / p, f).is_one()) return false;
  }
  return true;
}

std::vector<std::pair<Gf2Poly, int>> factor(const Gf2Poly& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("factor: degree must be >= 1");
  if (*deg > kFactorDegreeLimit)
    throw UnsupportedDegreeError("factor supports degree <= " +
                                 std::to_string(kFactorDegreeLimit) +
                                 ", got " + std::to_string(*deg));
  std::vector<std::pair<Gf2Poly, int>> out;
  Gf2Poly rest = f;
  // Powers of x first, then odd candidates in increasing degree. Smaller
  // factors are removed before a composite of them can divide, so every
  // divisor found here is irreducible.
  int x_mult = 0;
  while (!rest.constant_term() && !rest.is_one()) {
    rest = rest / Gf2Poly::x();
    ++x_mult;
  }
  if (x_mult > 0) out.emplace_back(Gf2Poly::x(), x_mult);
  for (std::uint64_t c = 3; !rest.is_one(); c += 2) {
    const unsigned dc = static_cast<unsigned>(63 - std::countl_zero(c));
    if (dc > *rest.degree() / 2) break;
    const Gf2Poly cand = Gf2Poly::from_u64(c);
    int mult = 0;
    while (true) {
      auto [q, r] = Gf2Poly::divmod(rest, cand);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    if (mult > 0) out.emplace_back(cand, mult);
  }
  if (!rest.is_one()) out.emplace_back(rest, 1);
  return out;
}

std::uint64_t order_of_x(const Gf2Poly& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("order_of_x: degree must be >= 1");
  if (!f.constant_term())
    throw std::domain_error("order_of_x: constant term is 0, x not invertible");
  const unsigned n = *deg;
  // Irreducible: the order divides 2^n-1; strip primes that keep x^(o/p)=1.
  if (n <= kPrimitivityDegreeLimit && is_irreducible(f)) {
    std::uint64_t o = (1ULL << n) - 1;
    for (std::uint64_t p : prime_factors(o)) {
      while (o % p == 0 && powmod_x(o / p, f).is_one()) o /= p;
    }
    return o;
  }
  if (n > kFactorDegreeLimit)
    throw UnsupportedDegreeError(
        "order_of_x for reducible inputs supports degree <= " +
        std::to_string(kFactorDegreeLimit));
  // Reducible: lcm over the factorization. For a factor q^e the order is
  // ord(q) * 2^ceil(log2 e), the smallest power of two covering e.
  std::uint64_t result = 1;
  for (const auto& [q, e] : factor(f)) {
    std::uint64_t oq = order_of_x(q);
    std::uint64_t lift = 1;
    while (lift < static_cast<std::uint64_t>(e)) lift *= 2;
    result = std::lcm(result, oq * lift);
  }
  return result;
}

std::string to_string(PolyKind kind) {
  switch (kind) {
    case PolyKind::kPrimitive:
      return "primitive";
    case PolyKind::kIrreducible:
      return "irreducible";
    case PolyKind::kReducible:
      return "reducible";
  }
  return "?";
}

}  // namespace crclab
