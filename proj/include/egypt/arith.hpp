/* Copyright 2026 The egypt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace egypt {

/// Arbitrary-precision nonnegative integer.
///
/// Thin value wrapper over a GMP integer that keeps the nonnegativity
/// invariant: subtraction below zero throws instead of wrapping.
class Nat {
 public:
  Nat() = default;
  Nat(std::uint64_t value) : v_(static_cast<unsigned long>(value)) {}  // NOLINT
  explicit Nat(mpz_class value);

  /// Parses a plain decimal string (digits only, no sign or exponent).
  static Nat from_decimal(std::string_view text);
  std::string to_decimal() const { return v_.get_str(10); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  std::size_t bit_length() const;
  /// Value as uint64; throws if it does not fit.
  std::uint64_t to_u64() const;
  bool fits_u64() const { return mpz_sizeinbase(v_.get_mpz_t(), 2) <= 64; }

  Nat& operator+=(const Nat& o) { v_ += o.v_; return *this; }
  Nat& operator-=(const Nat& o);
  Nat& operator*=(const Nat& o) { v_ *= o.v_; return *this; }
  Nat& operator++() { ++v_; return *this; }

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
  /// Floor division; throws on a zero divisor.
  friend Nat operator/(const Nat& a, const Nat& b);
  friend Nat operator%(const Nat& a, const Nat& b);

  friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpz_class& mpz() const { return v_; }

 private:
  mpz_class v_;
};

struct DivMod {
  Nat quotient;
  Nat remainder;
};

DivMod divmod(const Nat& a, const Nat& b);
Nat nat_gcd(const Nat& a, const Nat& b);
Nat nat_pow(const Nat& base, std::uint64_t exponent);
/// Largest k with p^k | m. Requires p >= 2 and m >= 1.
Nat nat_valuation(const Nat& p, const Nat& m);
bool divides(const Nat& a, const Nat& b);

/// Exact rational, always in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;  // 0/1
  Rat(const Nat& numerator, const Nat& denominator);
  static Rat unit(const Nat& denominator) { return Rat(Nat(1), denominator); }
  /// Parses "p/q" or "p".
  static Rat from_string(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  std::string to_string() const;  // always "p/q"

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator*(const Rat& a, const Rat& b);

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  friend Rat rat_normalize(const mpz_class& p, const mpz_class& q);
  explicit Rat(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

Rat rat_normalize(const mpz_class& p, const mpz_class& q);
inline Rat rat_add(const Rat& a, const Rat& b) { return a + b; }

/// Exact sum of multiplicity/element over the given terms, evaluated as a
/// balanced tree so intermediate denominators stay small.
struct UnitTerm {
  const Nat* element;
  const Nat* multiplicity;
};
Rat sum_unit_terms(std::span<const UnitTerm> terms);
/// Sum of reciprocals of the given elements.
Rat reciprocal_sum(std::span<const Nat> elements);

/// Exact comparison of a reciprocal sum against `target` without reducing
/// the sum: numerator * target_den == denominator * target_num. Avoids the
/// final gcd, which dominates for sets with millions of bits.
bool unit_terms_equal(std::span<const UnitTerm> terms, const Rat& target);
bool reciprocal_sum_equals(std::span<const Nat> elements, const Rat& target);

}  // namespace egypt
