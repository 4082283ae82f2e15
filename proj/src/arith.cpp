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

#include "egypt/arith.hpp"

#include <vector>

#include "egypt/error.hpp"

namespace egypt {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_denominator: return "invalid-denominator";
    case Errc::invalid_parameters: return "invalid-parameters";
    case Errc::missing_element: return "missing-element";
    case Errc::cannot_advance: return "cannot-advance";
    case Errc::incomplete_group: return "incomplete-group";
    case Errc::certificate_invalid: return "certificate-invalid";
    case Errc::construction_failure: return "construction-failure";
    case Errc::format_error: return "format-error";
    case Errc::checksum_error: return "checksum-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

Nat::Nat(mpz_class value) : v_(std::move(value)) {
  if (sgn(v_) < 0) throw Error(Errc::invalid_argument, "Nat cannot be negative");
}

Nat Nat::from_decimal(std::string_view text) {
  if (text.empty()) throw Error(Errc::format_error, "empty decimal string");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(Errc::format_error, "not a decimal natural: '" + std::string(text) + "'");
    }
  }
  return Nat(mpz_class(std::string(text), 10));
}

std::size_t Nat::bit_length() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

std::uint64_t Nat::to_u64() const {
  if (!fits_u64()) throw Error(Errc::invalid_argument, "value exceeds 64 bits: " + to_decimal());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v_.get_mpz_t());
  return out;
}

Nat& Nat::operator-=(const Nat& o) {
  if (v_ < o.v_) throw Error(Errc::invalid_argument, "Nat subtraction underflow");
  v_ -= o.v_;
  return *this;
}

Nat operator/(const Nat& a, const Nat& b) { return divmod(a, b).quotient; }
Nat operator%(const Nat& a, const Nat& b) { return divmod(a, b).remainder; }

DivMod divmod(const Nat& a, const Nat& b) {
  if (b.is_zero()) throw Error(Errc::invalid_argument, "division by zero");
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return {Nat(std::move(q)), Nat(std::move(r))};
}

Nat nat_gcd(const Nat& a, const Nat& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Nat(std::move(g));
}

Nat nat_pow(const Nat& base, std::uint64_t exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.mpz().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Nat(std::move(r));
}

Nat nat_valuation(const Nat& p, const Nat& m) {
  if (p < Nat(2)) throw Error(Errc::invalid_argument, "valuation base must be >= 2");
  if (m.is_zero()) throw Error(Errc::invalid_argument, "valuation of zero is undefined");
  mpz_class rest = m.mpz();
  std::uint64_t k = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.mpz().get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.mpz().get_mpz_t());
    ++k;
  }
  return Nat(k);
}

bool divides(const Nat& a, const Nat& b) {
  if (a.is_zero()) return b.is_zero();
  return mpz_divisible_p(b.mpz().get_mpz_t(), a.mpz().get_mpz_t()) != 0;
}

Rat::Rat(const Nat& numerator, const Nat& denominator) {
  if (denominator.is_zero()) throw Error(Errc::invalid_denominator, "zero denominator");
  v_ = mpq_class(numerator.mpz(), denominator.mpz());
  v_.canonicalize();
}

Rat rat_normalize(const mpz_class& p, const mpz_class& q) {
  if (sgn(q) == 0) throw Error(Errc::invalid_denominator, "zero denominator");
  mpq_class v(p, q);
  v.canonicalize();
  return Rat(std::move(v));
}

Rat Rat::from_string(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (digits.empty()) throw Error(Errc::format_error, "malformed rational: '" + std::string(text) + "'");
    for (char c : digits) {
      if (c < '0' || c > '9') throw Error(Errc::format_error, "malformed rational: '" + std::string(text) + "'");
    }
    return mpz_class(std::string(s), 10);
  };
  if (slash == std::string_view::npos) return rat_normalize(parse_int(text), 1);
  return rat_normalize(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rat::to_string() const {
  return v_.get_num().get_str(10) + "/" + v_.get_den().get_str(10);
}

Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }

namespace {

struct Fraction {
  mpz_class num;
  mpz_class den;
};

// Unreduced product-tree sum: (a/b) + (c/d) = (ad + cb)/(bd).
Fraction tree_sum(std::span<const UnitTerm> terms) {
  if (terms.empty()) return {0, 1};
  if (terms.size() == 1) return {terms[0].multiplicity->mpz(), terms[0].element->mpz()};
  const auto mid = terms.size() / 2;
  Fraction a = tree_sum(terms.first(mid));
  Fraction b = tree_sum(terms.subspan(mid));
  Fraction out;
  out.num = a.num * b.den + b.num * a.den;
  out.den = a.den * b.den;
  return out;
}

void require_positive(std::span<const UnitTerm> terms) {
  for (const auto& t : terms) {
    if (t.element->is_zero()) throw Error(Errc::invalid_denominator, "reciprocal of zero");
  }
}

std::vector<UnitTerm> unit_terms(std::span<const Nat> elements) {
  static const Nat one(1);
  std::vector<UnitTerm> terms;
  terms.reserve(elements.size());
  for (const auto& e : elements) terms.push_back({&e, &one});
  return terms;
}

}  // namespace

Rat sum_unit_terms(std::span<const UnitTerm> terms) {
  require_positive(terms);
  const Fraction s = tree_sum(terms);
  return rat_normalize(s.num, s.den);
}

Rat reciprocal_sum(std::span<const Nat> elements) { return sum_unit_terms(unit_terms(elements)); }

bool unit_terms_equal(std::span<const UnitTerm> terms, const Rat& target) {
  require_positive(terms);
  const Fraction s = tree_sum(terms);
  return s.num * target.denominator() == s.den * target.numerator();
}

bool reciprocal_sum_equals(std::span<const Nat> elements, const Rat& target) {
  return unit_terms_equal(unit_terms(elements), target);
}

}  // namespace egypt
