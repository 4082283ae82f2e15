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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egypt/arith.hpp"

// The successor map x -> x+1 and the star map x -> x(x+1), their iterates,
// divisibility/coprimality certificates for the star chain, and the ladder of
// prime-power factorizations of x, x+1, star(x)+1, star^2(x)+1, ...

namespace egypt {

struct SuccessorStar {
  Nat successor;
  Nat star;
};

/// (x+1, x(x+1)); x must be >= 1.
SuccessorStar successor_and_star(const Nat& x);

/// Upper bound on the estimated bit length star_iter will produce.
inline constexpr std::uint64_t kDefaultMaxStarBits = std::uint64_t{1} << 26;

/// p-fold star. Rejects requests whose result would exceed `max_bits`.
Nat star_iter(std::uint32_t p, const Nat& x, std::uint64_t max_bits = kDefaultMaxStarBits);

enum class Letter : char { successor = 'd', star = 's' };

/// Word over {successor, star}. Letters apply left to right: the first
/// letter acts on x first.
class StarWord {
 public:
  StarWord() = default;
  explicit StarWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  /// Accepts 'd'/'s' (also the symbols "⋄"/"⋆").
  static StarWord parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  std::string to_string() const;

 private:
  std::vector<Letter> letters_;
};

Nat apply_word(const StarWord& w, const Nat& x);

/// star^n(x) | star^(n+1)(x) for every n < m, by exact division.
bool divisibility_chain_check(const Nat& x, std::uint32_t m);

/// [star^j(x) + 1 : j < n], verified pairwise coprime, each > 1, and with
/// x * product == star^n(x). Throws certificate_invalid otherwise.
std::vector<Nat> coprime_certificate(const Nat& x, std::uint32_t n);

// ---------------------------------------------------------------------------
// Factorization

struct FactorEffort {
  std::uint64_t trial_bound = 1u << 16;       // trial division by primes below this
  std::uint64_t rho_iterations = 1u << 22;    // total polynomial evaluations
  std::uint32_t random_rounds = 32;           // strong-probable-prime rounds above the deterministic range
};

struct PrimalityResult {
  bool prime = false;
  bool deterministic = true;  // false when random bases were needed
  std::uint32_t rounds = 0;
};

/// Strong-pseudoprime test: deterministic with the first 13 prime bases below
/// 3317044064679887385961981, otherwise `random_rounds` bases drawn from a
/// fixed-seed generator.
PrimalityResult is_probable_prime(const Nat& n, std::uint32_t random_rounds = 32);

struct PrimeFactor {
  Nat prime;
  std::uint64_t exponent = 0;
  bool deterministic = true;

  friend bool operator==(const PrimeFactor& a, const PrimeFactor& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
  }
};

struct Factorization {
  Nat value;
  std::vector<PrimeFactor> factors;  // ascending primes
  Nat cofactor{1};                   // unfactored composite part, 1 when complete
  std::uint64_t rho_iterations = 0;

  bool complete() const { return cofactor.is_one(); }
  /// product(p^e) * cofactor
  Nat reconstruct() const;
};

Factorization factorize(const Nat& m, const FactorEffort& effort = {});

/// "13·139", "2^2", "" for 1; partial results end in "·C?".
std::string format_factorization(const Factorization& f);

// ---------------------------------------------------------------------------
// Valuation stability

struct ValuationEntry {
  Nat prime;
  std::uint64_t exponent_at_n = 0;
  Nat exponent_at_m;
  bool pass = false;
};

struct ValuationReport {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  bool complete = false;  // star^n(x) fully factored
  std::vector<ValuationEntry> entries;

  bool pass() const;
};

/// For each certified p^k || star^n(x), checks p^k || star^m(x).
ValuationReport valuation_stability_check(const Nat& x, std::uint32_t n, std::uint32_t m,
                                          const FactorEffort& effort = {});

// ---------------------------------------------------------------------------
// Ladders

struct Ladder {
  Nat seed;
  std::vector<Factorization> segments;  // [0] factors x, [j] factors star^(j-1)(x) + 1
};

Ladder ladder(const Nat& x, std::uint32_t depth, const FactorEffort& effort = {});

/// `x^* = s0;s1;...`
std::string format_ladder(const Ladder& l);

/// Target integer of segment j.
Nat ladder_segment_target(const Nat& x, std::uint32_t j);

/// Merged prime powers of segments 0..m equal factorize(star^m(x)) and no
/// prime occurs in two segments.
bool ladder_merge_holds(const Ladder& l, std::uint32_t m, const FactorEffort& effort = {});

/// Finite evidence for the prime set P[x] and prime-power set Pp[x].
struct LadderEvidence {
  std::vector<Nat> primes;
  std::vector<std::pair<Nat, std::uint64_t>> prime_powers;  // (p, e) with p^e || some segment
};

LadderEvidence ladder_evidence(const Ladder& l);

}  // namespace egypt
