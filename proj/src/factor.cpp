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

#include <algorithm>
#include <map>
#include <vector>

#include "egypt/error.hpp"
#include "egypt/star.hpp"

namespace egypt {

namespace {

// Below this bound the first 13 prime bases decide primality exactly.
const mpz_class& deterministic_limit() {
  static const mpz_class limit("3317044064679887385961981", 10);
  return limit;
}

constexpr unsigned long kSmallBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool strong_probable_prime(const mpz_class& n, const mpz_class& nm1, const mpz_class& d, unsigned long s,
                           const mpz_class& base) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

const std::vector<std::uint32_t>& small_primes(std::uint64_t bound) {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t kLimit = 1u << 20;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  if (bound > (1u << 20)) throw Error(Errc::invalid_argument, "trial division bound above 2^20");
  return primes;
}

// Brent's variant of Pollard rho with f(y) = y^2 + c. Returns a nontrivial
// factor or 0 when the budget runs out first.
mpz_class brent_rho(const mpz_class& n, std::uint64_t& budget) {
  for (unsigned long c = 1; budget > 0; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1, diff;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto f = [&](mpz_class& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(m, r - k);
        if (budget < steps) {
          budget = 0;
          return 0;
        }
        budget -= steps;
        for (std::uint64_t i = 0; i < steps; ++i) {
          f(y);
          diff = x - y;
          mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one evaluation at a time.
      do {
        if (budget == 0) return 0;
        --budget;
        f(ys);
        diff = x - ys;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

}  // namespace

PrimalityResult is_probable_prime(const Nat& value, std::uint32_t random_rounds) {
  const mpz_class& n = value.mpz();
  PrimalityResult r;
  if (n < 2) return r;
  for (auto b : kSmallBases) {
    if (n == b) {
      r.prime = true;
      return r;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return r;
  }
  const mpz_class nm1 = n - 1;
  mpz_class d = nm1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  for (auto b : kSmallBases) {
    ++r.rounds;
    if (!strong_probable_prime(n, nm1, d, s, mpz_class(b))) return r;
  }
  if (n < deterministic_limit()) {
    r.prime = true;
    return r;
  }
  r.deterministic = false;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x45677970ul);
  const mpz_class span = n - 3;
  for (std::uint32_t i = 0; i < random_rounds; ++i) {
    ++r.rounds;
    const mpz_class base = rng.get_z_range(span) + 2;  // [2, n-2]
    if (!strong_probable_prime(n, nm1, d, s, base)) return r;
  }
  r.prime = true;
  return r;
}

Nat Factorization::reconstruct() const {
  Nat v = cofactor;
  for (const auto& pf : factors) v *= nat_pow(pf.prime, pf.exponent);
  return v;
}

Factorization factorize(const Nat& m, const FactorEffort& effort) {
  if (m.is_zero()) throw Error(Errc::invalid_argument, "cannot factor 0");
  Factorization out;
  out.value = m;
  std::map<Nat, PrimeFactor> found;
  auto record = [&](const mpz_class& p, std::uint64_t e, bool deterministic) {
    auto [it, inserted] = found.try_emplace(Nat(p), PrimeFactor{Nat(p), 0, deterministic});
    it->second.exponent += e;
    it->second.deterministic = it->second.deterministic && deterministic;
  };

  mpz_class rest = m.mpz();
  for (auto p : small_primes(effort.trial_bound)) {
    if (p >= effort.trial_bound) break;
    if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
    std::uint64_t e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) record(mpz_class(p), e, true);
  }

  std::uint64_t budget = effort.rho_iterations;
  std::vector<mpz_class> work;
  if (rest > 1) work.push_back(rest);
  mpz_class leftover = 1;
  while (!work.empty()) {
    mpz_class n = std::move(work.back());
    work.pop_back();
    const PrimalityResult pr = is_probable_prime(Nat(n), effort.random_rounds);
    if (pr.prime) {
      record(n, 1, pr.deterministic);
      continue;
    }
    const std::uint64_t before = budget;
    mpz_class d = brent_rho(n, budget);
    out.rho_iterations += before - budget;
    if (d == 0) {
      leftover *= n;
      continue;
    }
    work.push_back(d);
    work.push_back(n / d);
  }
  out.cofactor = Nat(leftover);
  for (auto& [p, pf] : found) out.factors.push_back(std::move(pf));
  return out;
}

std::string format_factorization(const Factorization& f) {
  std::string s;
  for (const auto& pf : f.factors) {
    if (!s.empty()) s += "·";
    s += pf.prime.to_decimal();
    if (pf.exponent != 1) s += "^" + std::to_string(pf.exponent);
  }
  if (!f.complete()) {
    if (!s.empty()) s += "·";
    s += f.cofactor.to_decimal() + "?";
  }
  return s;
}

}  // namespace egypt
