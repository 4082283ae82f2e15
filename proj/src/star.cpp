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

#include "egypt/star.hpp"

#include <algorithm>
#include <map>

#include "egypt/error.hpp"

namespace egypt {

SuccessorStar successor_and_star(const Nat& x) {
  if (x.is_zero()) throw Error(Errc::invalid_argument, "successor/star are defined on x >= 1");
  Nat succ = x + Nat(1);
  Nat star = x * succ;
  return {std::move(succ), std::move(star)};
}

Nat star_iter(std::uint32_t p, const Nat& x, std::uint64_t max_bits) {
  if (x.is_zero()) throw Error(Errc::invalid_argument, "star is defined on x >= 1");
  // bits(star^p x) <= 2^p * (bits(x) + 1)
  const std::uint64_t bits = std::max<std::uint64_t>(x.bit_length(), 1) + 1;
  if (p >= 63 || (bits << p) >> p != bits || (bits << p) > max_bits) {
    throw Error(Errc::invalid_argument,
                "star^" + std::to_string(p) + " of a " + std::to_string(x.bit_length()) +
                    "-bit value exceeds the size guard of " + std::to_string(max_bits) + " bits");
  }
  Nat v = x;
  for (std::uint32_t i = 0; i < p; ++i) v = v * (v + Nat(1));
  return v;
}

StarWord StarWord::parse(std::string_view text) {
  std::vector<Letter> out;
  static constexpr std::string_view kDiamond = "⋄";
  static constexpr std::string_view kStar = "⋆";
  while (!text.empty()) {
    if (text.front() == 'd') {
      out.push_back(Letter::successor);
      text.remove_prefix(1);
    } else if (text.front() == 's') {
      out.push_back(Letter::star);
      text.remove_prefix(1);
    } else if (text.starts_with(kDiamond)) {
      out.push_back(Letter::successor);
      text.remove_prefix(kDiamond.size());
    } else if (text.starts_with(kStar)) {
      out.push_back(Letter::star);
      text.remove_prefix(kStar.size());
    } else {
      throw Error(Errc::format_error, "unknown word letter in '" + std::string(text) + "'");
    }
  }
  return StarWord(std::move(out));
}

std::string StarWord::to_string() const {
  std::string s;
  for (auto l : letters_) s += static_cast<char>(l);
  return s;
}

Nat apply_word(const StarWord& w, const Nat& x) {
  if (x.is_zero()) throw Error(Errc::invalid_argument, "words act on x >= 1");
  Nat v = x;
  for (auto l : w.letters()) {
    v = l == Letter::successor ? v + Nat(1) : v * (v + Nat(1));
  }
  return v;
}

bool divisibility_chain_check(const Nat& x, std::uint32_t m) {
  if (x.is_zero() || m == 0) throw Error(Errc::invalid_argument, "divisibility chain needs x >= 1, m >= 1");
  Nat cur = x;
  for (std::uint32_t n = 0; n < m; ++n) {
    Nat next = cur * (cur + Nat(1));
    if (!divmod(next, cur).remainder.is_zero()) return false;
    cur = std::move(next);
  }
  return true;
}

std::vector<Nat> coprime_certificate(const Nat& x, std::uint32_t n) {
  if (x.is_zero() || n == 0) throw Error(Errc::invalid_argument, "certificate needs x >= 1, n >= 1");
  std::vector<Nat> entries;
  Nat cur = x;
  for (std::uint32_t j = 0; j < n; ++j) {
    entries.push_back(cur + Nat(1));
    cur = cur * (cur + Nat(1));
  }
  // Verify independently of the recurrence above.
  Nat product = x;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    if (!(entries[a] > Nat(1))) throw Error(Errc::certificate_invalid, "certificate entry is not > 1");
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      if (!nat_gcd(entries[a], entries[b]).is_one()) {
        throw Error(Errc::certificate_invalid, "certificate entries " + std::to_string(a) + " and " +
                                                   std::to_string(b) + " share a factor");
      }
    }
    product *= entries[a];
  }
  if (product != cur) throw Error(Errc::certificate_invalid, "certificate product does not reconstruct star^n(x)");
  return entries;
}

bool ValuationReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ValuationEntry& e) { return e.pass; });
}

ValuationReport valuation_stability_check(const Nat& x, std::uint32_t n, std::uint32_t m,
                                          const FactorEffort& effort) {
  if (!(n < m)) throw Error(Errc::invalid_argument, "valuation stability needs n < m");
  ValuationReport r;
  r.n = n;
  r.m = m;
  const Nat at_n = star_iter(n, x);
  const Nat at_m = star_iter(m, x);
  const Factorization f = factorize(at_n, effort);
  r.complete = f.complete();
  for (const auto& pf : f.factors) {
    ValuationEntry e;
    e.prime = pf.prime;
    e.exponent_at_n = pf.exponent;
    e.exponent_at_m = nat_valuation(pf.prime, at_m);
    e.pass = e.exponent_at_m == Nat(pf.exponent);
    r.entries.push_back(std::move(e));
  }
  return r;
}

Nat ladder_segment_target(const Nat& x, std::uint32_t j) {
  if (j == 0) return x;
  return star_iter(j - 1, x) + Nat(1);
}

Ladder ladder(const Nat& x, std::uint32_t depth, const FactorEffort& effort) {
  if (x.is_zero()) throw Error(Errc::invalid_argument, "ladder seed must be >= 1");
  Ladder l;
  l.seed = x;
  l.segments.push_back(factorize(x, effort));
  Nat cur = x;
  for (std::uint32_t j = 1; j <= depth; ++j) {
    l.segments.push_back(factorize(cur + Nat(1), effort));
    cur = cur * (cur + Nat(1));
  }
  return l;
}

std::string format_ladder(const Ladder& l) {
  std::string s = l.seed.to_decimal() + "^* = ";
  for (std::size_t j = 0; j < l.segments.size(); ++j) {
    if (j) s += ';';
    s += format_factorization(l.segments[j]);
  }
  return s;
}

bool ladder_merge_holds(const Ladder& l, std::uint32_t m, const FactorEffort& effort) {
  if (m + 1 > l.segments.size()) throw Error(Errc::invalid_argument, "ladder is shorter than the requested prefix");
  std::map<Nat, std::uint64_t> merged;
  for (std::uint32_t j = 0; j <= m; ++j) {
    if (!l.segments[j].complete()) return false;
    for (const auto& pf : l.segments[j].factors) {
      if (!merged.emplace(pf.prime, pf.exponent).second) return false;  // prime repeats
    }
  }
  const Factorization whole = factorize(star_iter(m, l.seed), effort);
  if (!whole.complete() || whole.factors.size() != merged.size()) return false;
  for (const auto& pf : whole.factors) {
    auto it = merged.find(pf.prime);
    if (it == merged.end() || it->second != pf.exponent) return false;
  }
  return true;
}

LadderEvidence ladder_evidence(const Ladder& l) {
  std::map<Nat, std::vector<std::uint64_t>> seen;
  for (const auto& seg : l.segments) {
    for (const auto& pf : seg.factors) seen[pf.prime].push_back(pf.exponent);
  }
  LadderEvidence ev;
  for (auto& [p, exps] : seen) {
    ev.primes.push_back(p);
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    for (auto e : exps) ev.prime_powers.emplace_back(p, e);
  }
  return ev;
}

}  // namespace egypt
