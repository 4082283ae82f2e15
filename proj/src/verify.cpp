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
#include <set>
#include <sstream>

#include "egypt/artifact.hpp"
#include "egypt/error.hpp"
#include "json.hpp"

namespace egypt {

using nlohmann::json;

namespace {

std::vector<json> parse_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::format_error, "artifact line is not a JSON object");
    out.push_back(std::move(j));
  }
  if (out.empty()) throw Error(Errc::format_error, "artifact is empty");
  return out;
}

std::vector<Nat> nats(const json& a) {
  std::vector<Nat> out;
  out.reserve(a.size());
  for (const auto& e : a) out.push_back(Nat::from_decimal(e.get<std::string>()));
  return out;
}

Nat nat(const json& j) { return Nat::from_decimal(j.get<std::string>()); }

Parameters params_of(const json& h) {
  const json& p = h.at("params");
  return make_parameters(nat(p.at("k")), nat(p.at("n")), nat(p.at("d")));
}

bool strictly_ascending(const std::vector<Nat>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](const Nat& a, const Nat& b) { return !(a < b); }) == v.end();
}

class Collector {
 public:
  explicit Collector(AuditReport& r) : r_(r) {}
  // Aggregates many sub-checks into one item; the first failure is kept.
  void check(const std::string& name, bool ok, const std::string& why) {
    auto& slot = state_[name];
    if (!slot.touched) {
      slot.touched = true;
      order_.push_back(name);
    }
    if (!ok && slot.pass) {
      slot.pass = false;
      slot.detail = why;
    }
  }
  void note(const std::string& name, const std::string& detail) { state_[name].detail_ok = detail; }
  void flush() {
    for (const auto& n : order_) {
      const auto& s = state_[n];
      r_.items.push_back(AuditItem{n, s.pass, s.pass ? s.detail_ok : s.detail});
    }
  }

 private:
  struct Slot {
    bool touched = false;
    bool pass = true;
    std::string detail;
    std::string detail_ok;
  };
  AuditReport& r_;
  std::map<std::string, Slot> state_;
  std::vector<std::string> order_;
};

void verify_thm1(const std::vector<json>& lines, AuditReport& report) {
  const Parameters params = params_of(lines[0]);
  const Nat kd = params.kd();
  const Rat unit = Rat::unit(kd);
  Collector c(report);

  std::vector<Block> blocks;
  std::set<Nat> seen;
  std::size_t group_records = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const json& r = lines[i];
    const std::string kind = r.at("record").get<std::string>();
    if (kind == "block") {
      Block b;
      b.index = r.at("index").get<std::uint64_t>();
      b.elements = nats(r.at("elements"));
      const std::string at = "block " + std::to_string(b.index);
      c.check("block order", b.index == blocks.size(), at + " out of order");
      c.check("simple", !b.elements.empty() && strictly_ascending(b.elements), at + " is not strictly ascending");
      if (b.elements.empty()) continue;
      c.check("lower bound", !(b.elements.front() < kd), at + " has an element below kd");
      c.check("sigma", reciprocal_sum_equals(b.elements, unit), at + " does not sum to 1/kd");
      c.check("sigma", Rat::from_string(r.at("sigma").get<std::string>()) == unit, at + " stores a wrong sum");
      bool disjoint = true;
      for (const auto& e : b.elements) disjoint = seen.insert(e).second && disjoint;
      c.check("disjoint", disjoint, at + " repeats an element of an earlier block");
      c.check("max", nat(r.at("max")) == b.max_element(), at + " stores a wrong max");
      Nat f = blocks.empty() ? kd - Nat(1) : blocks.back().frontier_after;
      while (seen.count(f + Nat(1)) != 0) ++f;
      b.frontier_after = f;
      c.check("frontier", nat(r.at("frontier")) == f, at + " stores frontier " + r.at("frontier").get<std::string>() +
                                                          ", recomputed " + f.to_decimal());
      if (!blocks.empty()) {
        c.check("frontier increases", blocks.back().frontier_after < f, at + " does not extend the frontier");
      }
      if (b.index == 0) c.check("initial block", b.elements == std::vector<Nat>{kd}, "block 0 is not {kd}");
      blocks.push_back(std::move(b));
    } else if (kind == "group") {
      const auto g = r.at("index").get<std::uint64_t>();
      const std::string at = "group " + std::to_string(g);
      const auto ids = r.at("blocks").get<std::vector<std::uint64_t>>();
      const Nat kn = params.kn();
      bool shape = Nat(ids.size()) == kn && !ids.empty() && g == group_records + 1;
      for (std::size_t j = 0; shape && j < ids.size(); ++j) {
        shape = Nat(ids[j]) == Nat(group_records) * kn + Nat(j) && ids[j] < blocks.size();
      }
      c.check("groups", shape, at + " does not cover the next kn blocks");
      ++group_records;
      if (!shape) continue;
      std::vector<Nat> merged;
      for (auto id : ids) merged.insert(merged.end(), blocks[id].elements.begin(), blocks[id].elements.end());
      std::sort(merged.begin(), merged.end());
      const auto elements = nats(r.at("elements"));
      c.check("groups", elements == merged, at + " is not the union of its blocks");
      c.check("groups", reciprocal_sum_equals(elements, params.target()), at + " does not sum to n/d");
      c.check("groups", Rat::from_string(r.at("sigma").get<std::string>()) == params.target(),
              at + " stores a wrong sum");
    } else {
      throw Error(Errc::format_error, "unknown thm1 record '" + kind + "'");
    }
  }
  c.check("initial block", !blocks.empty(), "no blocks");
  c.note("sigma", std::to_string(blocks.size()) + " blocks sum to 1/" + kd.to_decimal());
  if (!blocks.empty()) c.note("frontier", "frontier " + blocks.back().frontier_after.to_decimal());
  if (group_records) c.note("groups", std::to_string(group_records) + " groups sum to n/d");
  c.flush();
}

void verify_thm2(const std::vector<json>& lines, AuditReport& report) {
  const Parameters params = params_of(lines[0]);
  const Nat kd = params.kd();
  const Nat start = Nat(2) * kd;
  Collector c(report);

  std::optional<StageFamily> prev;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const json& r = lines[i];
    if (r.at("record").get<std::string>() != "stage") throw Error(Errc::format_error, "unknown thm2 record");
    StageFamily f;
    f.stage = r.at("stage").get<std::uint32_t>();
    f.params = params;
    for (const auto& s : r.at("sets")) f.sets.push_back(nats(s));
    const std::string at = "stage " + std::to_string(f.stage);
    c.check("stage order", f.stage == i && f.sets.size() == f.stage + 1, at + " is out of order or has the wrong size");

    std::vector<Nat> s0;
    for (std::uint32_t j = 1; j <= f.stage; ++j) s0.push_back(nat_pow(Nat(2), j) * kd);
    c.check("S_0", !f.sets.empty() && f.sets[0] == s0, at + " has the wrong S_0");

    const Rat target = stage_sigma_target(f.stage, params);
    const auto stored = r.at("sigma");
    std::set<Nat> seen;
    bool disjoint = true;
    for (std::size_t u = 0; u < f.sets.size(); ++u) {
      const auto& s = f.sets[u];
      const std::string set_at = at + " S_" + std::to_string(u);
      c.check("simple", strictly_ascending(s), set_at + " is not strictly ascending");
      c.check("lower bound", s.empty() || !(s.front() < start), set_at + " has an element below 2kd");
      c.check("sigma", !s.empty() && reciprocal_sum_equals(s, target), set_at + " does not sum to the stage target");
      c.check("sigma", u < stored.size() && Rat::from_string(stored[u].get<std::string>()) == target,
              set_at + " stores a wrong sum");
      for (const auto& e : s) disjoint = seen.insert(e).second && disjoint;
    }
    c.check("disjoint", disjoint, at + " has overlapping sets");

    Nat end = start - Nat(1);
    while (seen.count(end + Nat(1)) != 0) ++end;
    const auto cov = r.at("coverage");
    c.check("coverage", nat(cov.at(0)) == start && nat(cov.at(1)) == end,
            at + " stores coverage end " + cov.at(1).get<std::string>() + ", recomputed " + end.to_decimal());
    c.check("coverage", !(end < start), at + " does not cover 2kd");

    std::vector<std::uint32_t> misses;
    for (std::uint32_t u = 1; u < f.sets.size(); ++u) {
      if (!std::binary_search(f.sets[u].begin(), f.sets[u].end(), start + Nat(u))) misses.push_back(u);
    }
    c.check("anchor report", r.at("anchor_misses").get<std::vector<std::uint32_t>>() == misses,
            at + " misreports anchor misses");

    const json& sc = r.at("stability_cutoff");
    if (prev) {
      const auto rep = prefix_stability_report(*prev, f, Nat(0));
      c.check("stability", !sc.is_null() && nat(sc) == rep.family_cutoff,
              at + " stores a stability cutoff that does not match the previous stage");
      c.note("stability", at + " agrees with stage " + std::to_string(prev->stage) + " up to " +
                               rep.family_cutoff.to_decimal());
    } else {
      c.check("stability", sc.is_null() && f.stage == 1, at + " claims a cutoff without a predecessor");
    }
    c.note("coverage", "[" + start.to_decimal() + ", " + end.to_decimal() + "] at " + at);
    prev = std::move(f);
  }
  c.check("stage order", prev.has_value(), "no stages");
  c.flush();
}

void verify_star(const std::vector<json>& lines, AuditReport& report) {
  const json& h = lines[0];
  const Nat x = nat(h.at("x"));
  const auto depth = h.at("depth").get<std::uint32_t>();
  if (x.is_zero()) throw Error(Errc::format_error, "star artifact has x = 0");
  if (h.value("word_order", "") != "left-to-right") throw Error(Errc::format_error, "unsupported word order");
  Collector c(report);

  Ladder l;
  l.seed = x;
  std::size_t certificates = 0;
  std::size_t chains = 0;
  bool have_ladder = false;
  json evidence;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const json& r = lines[i];
    const std::string kind = r.at("record").get<std::string>();
    if (kind == "ladder") {
      have_ladder = true;
      std::set<Nat> primes;
      bool unique = true;
      const auto& segs = r.at("segments");
      c.check("ladder shape", segs.size() == std::size_t{depth} + 1, "ladder has the wrong number of segments");
      for (std::size_t j = 0; j < segs.size(); ++j) {
        const json& s = segs[j];
        const std::string at = "segment " + std::to_string(j);
        Factorization f;
        f.value = nat(s.at("target"));
        f.cofactor = nat(s.at("cofactor"));
        c.check("targets", f.value == ladder_segment_target(x, static_cast<std::uint32_t>(j)),
                at + " has the wrong target");
        Nat last(0);
        for (const auto& jf : s.at("factors")) {
          PrimeFactor pf{nat(jf.at("p")), jf.at("e").get<std::uint64_t>(), jf.at("deterministic").get<bool>()};
          const PrimalityResult pr = is_probable_prime(pf.prime);
          c.check("primality", pr.prime, at + " lists composite " + pf.prime.to_decimal());
          c.check("primality", pr.deterministic || !pf.deterministic,
                  at + " claims a deterministic proof for " + pf.prime.to_decimal());
          c.check("targets", last < pf.prime && pf.exponent > 0, at + " factors are not ascending");
          last = pf.prime;
          unique = primes.insert(pf.prime).second && unique;
          f.factors.push_back(std::move(pf));
        }
        c.check("products", f.reconstruct() == f.value, at + " product does not reconstruct its target");
        c.check("products", s.at("complete").get<bool>() == f.complete(), at + " misreports completeness");
        l.segments.push_back(std::move(f));
      }
      c.check("disjoint primes", unique, "a prime occurs in two segments");
      c.check("rendering", r.at("text").get<std::string>() == format_ladder(l), "ladder text does not match segments");
      c.note("rendering", format_ladder(l));
    } else if (kind == "certificate") {
      const auto n = r.at("n").get<std::uint32_t>();
      const auto entries = nats(r.at("entries"));
      const std::string at = "certificate " + std::to_string(n);
      bool ok = n == certificates + 1 && entries.size() == n;
      Nat product = x;
      for (std::size_t a = 0; ok && a < entries.size(); ++a) {
        ok = Nat(1) < entries[a];
        for (std::size_t b = a + 1; ok && b < entries.size(); ++b) ok = nat_gcd(entries[a], entries[b]).is_one();
        product *= entries[a];
      }
      c.check("certificates", ok, at + " is not a pairwise-coprime list of the right length");
      c.check("certificates", ok && product == star_iter(n, x), at + " product does not reconstruct star^n(x)");
      ++certificates;
    } else if (kind == "divisibility") {
      const auto m = r.at("m").get<std::uint32_t>();
      const bool claimed = r.at("pass").get<bool>();
      c.check("divisibility", m == chains + 1 && claimed && divisibility_chain_check(x, m),
              "divisibility chain " + std::to_string(m) + " fails");
      ++chains;
    } else if (kind == "evidence") {
      evidence = r;
    } else {
      throw Error(Errc::format_error, "unknown star record '" + kind + "'");
    }
  }
  c.check("ladder shape", have_ladder, "no ladder record");
  c.check("certificates", certificates == depth, "expected one certificate per depth");
  c.check("divisibility", chains == depth, "expected one divisibility record per depth");
  if (have_ladder) {
    const LadderEvidence ev = ladder_evidence(l);
    json pp = json::array();
    for (const auto& [p, e] : ev.prime_powers) pp.push_back(json::array({p.to_decimal(), e}));
    json primes = json::array();
    for (const auto& p : ev.primes) primes.push_back(p.to_decimal());
    c.check("evidence", !evidence.is_null() && evidence.at("P") == primes && evidence.at("Pp") == pp,
            "prime evidence does not match the ladder");
  }
  c.flush();
}

}  // namespace

bool AuditReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.pass; });
}

std::string AuditReport::to_string() const {
  std::string s;
  for (const auto& i : items) {
    s += i.pass ? "PASS " : "FAIL ";
    s += i.name;
    if (!i.detail.empty()) s += ": " + i.detail;
    s += "\n";
  }
  return s;
}

AuditReport verify_artifact(const std::string& text) {
  const auto lines = parse_lines(text);
  const json& h = lines[0];
  if (h.value("format", "") != "egypt-artifact") throw Error(Errc::format_error, "not an egypt artifact");
  if (!h.contains("version") || !h["version"].is_number_integer() || h["version"].get<int>() != kArtifactVersion) {
    throw Error(Errc::format_error, "unsupported artifact version");
  }
  AuditReport report;
  report.kind = h.value("kind", "");
  try {
    if (report.kind == "thm1") {
      verify_thm1(lines, report);
    } else if (report.kind == "thm2") {
      verify_thm2(lines, report);
    } else if (report.kind == "star") {
      verify_star(lines, report);
    } else {
      throw Error(Errc::format_error, "unknown artifact kind '" + report.kind + "'");
    }
  } catch (const json::exception& e) {
    throw Error(Errc::format_error, std::string("malformed artifact: ") + e.what());
  }
  return report;
}

}  // namespace egypt
