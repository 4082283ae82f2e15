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

#include "egypt/artifact.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "egypt/error.hpp"
#include "json.hpp"

namespace egypt {

using nlohmann::json;

namespace {

json decimal_list(const std::vector<Nat>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(e.to_decimal());
  return a;
}

json params_json(const Parameters& p) {
  return json{{"k", p.k.to_decimal()}, {"n", p.n.to_decimal()}, {"d", p.d.to_decimal()}};
}

json header(const std::string& kind) {
  return json{{"format", "egypt-artifact"}, {"version", kArtifactVersion}, {"kind", kind}};
}

// Exact sum, reported as the target when the cheap equality holds so large
// sets never need a full gcd.
std::string sigma_string(const std::vector<Nat>& elements, const Rat& target) {
  if (reciprocal_sum_equals(elements, target)) return target.to_string();
  return reciprocal_sum(elements).to_string();
}

}  // namespace

std::string thm1_artifact(const Theorem1State& state, bool with_groups) {
  std::string out;
  json h = header("thm1");
  h["params"] = params_json(state.params);
  out += h.dump() + "\n";
  const Rat block_target = Rat::unit(state.params.kd());
  for (const auto& b : state.completed) {
    json r{{"record", "block"},
           {"index", b.index},
           {"elements", decimal_list(b.elements)},
           {"sigma", sigma_string(b.elements, block_target)},
           {"steps_used", b.steps_used},
           {"frontier", b.frontier_after.to_decimal()},
           {"max", b.max_element().to_decimal()}};
    out += r.dump() + "\n";
  }
  if (with_groups) {
    const Nat kn = state.params.kn();
    const std::size_t usable = state.completed.size() - (Nat(state.completed.size()) % kn).to_u64();
    const auto groups = group_blocks(std::span<const Block>(state.completed.data(), usable), state.params);
    for (const auto& g : groups) {
      json blocks = json::array();
      for (auto i = g.first_block; i <= g.last_block; ++i) blocks.push_back(i);
      json r{{"record", "group"},
             {"index", g.index},
             {"blocks", blocks},
             {"elements", decimal_list(g.elements)},
             {"sigma", g.sigma.to_string()}};
      out += r.dump() + "\n";
    }
  }
  return out;
}

std::string thm2_artifact(const Parameters& params, const std::vector<StageRecord>& stages) {
  std::string out;
  json h = header("thm2");
  h["params"] = params_json(params);
  out += h.dump() + "\n";
  for (const auto& s : stages) {
    const Rat target = stage_sigma_target(s.family.stage, params);
    json sets = json::array();
    json sigmas = json::array();
    const StageAudit& audit = s.audit;
    for (const auto& set : s.family.sets) {
      sets.push_back(decimal_list(set));
      sigmas.push_back(audit.sigma_exact ? target.to_string() : reciprocal_sum(set).to_string());
    }
    json misses = json::array();
    for (auto u : audit.anchor_misses) misses.push_back(u);
    json r{{"record", "stage"},
           {"stage", s.family.stage},
           {"sets", sets},
           {"sigma", sigmas},
           {"coverage", json::array({(Nat(2) * params.kd()).to_decimal(), audit.coverage_end.to_decimal()})},
           {"stability_cutoff", s.stability_cutoff ? json(s.stability_cutoff->to_decimal()) : json(nullptr)},
           {"anchor_misses", misses},
           {"steps", s.steps}};
    out += r.dump() + "\n";
  }
  return out;
}

StarReport make_star_report(const Nat& x, std::uint32_t depth, const FactorEffort& effort) {
  StarReport r;
  r.ladder = ladder(x, depth, effort);
  for (std::uint32_t n = 1; n <= depth; ++n) {
    r.certificates.push_back(coprime_certificate(x, n));
    r.divisibility.push_back(divisibility_chain_check(x, n));
  }
  return r;
}

std::string star_artifact(const StarReport& report) {
  const Ladder& l = report.ladder;
  std::string out;
  json h = header("star");
  h["x"] = l.seed.to_decimal();
  h["depth"] = l.segments.size() - 1;
  h["word_order"] = "left-to-right";
  out += h.dump() + "\n";

  json segments = json::array();
  for (std::size_t j = 0; j < l.segments.size(); ++j) {
    const auto& f = l.segments[j];
    json factors = json::array();
    for (const auto& pf : f.factors) {
      factors.push_back(json{{"p", pf.prime.to_decimal()}, {"e", pf.exponent}, {"deterministic", pf.deterministic}});
    }
    segments.push_back(json{{"index", j},
                            {"target", f.value.to_decimal()},
                            {"factors", factors},
                            {"cofactor", f.cofactor.to_decimal()},
                            {"complete", f.complete()}});
  }
  out += json{{"record", "ladder"}, {"text", format_ladder(l)}, {"segments", segments}}.dump() + "\n";

  for (std::size_t i = 0; i < report.certificates.size(); ++i) {
    out += json{{"record", "certificate"}, {"n", i + 1}, {"entries", decimal_list(report.certificates[i])}}.dump() +
           "\n";
  }
  for (std::size_t i = 0; i < report.divisibility.size(); ++i) {
    out += json{{"record", "divisibility"}, {"m", i + 1}, {"pass", static_cast<bool>(report.divisibility[i])}}.dump() +
           "\n";
  }
  const LadderEvidence ev = ladder_evidence(l);
  json pp = json::array();
  for (const auto& [p, e] : ev.prime_powers) pp.push_back(json::array({p.to_decimal(), e}));
  out += json{{"record", "evidence"}, {"P", decimal_list(ev.primes)}, {"Pp", pp}}.dump() + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + tmp);
    out << contents;
    if (!out.flush()) throw Error(Errc::io_error, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(Errc::io_error, "cannot rename " + tmp + " to " + path);
}

}  // namespace egypt
