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

#include <cstdio>

#include "egypt/artifact.hpp"
#include "egypt/error.hpp"
#include "json.hpp"

namespace egypt {

using nlohmann::json;

namespace {

constexpr const char* kCheckpointFormat = "egypt-checkpoint";

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json nat_list(const std::vector<Nat>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(e.to_decimal());
  return a;
}

std::vector<Nat> parse_nat_list(const json& a) {
  std::vector<Nat> out;
  out.reserve(a.size());
  for (const auto& e : a) out.push_back(Nat::from_decimal(e.get<std::string>()));
  return out;
}

json towers_json(const TowerMultiset& m) {
  json a = json::array();
  for (const auto& [e, h] : m) a.push_back(json::array({e.to_decimal(), h.to_decimal()}));
  return a;
}

TowerMultiset parse_towers(const json& a) {
  std::vector<std::pair<Nat, Nat>> t;
  for (const auto& p : a) {
    t.emplace_back(Nat::from_decimal(p.at(0).get<std::string>()), Nat::from_decimal(p.at(1).get<std::string>()));
  }
  return TowerMultiset::from_towers(t);
}

json params_json(const Parameters& p) {
  return json{{"k", p.k.to_decimal()}, {"n", p.n.to_decimal()}, {"d", p.d.to_decimal()}};
}

Parameters parse_params(const json& j) {
  return make_parameters(Nat::from_decimal(j.at("k").get<std::string>()),
                         Nat::from_decimal(j.at("n").get<std::string>()),
                         Nat::from_decimal(j.at("d").get<std::string>()));
}

json manifest_json(const RunManifest& m) {
  return json{{"command", m.command}, {"blocks", m.blocks}, {"stages", m.stages}, {"group", m.group}};
}

RunManifest parse_manifest(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.blocks = j.at("blocks").get<std::uint64_t>();
  m.stages = j.at("stages").get<std::uint32_t>();
  m.group = j.at("group").get<bool>();
  return m;
}

std::string wrap(const std::string& kind, const json& payload) {
  const std::string body = payload.dump();
  json doc{{"format", kCheckpointFormat},
           {"version", kCheckpointVersion},
           {"kind", kind},
           {"payload", payload},
           {"checksum", fnv1a64_hex(body)}};
  return doc.dump() + "\n";
}

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(Errc::format_error, "checkpoint is not a JSON object");
  if (doc.value("format", "") != kCheckpointFormat) throw Error(Errc::format_error, "not an egypt checkpoint");
  if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != kCheckpointVersion) {
    throw Error(Errc::format_error, "unsupported checkpoint version");
  }
  return doc;
}

json unwrap(const std::string& text, const std::string& kind) {
  json doc = parse_document(text);
  if (doc.value("kind", "") != kind) throw Error(Errc::format_error, "checkpoint kind is not " + kind);
  if (!doc.contains("payload") || !doc.contains("checksum")) throw Error(Errc::format_error, "checkpoint is incomplete");
  if (fnv1a64_hex(doc["payload"].dump()) != doc["checksum"].get<std::string>()) {
    throw Error(Errc::checksum_error, "checkpoint checksum mismatch");
  }
  return std::move(doc["payload"]);
}

// Shape problems inside a checksummed payload surface as format_error.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::format_error, std::string("malformed checkpoint payload: ") + e.what());
  }
}

json family_json(const StageFamily& f) {
  json sets = json::array();
  for (const auto& s : f.sets) sets.push_back(nat_list(s));
  return json{{"stage", f.stage}, {"sets", sets}};
}

StageFamily parse_family(const json& j, const Parameters& params) {
  StageFamily f;
  f.stage = j.at("stage").get<std::uint32_t>();
  f.params = params;
  for (const auto& s : j.at("sets")) f.sets.push_back(parse_nat_list(s));
  return f;
}

json audit_json(const StageAudit& a) {
  return json{{"s0_exact", a.s0_exact},         {"simple", a.simple},
              {"disjoint", a.disjoint},         {"sigma_exact", a.sigma_exact},
              {"coverage", a.coverage},         {"coverage_end", a.coverage_end.to_decimal()},
              {"anchor_misses", a.anchor_misses}, {"failures", a.failures}};
}

StageAudit parse_audit(const json& j) {
  StageAudit a;
  a.s0_exact = j.at("s0_exact").get<bool>();
  a.simple = j.at("simple").get<bool>();
  a.disjoint = j.at("disjoint").get<bool>();
  a.sigma_exact = j.at("sigma_exact").get<bool>();
  a.coverage = j.at("coverage").get<bool>();
  a.coverage_end = Nat::from_decimal(j.at("coverage_end").get<std::string>());
  a.anchor_misses = j.at("anchor_misses").get<std::vector<std::uint32_t>>();
  a.failures = j.at("failures").get<std::vector<std::string>>();
  return a;
}

}  // namespace

std::string save_thm1_checkpoint(const Thm1Checkpoint& cp) {
  const Theorem1State& s = cp.state;
  json blocks = json::array();
  for (const auto& b : s.completed) {
    blocks.push_back(json{{"index", b.index},
                          {"elements", nat_list(b.elements)},
                          {"steps_used", b.steps_used},
                          {"frontier", b.frontier_after.to_decimal()}});
  }
  json payload{{"manifest", manifest_json(cp.manifest)},
               {"params", params_json(s.params)},
               {"blocks", blocks},
               {"transitional", towers_json(s.transitional)},
               {"step_index", s.step_index},
               {"total_steps", s.total_steps},
               {"scan_from", s.scan_from.to_decimal()}};
  return wrap("thm1", payload);
}

Thm1Checkpoint load_thm1_checkpoint(const std::string& text) {
  const json p = unwrap(text, "thm1");
  return guarded([&] {
    Thm1Checkpoint cp;
    cp.manifest = parse_manifest(p.at("manifest"));
    Theorem1State s = init_state(parse_params(p.at("params")));
    for (const auto& jb : p.at("blocks")) {
      Block b;
      b.index = jb.at("index").get<std::uint64_t>();
      b.elements = parse_nat_list(jb.at("elements"));
      b.steps_used = jb.at("steps_used").get<std::uint64_t>();
      b.frontier_after = Nat::from_decimal(jb.at("frontier").get<std::string>());
      if (b.index != s.completed.size() || b.elements.empty()) {
        throw Error(Errc::format_error, "checkpoint block sequence is malformed");
      }
      s.used.insert(b.elements.begin(), b.elements.end());
      s.completed.push_back(std::move(b));
    }
    s.frontier = frontier(s.completed, s.params.kd());
    s.transitional = parse_towers(p.at("transitional"));
    s.step_index = p.at("step_index").get<std::uint64_t>();
    s.total_steps = p.at("total_steps").get<std::uint64_t>();
    s.scan_from = Nat::from_decimal(p.at("scan_from").get<std::string>());
    cp.state = std::move(s);
    return cp;
  });
}

std::string save_thm2_checkpoint(const Thm2Checkpoint& cp) {
  const DyadicRun& run = cp.run;
  json stages = json::array();
  for (const auto& r : run.stages) {
    stages.push_back(json{{"family", family_json(r.family)},
                          {"steps", r.steps},
                          {"stability_cutoff", r.stability_cutoff ? json(r.stability_cutoff->to_decimal()) : json()},
                          {"audit", audit_json(r.audit)}});
  }
  json in_flight;
  if (run.in_flight) {
    const StageExtension& e = *run.in_flight;
    json pending = json::array();
    for (const auto& m : e.pending) pending.push_back(towers_json(m));
    json finalized = json::array();
    for (const auto& s : e.finalized) finalized.push_back(nat_list(s));
    in_flight = json{{"pending", pending},
                     {"finalized", finalized},
                     {"steps", e.steps},
                     {"scan_from", e.scan_from.to_decimal()}};
  }
  json payload{{"manifest", manifest_json(cp.manifest)},
               {"params", params_json(run.params)},
               {"stages", stages},
               {"in_flight", in_flight}};
  return wrap("thm2", payload);
}

Thm2Checkpoint load_thm2_checkpoint(const std::string& text) {
  const json p = unwrap(text, "thm2");
  return guarded([&] {
    Thm2Checkpoint cp;
    cp.manifest = parse_manifest(p.at("manifest"));
    DyadicRun& run = cp.run;
    run.params = parse_params(p.at("params"));
    for (const auto& js : p.at("stages")) {
      StageRecord r;
      r.family = parse_family(js.at("family"), run.params);
      r.steps = js.at("steps").get<std::uint64_t>();
      if (!js.at("stability_cutoff").is_null()) {
        r.stability_cutoff = Nat::from_decimal(js.at("stability_cutoff").get<std::string>());
      }
      r.audit = parse_audit(js.at("audit"));
      if (r.family.stage != run.stages.size() + 1) throw Error(Errc::format_error, "checkpoint stages out of order");
      run.stages.push_back(std::move(r));
    }
    if (run.stages.empty()) throw Error(Errc::format_error, "checkpoint has no stages");
    const json& jf = p.at("in_flight");
    if (!jf.is_null()) {
      // The candidate construction is deterministic, so only the progress is
      // read back; the base and used set are rebuilt.
      StageExtension e = begin_extension(run.stages.back().family);
      e.finalized.clear();
      for (const auto& s : jf.at("finalized")) e.finalized.push_back(parse_nat_list(s));
      e.pending.clear();
      for (const auto& m : jf.at("pending")) e.pending.push_back(parse_towers(m));
      if (e.finalized.size() + e.pending.size() != run.stages.back().family.sets.size()) {
        throw Error(Errc::format_error, "checkpoint extension has the wrong number of sets");
      }
      for (const auto& s : e.finalized) e.used.insert(s.begin(), s.end());
      e.steps = jf.at("steps").get<std::uint64_t>();
      e.scan_from = Nat::from_decimal(jf.at("scan_from").get<std::string>());
      run.in_flight = std::move(e);
    }
    return cp;
  });
}

std::string checkpoint_kind(const std::string& text) {
  const json doc = parse_document(text);
  const std::string kind = doc.value("kind", "");
  if (kind != "thm1" && kind != "thm2") throw Error(Errc::format_error, "unknown checkpoint kind '" + kind + "'");
  return kind;
}

}  // namespace egypt
