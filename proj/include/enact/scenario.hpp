// Copyright 2026 The Enact Authors
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "enact/agents.hpp"
#include "enact/io.hpp"

namespace enact {

namespace builtin {

/// Alice puts on a coat when it rains, or when Bob or Larry makes her.
inline const char* kRaincoat = R"json({
  "description": "Alice, Bob and Larry: weather and coercion produce the same coat",
  "features": ["rain", "coat", "a_int", "a_fear", "b_wish", "b_int", "l_wish", "l_int"],
  "situations": [
    ["rain", "coat", "a_int"],
    ["b_wish", "b_int", "coat", "a_fear"],
    ["l_wish", "l_int", "coat", "a_fear"],
    ["rain"], ["b_wish"], ["l_wish"]
  ],
  "tasks": [
    {"name": "alice_rain", "inputs": [["rain"]], "policy": ["coat", "a_int"]},
    {"name": "alice_coerced", "inputs": [["b_int"], ["l_int"]], "policy": ["coat", "a_fear"]},
    {"name": "bob_act", "inputs": [["b_wish"]], "policy": ["b_int"]},
    {"name": "larry_act", "inputs": [["l_wish"]], "policy": ["l_int"]},
    {"name": "bob_predict", "inputs": [["coat"]], "policy": ["rain"]}
  ],
  "organisms": [
    {"id": "alice", "vocabulary": ["rain", "coat", "a_int", "a_fear", "b_int", "l_int"], "marker": "a_int",
     "reflexes": [["coat", "a_int"], ["coat", "a_fear"]], "models": [{"chain": ["alice"]}]},
    {"id": "bob", "vocabulary": ["rain", "coat", "b_wish", "b_int", "l_int"], "marker": "b_int",
     "reflexes": [["b_int"], ["rain"]], "models": [{"chain": ["bob"]}, {"chain": ["larry"]}]},
    {"id": "larry", "vocabulary": ["rain", "coat", "l_wish", "l_int"], "marker": "l_int",
     "reflexes": [["l_int"]]}
  ],
  "scenario": {
    "name": "raincoat",
    "steps": 6,
    "stimuli": [["b_wish"], ["rain"], ["l_wish"]],
    "schedule": [["bob", "larry", "alice"]],
    "probes": [
      {"organism": "bob", "label": "observed_coat", "input": ["coat"]},
      {"organism": "bob", "label": "coerced_coat", "input": ["coat", "b_int"]}
    ]
  }
})json";

/// A calls about food, B calls about danger; each answers the other's call
/// by looking. Rustles and twigs make each act alone.
inline const char* kGricean = R"json({
  "description": "Two signallers that come to model each other's model of themselves",
  "features": ["m_a", "m_b", "food", "danger", "call_a", "call_b", "look_a", "look_b",
               "rustle", "sniff_a", "twig", "sniff_b"],
  "situations": [
    ["food", "m_a", "call_a", "m_b", "look_a"],
    ["danger", "m_b", "call_b", "m_a", "look_b"],
    ["rustle", "m_a", "sniff_a"],
    ["twig", "m_b", "sniff_b"],
    ["food"], ["danger"], ["rustle"], ["twig"],
    ["m_a", "call_a"], ["m_b", "call_b"]
  ],
  "tasks": [
    {"name": "a_food", "inputs": [["food"]], "policy": ["m_a", "call_a"]},
    {"name": "a_answer", "inputs": [["m_b", "call_b"]], "policy": ["m_a", "look_b"]},
    {"name": "a_rustle", "inputs": [["rustle"]], "policy": ["m_a", "sniff_a"]},
    {"name": "b_danger", "inputs": [["danger"]], "policy": ["m_b", "call_b"]},
    {"name": "b_answer", "inputs": [["m_a", "call_a"]], "policy": ["m_b", "look_a"]},
    {"name": "b_twig", "inputs": [["twig"]], "policy": ["m_b", "sniff_b"]}
  ],
  "organisms": [
    {"id": "a", "marker": "m_a",
     "vocabulary": ["m_a", "m_b", "food", "call_a", "call_b", "look_a", "look_b", "rustle", "sniff_a", "twig", "sniff_b"],
     "reflexes": [["m_a", "call_a"], ["m_a", "look_b"], ["m_a", "sniff_a"]],
     "models": [{"chain": ["a"]}, {"chain": ["b", "a"]}]},
    {"id": "b", "marker": "m_b",
     "vocabulary": ["m_a", "m_b", "danger", "call_a", "call_b", "look_a", "look_b", "rustle", "sniff_a", "twig", "sniff_b"],
     "reflexes": [["m_b", "call_b"], ["m_b", "look_a"], ["m_b", "sniff_b"]],
     "models": [{"chain": ["b"]}, {"chain": ["a", "b"]}]}
  ],
  "scenario": {
    "name": "gricean",
    "steps": 8,
    "stimuli": [["rustle"], ["twig"], ["food"], ["danger"]],
    "schedule": [["a", "b"], ["b", "a"], ["a", "b"], ["b", "a"]],
    "gricean": {"sender": "a", "receiver": "b", "intent": ["call_a"]}
  }
})json";

/// A learner that acts on a cue and a mimic that performs the same action.
/// `scale` gives the learner a marker it can perceive; `incentive` declares
/// that fitness demands the learner's self.
inline Json prop4(bool scale, bool incentive) {
  Json doc = Json::parse(R"json({
    "description": "Acquiring a first order self under the scale and incentive preconditions",
    "features": ["cue", "sleep", "act", "m", "mcue", "mm"],
    "situations": [["cue", "m", "act"], ["cue", "sleep"], ["mcue", "mm", "act"], ["cue"], ["mcue"], ["sleep"]],
    "tasks": [
      {"name": "learner_act", "inputs": [["cue"]], "policy": ["m", "act"]},
      {"name": "mimic_act", "inputs": [["mcue"]], "policy": ["mm", "act"]}
    ],
    "organisms": [
      {"id": "learner", "vocabulary": ["cue", "sleep", "act", "m"], "marker": "m",
       "reflexes": [["m", "act"]], "learning": true, "proxy": "weakness",
       "models": [{"chain": ["learner"], "incentive": true}]},
      {"id": "mimic", "vocabulary": ["mcue", "act", "mm"], "marker": "mm", "reflexes": [["mm", "act"]]}
    ],
    "scenario": {
      "name": "prop4",
      "steps": 40,
      "prelude": [["mcue"], ["cue", "sleep"]],
      "stimuli": [["cue"], ["cue", "sleep"], ["mcue"]],
      "random_stimuli": true,
      "schedule": [["learner", "mimic"]]
    }
  })json");
  auto& learner = doc["organisms"][0];
  if (!scale) {
    learner["vocabulary"] = Json::array({"cue", "sleep", "act"});
    learner.erase("marker");
    learner["reflexes"] = Json::array({Json::array({"act"})});
    doc["tasks"][0]["policy"] = Json::array({"act"});
  }
  learner["models"][0]["incentive"] = incentive;
  std::string name = "prop4";
  if (!scale || !incentive) {
    name += ":";
    if (!scale) name += "scale=false";
    if (!scale && !incentive) name += ",";
    if (!incentive) name += "incentive=false";
  }
  doc["scenario"]["name"] = name;
  return doc;
}

}  // namespace builtin

inline std::vector<std::string> builtin_scenario_names() {
  return {"raincoat", "gricean", "prop4", "prop4:scale=false", "prop4:incentive=false",
          "prop4:scale=false,incentive=false"};
}

/// Built-in scenario document by name. Prop 4 variants take comma-separated
/// `scale=` and `incentive=` overrides after a colon.
inline Json builtin_scenario(const std::string& name) {
  if (name == "raincoat") return Json::parse(builtin::kRaincoat);
  if (name == "gricean") return Json::parse(builtin::kGricean);
  if (name.rfind("prop4", 0) == 0) {
    bool scale = true, incentive = true;
    if (name.size() > 5) {
      require(name[5] == ':', ErrorKind::kUnknownScenario, "unknown scenario '" + name + "'");
      std::string rest = name.substr(6);
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        const auto end = std::min(rest.find(',', pos), rest.size());
        const std::string opt = rest.substr(pos, end - pos);
        if (opt == "scale=false") scale = false;
        else if (opt == "scale=true") scale = true;
        else if (opt == "incentive=false") incentive = false;
        else if (opt == "incentive=true") incentive = true;
        else fail(ErrorKind::kUnknownScenario, "unknown prop4 option '" + opt + "'");
        pos = end + 1;
      }
    }
    return builtin::prop4(scale, incentive);
  }
  fail(ErrorKind::kUnknownScenario, "unknown scenario '" + name + "'");
}

/// Builds a world from a document with a "scenario" section.
inline SimulationWorld build_world(const Document& doc, std::uint64_t seed) {
  require(doc.source.contains("scenario"), ErrorKind::kScenario, "document has no 'scenario' section");
  for (const auto& v : doc.violations)
    fail(ErrorKind::kScenario, "invalid scenario entity at " + v.location + ": " + v.message);
  const Json& s = doc.source.at("scenario");
  detail::check_keys(s,
                     {"name", "steps", "prelude", "stimuli", "random_stimuli", "schedule", "transitions", "task_universe",
                      "gricean", "probes", "records", "max_depth"},
                     "scenario");
  const auto& vocab = doc.language->vocabulary();
  SimulationWorld w;
  w.name = s.value("name", std::string("scenario"));
  w.language = doc.language;
  w.organisms = doc.organisms;
  w.seed = seed;
  w.max_depth = s.value("max_depth", std::size_t{4});
  for (const auto& o : w.organisms)
    for (const auto& m : o.models)
      for (const auto& id : m.chain) (void)w.organism(id);
  if (s.contains("schedule")) w.schedule = s.at("schedule").get<std::vector<std::vector<std::string>>>();
  for (const auto& order : w.schedule)
    for (const auto& id : order) (void)w.organism(id);
  auto stimulus = [&](const Json& st) {
    const Statement x = st.empty() ? Statement{} : parse_statement(st, vocab);
    require(x.empty() || doc.language->contains(x), ErrorKind::kScenario,
            "stimulus " + vocab.format(x) + " is not a statement of the language");
    return x;
  };
  for (const auto& st : s.value("prelude", Json::array())) w.prelude.push_back(stimulus(st));
  for (const auto& st : s.value("stimuli", Json::array())) w.stimuli.push_back(stimulus(st));
  w.random_stimuli = s.value("random_stimuli", false);
  for (const auto& r : s.value("transitions", Json::array())) {
    detail::check_keys(r, {"organism", "when", "input"}, "transitions");
    w.transitions.push_back(TransitionRule{r.at("organism").get<std::string>(), parse_statement(r.at("when"), vocab),
                                           parse_statement(r.at("input"), vocab)});
  }
  if (s.contains("task_universe")) {
    for (const auto& n : s.at("task_universe")) {
      const auto* t = doc.task(n.get<std::string>());
      require(t != nullptr, ErrorKind::kScenario, "task_universe names unknown task '" + n.get<std::string>() + "'");
      w.task_universe.push_back(*t);
    }
  } else {
    for (const auto& t : doc.tasks) w.task_universe.push_back(t.task);
  }
  if (s.contains("gricean")) {
    const auto& g = s.at("gricean");
    detail::check_keys(g, {"sender", "receiver", "intent"}, "gricean");
    w.gricean = GriceanConfig{g.at("sender").get<std::string>(), g.at("receiver").get<std::string>(),
                              parse_statement(g.at("intent"), vocab)};
    (void)w.organism(w.gricean->sender);
    (void)w.organism(w.gricean->receiver);
  }
  for (const auto& p : s.value("probes", Json::array())) {
    detail::check_keys(p, {"organism", "label", "input"}, "probes");
    w.probes.push_back(Probe{p.at("organism").get<std::string>(), p.at("label").get<std::string>(),
                             parse_statement(p.at("input"), vocab)});
  }
  for (const auto& r : s.value("records", Json::array())) {
    detail::check_keys(r, {"organism", "interventions", "observations"}, "records");
    w.records.push_back(DeclaredRecord{r.at("organism").get<std::string>(),
                                       parse_statements(r.at("interventions"), vocab),
                                       parse_statements(r.value("observations", Json::array()), vocab)});
  }
  return w;
}

struct ScenarioResult {
  SimulationWorld world;
  std::size_t steps_run = 0;
  /// Inventory, stages, probes and preconditions.
  nlohmann::json summary;
};

inline std::size_t scenario_steps(const Document& doc) {
  return doc.source.at("scenario").value("steps", std::size_t{10});
}

/// Runs the scenario for its declared number of steps, capped by max_steps.
inline ScenarioResult run_scenario(const Document& doc, std::uint64_t seed,
                                   std::optional<std::size_t> max_steps = std::nullopt) {
  ScenarioResult r{build_world(doc, seed), 0, {}};
  SimulationWorld& w = r.world;
  std::size_t steps = scenario_steps(doc);
  if (max_steps) steps = std::min(steps, *max_steps);
  for (std::size_t i = 0; i < steps; ++i) step(w);
  r.steps_run = steps;

  nlohmann::json inventory = nlohmann::json::object();
  nlohmann::json stages = nlohmann::json::object();
  nlohmann::json preconditions = nlohmann::json::object();
  for (const auto& o : w.organisms) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : w.registry.models_of(o.id)) {
      nlohmann::json registered_at = nullptr;
      for (const auto& e : w.trace)
        if (e["event"] == "self_registered" && e["organism"] == o.id && e["chain"] == detail::chain_json(m.chain)) {
          registered_at = e["step"];
          break;
        }
      models.push_back({{"chain", detail::chain_json(m.chain)},
                        {"order", m.order()},
                        {"identity", w.names(m.identity)},
                        {"carrier", w.names(m.carrier)},
                        {"step", registered_at}});
    }
    inventory[o.id] = models;
    const Stage st = classify_stage(o, w);
    stages[o.id] = {{"stage", static_cast<int>(st)}, {"name", to_string(st)}};
    nlohmann::json pre = nlohmann::json::array();
    for (const auto& t : o.models) {
      const bool scale = construct_model(w, o.id, t.chain).has_value();
      pre.push_back({{"chain", detail::chain_json(t.chain)},
                     {"scale", scale},
                     {"incentive", t.incentive},
                     {"acquired", w.registry.find(o.id, t.chain) != nullptr}});
    }
    preconditions[o.id] = pre;
  }
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : w.probes) {
    const auto interp = interpret(w.organism(p.organism), p.input, w.task_universe);
    probes.push_back({{"organism", p.organism},
                      {"label", p.label},
                      {"input", w.names(p.input)},
                      {"meant", interp.meant_something},
                      {"output", interp.output ? w.names(*interp.output) : nlohmann::json(nullptr)}});
  }
  nlohmann::json declared = nlohmann::json::array();
  for (const auto& d : w.records) {
    const auto& org = w.organism(d.organism);
    InterventionRecord rec(w.language, d.interventions, d.observations);
    const auto c = canonical_causal_identity(rec);
    declared.push_back({{"organism", d.organism},
                        {"identity", c ? w.names(*c) : nlohmann::json(nullptr)},
                        {"scale", c ? org.in_language(*c) : false}});
  }
  std::size_t transfers = 0;
  for (const auto& e : w.trace)
    if (e["event"] == "meaning_transferred") ++transfers;
  r.summary = {{"scenario", w.name},
               {"seed", seed},
               {"steps", steps},
               {"inventory", inventory},
               {"stages", stages},
               {"preconditions", preconditions},
               {"probes", probes},
               {"declared_identities", declared},
               {"meaning_transfers", transfers}};
  return r;
}

/// Trace as line-delimited JSON.
inline std::string trace_jsonl(const SimulationWorld& w) {
  std::string out;
  for (const auto& e : w.trace) {
    out += e.dump();
    out += '\n';
  }
  return out;
}

}  // namespace enact
