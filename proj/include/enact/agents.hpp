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

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "enact/causality.hpp"
#include "enact/learning.hpp"
#include "enact/organism.hpp"
#include "enact/rng.hpp"
#include "enact/tasks.hpp"
#include "enact/world.hpp"

namespace enact {

enum class Stage {
  kInert = 0,
  kHardCoded = 1,
  kLearning = 2,
  kFirstOrderSelf = 3,
  kSecondOrderSelves = 4,
  kThirdOrderSelves = 5,
};

inline const char* to_string(Stage s) {
  switch (s) {
    case Stage::kInert: return "inert";
    case Stage::kHardCoded: return "hard_coded";
    case Stage::kLearning: return "learning";
    case Stage::kFirstOrderSelf: return "first_order_self";
    case Stage::kSecondOrderSelves: return "second_order_selves";
    case Stage::kThirdOrderSelves: return "third_order_selves";
  }
  return "?";
}

/// Strict "a is preferred to b".
using TaskPreference = std::function<bool(const VTask&, const VTask&)>;

/// Built-in comparators. Every one falls back to canonical task order, so the
/// preferred task is always unique.
inline TaskPreference preference_by_name(const std::string& name) {
  if (name == "canonical") return [](const VTask& a, const VTask& b) { return task_less(a, b); };
  if (name == "broadest")
    return [](const VTask& a, const VTask& b) {
      const auto ca = a.outputs().count(), cb = b.outputs().count();
      return ca != cb ? ca > cb : task_less(a, b);
    };
  if (name == "narrowest")
    return [](const VTask& a, const VTask& b) {
      const auto ca = a.outputs().count(), cb = b.outputs().count();
      return ca != cb ? ca < cb : task_less(a, b);
    };
  fail(ErrorKind::kInvalidArgument, "unknown preference '" + name + "'");
}

/// Positions in `universe` of the tasks some known policy of the organism is
/// correct for.
inline std::vector<std::size_t> protosymbol_indices(const Organism& organism,
                                                    std::span<const VTask> universe) {
  const auto known = organism.known_policies();
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < universe.size(); ++t)
    for (const auto& p : known)
      if (is_correct_policy(p.statement, universe[t])) {
        out.push_back(t);
        break;
      }
  return out;
}

inline std::vector<VTask> protosymbol_system(const Organism& organism, std::span<const VTask> universe) {
  std::vector<VTask> out;
  for (auto t : protosymbol_indices(organism, universe)) out.push_back(universe[t]);
  return out;
}

struct Interpretation {
  std::optional<Statement> output;
  bool meant_something = false;
  /// Position of the chosen task in the task universe.
  std::optional<std::size_t> chosen_task;
};

/// Finds the tasks the input signifies, takes the preferred one and completes
/// the input with one of the known policies correct for it.
inline Interpretation interpret(const Organism& organism, Statement input, std::span<const VTask> universe,
                                const Selector& selector = fewest_programs_first()) {
  const Language& lang = *organism.language;
  lang.validate(input);
  const auto prefer = preference_by_name(organism.preference);
  std::optional<std::size_t> chosen;
  for (auto t : protosymbol_indices(organism, universe)) {
    if (!universe[t].has_input(input)) continue;
    if (!chosen || prefer(universe[t], universe[*chosen])) chosen = t;
  }
  if (!chosen) return {};
  const VTask& task = universe[*chosen];
  IndexSet allowed(lang.size());
  for (const auto& p : organism.known_policies())
    if (is_correct_policy(p.statement, task)) allowed |= lang.extension(p.statement);
  auto options = lang.members(lang.extension(input) & allowed);
  Interpretation r{std::nullopt, true, chosen};
  if (!options.empty()) {
    const auto pick = selector(options);
    require(pick < options.size(), ErrorKind::kOutOfRange, "selector chose outside the options");
    r.output = options[pick];
  }
  return r;
}

/// Would the organism have produced a different output from i − v?
inline bool affects_statement(Statement v, Statement i, const Organism& organism,
                              std::span<const VTask> universe) {
  require(!v.empty() && v.is_subset_of(i), ErrorKind::kPrecondition,
          "affecting statement must be a nonempty part of the input");
  const auto o = interpret(organism, i, universe).output;
  const Statement e = i - v;
  std::optional<Statement> g;
  if (!e.empty() && organism.language->contains(e)) g = interpret(organism, e, universe).output;
  return g != o;
}

struct TurnsResult {
  std::vector<Turn> turns;
  Statement realized;
  std::vector<std::string> provenance;
};

/// One pass of the schedule from `stimulus`, without touching any state. The
/// `suppressed` organism, if any, stays passive. An organism with a marker
/// intervenes when its output carries the marker; one without intervenes
/// whenever its output adds to its input.
inline TurnsResult simulate_turns(const SimulationWorld& world, const std::vector<Organism>& organisms,
                                  Statement stimulus, const std::vector<std::string>& order,
                                  const std::string* suppressed = nullptr) {
  const Language& lang = *world.language;
  TurnsResult r{{}, stimulus, {}};
  for (const auto& id : order) {
    auto it = std::find_if(organisms.begin(), organisms.end(), [&](const Organism& o) { return o.id == id; });
    require(it != organisms.end(), ErrorKind::kScenario,
            "step " + std::to_string(world.clock) + ": schedule names unknown organism '" + id + "'");
    const Organism& org = *it;
    Turn turn{id, std::nullopt, std::nullopt, false, Statement{}, false};
    Statement input = r.realized & Statement{org.vocabulary};
    for (const auto& rule : world.transitions)
      if (rule.organism == id && rule.when.is_subset_of(r.realized) && !rule.when.empty()) {
        input = rule.input;
        break;
      }
    if (input.empty() || !lang.contains(input)) {
      r.turns.push_back(turn);
      continue;
    }
    turn.input = input;
    turn.output = input;
    if (org.is_organism && !(suppressed && *suppressed == id)) {
      const auto interp = interpret(org, input, world.task_universe);
      turn.meant_something = interp.meant_something;
      turn.chosen_task = interp.chosen_task;
      if (interp.output) {
        turn.output = *interp.output;
        turn.intervened = org.marker ? turn.output.has(*org.marker) : turn.output != *turn.input;
      }
    }
    if (turn.intervened) r.provenance.push_back(id);
    const Statement joined = r.realized | turn.output;
    r.realized = lang.contains(joined) ? joined : turn.output;
    r.turns.push_back(turn);
  }
  return r;
}

/// Did the actor's output in the most recent step affect the subject? Replays
/// the step with the actor passive and asks whether the part of the subject's
/// input that came from the actor changes its interpretation.
inline bool affects_organism(const std::string& actor, const std::string& subject, const SimulationWorld& world) {
  (void)world.organism(actor);
  (void)world.organism(subject);
  if (!world.last_stimulus) return false;
  auto acted = std::find_if(world.last_turns.begin(), world.last_turns.end(),
                            [&](const Turn& t) { return t.organism == actor && t.intervened; });
  if (acted == world.last_turns.end()) return false;
  auto actual = std::find_if(world.last_turns.begin(), world.last_turns.end(),
                             [&](const Turn& t) { return t.organism == subject; });
  if (actual == world.last_turns.end() || !actual->input) return false;
  const auto replay = simulate_turns(world, world.last_organisms, *world.last_stimulus, world.last_order, &actor);
  auto cf = std::find_if(replay.turns.begin(), replay.turns.end(),
                         [&](const Turn& t) { return t.organism == subject; });
  const Statement before = (cf != replay.turns.end() && cf->input) ? *cf->input : Statement{};
  const Statement v = *actual->input - before;
  if (v.empty()) return false;
  const Organism* subject_state = nullptr;
  for (const auto& o : world.last_organisms)
    if (o.id == subject) subject_state = &o;
  return affects_statement(v, *actual->input, *subject_state, world.task_universe);
}

inline Stage classify_stage(const Organism& organism, const SimulationWorld& world) {
  if (!organism.is_organism) return Stage::kInert;
  if (world.registry.has_order(organism.id, 3)) return Stage::kThirdOrderSelves;
  if (world.registry.has_order(organism.id, 2)) return Stage::kSecondOrderSelves;
  if (world.registry.has_order(organism.id, 1)) return Stage::kFirstOrderSelf;
  if (organism.learning) return Stage::kLearning;
  return Stage::kHardCoded;
}

namespace detail {

inline nlohmann::json chain_json(const std::vector<std::string>& chain) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : chain) a.push_back(c);
  return a;
}

inline void learn_from_history(SimulationWorld& world, Organism& org) {
  if (!org.is_organism || !org.learning) return;
  auto h = org.history_task();
  if (!h || !h->valid()) return;
  if (policies(*h).empty()) return;
  const auto chosen = learn(*h, proxy_by_name(org.proxy)).chosen;
  if (std::find(org.learned_policies.begin(), org.learned_policies.end(), chosen) != org.learned_policies.end())
    return;
  org.learned_policies.push_back(chosen);
  world.trace.push_back({{"event", "policy_learned"},
                         {"step", world.clock},
                         {"organism", org.id},
                         {"policy", world.names(chosen.statement)},
                         {"proxy", org.proxy}});
}

inline void attempt_models(SimulationWorld& world, Organism& org) {
  for (const auto& target : org.models) {
    if (world.registry.find(org.id, target.chain)) continue;
    std::optional<SelfModel> m = well_formed_self_chain(org.id, target.chain)
                                     ? nth_order_self(org.id, target.chain, world, target.incentive)
                                     : (target.incentive ? construct_model(world, org.id, target.chain)
                                                         : std::nullopt);
    if (!m) continue;
    world.registry.add(*m);
    org.identity_policies.push_back(Policy{m->identity});
    world.trace.push_back({{"event", "self_registered"},
                           {"step", world.clock},
                           {"organism", org.id},
                           {"chain", chain_json(m->chain)},
                           {"order", m->order()},
                           {"identity", world.names(m->identity)},
                           {"carrier", world.names(m->carrier)}});
  }
}

/// Meaning transfer: the receiver strips the sender's marker and its own
/// second-order self from what it perceived, and compares the remainder with
/// the sender's declared intent.
inline void check_meaning(SimulationWorld& world, const std::vector<Turn>& turns) {
  if (!world.gricean) return;
  const auto& g = *world.gricean;
  const auto* sender_self = world.registry.find(g.sender, {g.receiver, g.sender});
  const auto* receiver_self = world.registry.find(g.receiver, {g.sender, g.receiver});
  if (!sender_self || !receiver_self) return;
  const Organism& sender = world.organism(g.sender);
  bool sender_acted = false;
  for (const auto& t : turns) {
    if (t.organism == g.sender && t.intervened) sender_acted = true;
    if (t.organism != g.receiver || !sender_acted || !t.input) continue;
    Statement decoded = *t.input - receiver_self->identity;
    if (sender.marker) decoded = decoded - Statement{std::uint32_t{1} << *sender.marker};
    if (decoded == g.intent)
      world.trace.push_back({{"event", "meaning_transferred"},
                             {"step", world.clock},
                             {"sender", g.sender},
                             {"receiver", g.receiver},
                             {"decoded", world.names(decoded)}});
    return;
  }
}

}  // namespace detail

/// Advances the world by one step: every scheduled organism perceives,
/// interprets and acts; then histories, learned policies and models are
/// updated and the trace extended.
inline void step(SimulationWorld& world) {
  const std::size_t t = world.clock;
  Statement stimulus{};
  if (t < world.prelude.size()) {
    stimulus = world.prelude[t];
  } else if (!world.stimuli.empty()) {
    const std::size_t k = t - world.prelude.size();
    const std::size_t pick = world.random_stimuli
                                 ? static_cast<std::size_t>(Rng::stream(world.seed, t).uniform(world.stimuli.size()))
                                 : k % world.stimuli.size();
    stimulus = world.stimuli[pick];
  }
  const auto order = world.order_for(t);
  world.last_organisms = world.organisms;
  world.last_stimulus = stimulus;
  world.last_order = order;
  auto result = simulate_turns(world, world.organisms, stimulus, order);
  world.last_turns = result.turns;

  for (std::size_t k = 0; k < result.turns.size(); ++k) {
    const Turn& turn = result.turns[k];
    nlohmann::json affected_by = nlohmann::json::array();
    if (turn.input)
      for (std::size_t j = 0; j < k; ++j)
        if (result.turns[j].intervened && result.turns[j].organism != turn.organism &&
            affects_organism(result.turns[j].organism, turn.organism, world))
          affected_by.push_back(result.turns[j].organism);
    nlohmann::json e = {{"event", turn.input ? "act" : "idle"}, {"step", t}, {"organism", turn.organism}};
    if (turn.input) {
      e["input"] = world.names(*turn.input);
      e["meant"] = turn.meant_something;
      e["chosen_task"] = turn.chosen_task ? nlohmann::json(*turn.chosen_task) : nlohmann::json(nullptr);
      e["output"] = world.names(turn.output);
      e["intervened"] = turn.intervened;
      e["affected_by"] = affected_by;
    }
    world.trace.push_back(std::move(e));

    if (!turn.input) continue;
    Organism& org = world.organism(turn.organism);
    org.history.emplace_back(*turn.input, turn.output);
    if (org.memory_limit > 0 && org.history.size() > org.memory_limit) {
      const auto dropped = org.history.front();
      org.history.erase(org.history.begin());
      world.trace.push_back({{"event", "memory_drop"},
                             {"step", t},
                             {"organism", org.id},
                             {"input", world.names(dropped.first)},
                             {"output", world.names(dropped.second)}});
    }
  }

  if (!result.realized.empty()) {
    world.events.push_back(WorldEvent{t, result.realized, result.provenance});
    nlohmann::json prov = nlohmann::json::array();
    for (const auto& p : result.provenance) prov.push_back(p);
    world.trace.push_back(
        {{"event", "world"}, {"step", t}, {"statement", world.names(result.realized)}, {"provenance", prov}});
  }

  for (auto& org : world.organisms) detail::learn_from_history(world, org);
  for (auto& org : world.organisms) detail::attempt_models(world, org);
  detail::check_meaning(world, result.turns);
  ++world.clock;
}

}  // namespace enact
