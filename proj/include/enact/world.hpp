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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "enact/formalism.hpp"
#include "enact/organism.hpp"
#include "enact/tasks.hpp"

namespace enact {

/// When the realised statement contains `when`, `organism` perceives `input`
/// instead of the default (realised ∩ its vocabulary).
struct TransitionRule {
  std::string organism;
  Statement when;
  Statement input;
};

/// Two-agent signalling setup: `intent` is what the sender means to convey
/// whenever it intervenes.
struct GriceanConfig {
  std::string sender;
  std::string receiver;
  Statement intent;
};

/// An interpretation to evaluate against the final organism state.
struct Probe {
  std::string organism;
  std::string label;
  Statement input;
};

/// Scenario-declared INT/OBS statements for one organism.
struct DeclaredRecord {
  std::string organism;
  std::vector<Statement> interventions;
  std::vector<Statement> observations;
};

struct Turn {
  std::string organism;
  std::optional<Statement> input;
  std::optional<std::size_t> chosen_task;
  bool meant_something = false;
  /// The statement the organism realised; equals its input when passive.
  Statement output;
  bool intervened = false;
};

/// Everything a run needs: the shared language, organisms, the data-driven
/// transition rules, and the append-only logs.
struct SimulationWorld {
  std::string name;
  LanguagePtr language;
  std::vector<Organism> organisms;
  /// Turn orders, cycled by step. Empty means organism declaration order.
  std::vector<std::vector<std::string>> schedule;
  /// Stimuli played once, in order, before `stimuli` takes over.
  std::vector<Statement> prelude;
  std::vector<Statement> stimuli;
  bool random_stimuli = false;
  std::vector<TransitionRule> transitions;
  /// Finite slice of Γ over which protosymbol systems are computed.
  std::vector<VTask> task_universe;
  std::optional<GriceanConfig> gricean;
  std::vector<DeclaredRecord> records;
  std::vector<Probe> probes;
  std::size_t max_depth = 4;
  std::uint64_t seed = 0;
  std::size_t clock = 0;

  std::vector<WorldEvent> events;
  SelfRegistry registry;
  std::vector<nlohmann::json> trace;

  // State at the start of the most recent step, for counterfactual replay.
  std::vector<Organism> last_organisms;
  std::optional<Statement> last_stimulus;
  std::vector<std::string> last_order;
  std::vector<Turn> last_turns;

  const Organism* find(const std::string& id) const {
    for (const auto& o : organisms)
      if (o.id == id) return &o;
    return nullptr;
  }
  Organism* find(const std::string& id) {
    for (auto& o : organisms)
      if (o.id == id) return &o;
    return nullptr;
  }
  const Organism& organism(const std::string& id) const {
    const auto* o = find(id);
    require(o != nullptr, ErrorKind::kUnknownOrganism, "no organism '" + id + "' in world");
    return *o;
  }
  Organism& organism(const std::string& id) {
    auto* o = find(id);
    require(o != nullptr, ErrorKind::kUnknownOrganism, "no organism '" + id + "' in world");
    return *o;
  }

  std::vector<std::string> order_for(std::size_t step) const {
    if (!schedule.empty()) return schedule[step % schedule.size()];
    std::vector<std::string> ids;
    for (const auto& o : organisms) ids.push_back(o.id);
    return ids;
  }

  nlohmann::json names(Statement s) const {
    nlohmann::json a = nlohmann::json::array();
    for (auto i : s.indices()) a.push_back(language->vocabulary().name(i));
    return a;
  }
};

}  // namespace enact
