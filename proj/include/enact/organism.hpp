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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enact/formalism.hpp"
#include "enact/tasks.hpp"

namespace enact {

/// A chain the organism tries to construct: `chain` is the superscript of
/// c^{chain}_{owner}, outermost mind first, object last. `incentive` is the
/// scenario's declaration that fitness demands this identity.
struct ModelTarget {
  std::vector<std::string> chain;
  bool incentive = true;
};

/// An organism ⟨𝔳, μ, 𝔭, <⟩ living in a shared world language. Its own
/// vocabulary is a subset (mask) of the world's programs.
struct Organism {
  std::string id;
  /// False for inert participants such as rocks or thermostats.
  bool is_organism = true;
  std::uint32_t vocabulary = 0;
  LanguagePtr language;
  std::optional<VTask> fitness_task;
  std::vector<Policy> reflex_policies;
  /// Policies learned from the history task.
  std::vector<Policy> learned_policies;
  /// Registered causal identities (selves and models of others).
  std::vector<Policy> identity_policies;
  std::vector<std::pair<Statement, Statement>> history;
  /// Named built-in comparator over tasks.
  std::string preference = "canonical";
  std::string proxy = "weakness";
  bool learning = false;
  /// Drop-oldest limit on remembered history; 0 keeps everything.
  std::size_t memory_limit = 0;
  /// Reafference marker: a program present in exactly this organism's
  /// interventions.
  std::optional<std::size_t> marker;
  std::vector<ModelTarget> models;

  /// Membership in L_{𝔳_𝔬}.
  bool in_language(Statement s) const {
    return !s.empty() && s.is_subset_of(Statement{vocabulary}) && language->contains(s);
  }

  /// 𝔭_𝔬 = reflexes ∪ learned ∪ registered identities, without repeats.
  std::vector<Policy> known_policies() const {
    std::vector<Policy> out;
    auto add = [&](const std::vector<Policy>& ps) {
      for (const auto& p : ps)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    };
    add(reflex_policies);
    add(learned_policies);
    add(identity_policies);
    return out;
  }

  /// 𝔥_{<t}: inputs and outputs seen so far, as one (unchecked) task.
  std::optional<VTask> history_task() const {
    if (history.empty()) return std::nullopt;
    std::vector<Statement> inputs;
    IndexSet outputs(language->size());
    for (const auto& [in, out] : history) {
      inputs.push_back(in);
      auto idx = language->index_of(out);
      if (idx) outputs.insert(*idx);
    }
    return VTask::unchecked(language, std::move(inputs), std::move(outputs));
  }
};

/// Selective memory: the history admits correct policies the organism
/// does not hold as learned policies.
inline bool has_selective_memory(const Organism& o) {
  auto h = o.history_task();
  if (!h) return false;
  for (const auto& p : policies(*h))
    if (std::find(o.learned_policies.begin(), o.learned_policies.end(), p) == o.learned_policies.end())
      return true;
  return false;
}

/// A realised world statement and the organisms whose interventions produced
/// it, in the order they acted.
struct WorldEvent {
  std::size_t step = 0;
  Statement statement;
  std::vector<std::string> provenance;

  bool involves(const std::string& id) const {
    return std::find(provenance.begin(), provenance.end(), id) != provenance.end();
  }
  /// `responder` intervened immediately after `initiator`.
  bool responds(const std::string& responder, const std::string& initiator) const {
    for (std::size_t i = 1; i < provenance.size(); ++i)
      if (provenance[i] == responder && provenance[i - 1] == initiator) return true;
    return false;
  }
};

/// c^{chain}_{owner}. For a self the chain ends with the owner.
struct SelfModel {
  std::string owner;
  std::vector<std::string> chain;
  Statement identity;
  /// Statement the identity was constructed inside: the owner's vocabulary
  /// for single-element chains, otherwise the identity of the chain with its
  /// object removed.
  Statement carrier;

  bool is_self() const { return !chain.empty() && chain.back() == owner; }

  /// Number of reflections for selves (1 for [a], 2 for [b,a], 3 for
  /// [b,a,b,a]); 0 for models of other objects.
  std::size_t order() const {
    if (!is_self()) return 0;
    if (chain.size() == 1) return 1;
    return chain.size() / 2 + 1;
  }
};

inline std::string chain_key(const std::vector<std::string>& chain) {
  std::string k;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) k += ",";
    k += chain[i];
  }
  return k;
}

/// Append-only store of constructed identities.
class SelfRegistry {
 public:
  /// Registers a model; throws kDuplicateSelf when the owner already has a
  /// different 1ST order self. Re-registering an identical model is a no-op.
  void add(const SelfModel& m) {
    require(!m.chain.empty(), ErrorKind::kInvalidArgument, "model without chain");
    if (m.is_self() && m.order() >= 2)
      require(m.identity.is_subset_of(m.carrier), ErrorKind::kInvalidArgument,
              "self of order " + std::to_string(m.order()) + " is not nested in its carrier");
    if (auto* existing = find(m.owner, m.chain)) {
      require(existing->identity == m.identity, ErrorKind::kDuplicateSelf,
              "organism '" + m.owner + "' already holds a different model for chain [" +
                  chain_key(m.chain) + "]");
      return;
    }
    entries_.push_back(m);
  }

  const SelfModel* find(const std::string& owner, const std::vector<std::string>& chain) const {
    for (const auto& e : entries_)
      if (e.owner == owner && e.chain == chain) return &e;
    return nullptr;
  }

  bool has_order(const std::string& owner, std::size_t order) const {
    for (const auto& e : entries_)
      if (e.owner == owner && e.order() == order) return true;
    return false;
  }

  std::vector<SelfModel> models_of(const std::string& owner) const {
    std::vector<SelfModel> out;
    for (const auto& e : entries_)
      if (e.owner == owner) out.push_back(e);
    return out;
  }

  const std::vector<SelfModel>& entries() const { return entries_; }

 private:
  std::vector<SelfModel> entries_;
};

}  // namespace enact
