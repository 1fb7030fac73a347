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
#include <optional>
#include <string>
#include <vector>

#include "enact/formalism.hpp"
#include "enact/organism.hpp"
#include "enact/world.hpp"

namespace enact {

/// Interventions and observations over one language. No statement is
/// recorded in both roles.
class InterventionRecord {
 public:
  InterventionRecord(LanguagePtr language, std::vector<Statement> interventions,
                     std::vector<Statement> observations)
      : language_(std::move(language)),
        interventions_(std::move(interventions)),
        observations_(std::move(observations)) {
    for (auto s : interventions_) language_->validate(s);
    for (auto s : observations_) language_->validate(s);
    sort_canonical(interventions_);
    sort_canonical(observations_);
    for (auto s : interventions_)
      require(!std::binary_search(observations_.begin(), observations_.end(), s, CanonicalLess{}),
              ErrorKind::kInvalidArgument,
              "statement " + language_->format(s) + " is recorded as both intervention and observation");
  }

  const Language& language() const { return *language_; }
  const LanguagePtr& language_ptr() const { return language_; }
  const std::vector<Statement>& interventions() const { return interventions_; }
  const std::vector<Statement>& observations() const { return observations_; }

  /// (⋂INT) \ (⋃OBS); empty when there are no interventions.
  Statement distinguishing() const {
    if (interventions_.empty()) return {};
    Statement meet{~std::uint32_t{0}};
    for (auto s : interventions_) meet = meet & s;
    for (auto s : observations_) meet = meet - s;
    return meet;
  }

 private:
  LanguagePtr language_;
  std::vector<Statement> interventions_;
  std::vector<Statement> observations_;
};

struct CausalIdentity {
  Statement statement;
  InterventionRecord source;
};

/// Checks the three constraints on c against a record: nonempty, a proper
/// subset of every intervention, disjoint from every observation.
inline bool satisfies_identity_constraints(Statement c, const InterventionRecord& r) {
  if (c.empty()) return false;
  for (auto i : r.interventions())
    if (!c.is_proper_subset_of(i)) return false;
  for (auto o : r.observations())
    if (!(c & o).empty()) return false;
  return true;
}

/// Every causal identity for the record, in canonical order. Empty means the
/// intervening agency cannot be named.
inline std::vector<Statement> causal_identities(const InterventionRecord& record) {
  require(!record.interventions().empty(), ErrorKind::kPrecondition, "record has no interventions");
  const Statement d = record.distinguishing();
  require(d.size() <= 24, ErrorKind::kBudgetExceeded,
          "distinguishing statement has " + std::to_string(d.size()) + " programs; too many subsets");
  std::vector<Statement> out;
  // Enumerate the nonempty submasks of d.
  for (std::uint32_t s = d.bits; s != 0; s = (s - 1) & d.bits) {
    Statement c{s};
    bool proper = true;
    for (auto i : record.interventions())
      if (c == i) proper = false;
    if (proper) out.push_back(c);
  }
  sort_canonical(out);
  return out;
}

/// The maximal identity (⋂INT) \ (⋃OBS), when it is nonempty and a proper
/// subset of every intervention.
inline std::optional<Statement> canonical_causal_identity(const InterventionRecord& record) {
  if (record.interventions().empty()) return std::nullopt;
  const Statement d = record.distinguishing();
  if (d.empty()) return std::nullopt;
  for (auto i : record.interventions())
    if (d == i) return std::nullopt;
  return d;
}

/// The identity of the interventions is the intent ascribed to them.
inline std::optional<Statement> ascribe_intent(const InterventionRecord& record) {
  return canonical_causal_identity(record);
}

struct Preconditions {
  bool scale = false;
  bool incentive = false;
  bool met() const { return scale && incentive; }
};

/// Scale: the candidate is a statement of the organism's own language.
/// Incentive: supplied by the scenario.
inline Preconditions check_preconditions(Statement candidate, const Organism& organism,
                                         bool fitness_requires) {
  return Preconditions{organism.in_language(candidate), fitness_requires};
}

/// 1ST order self over every intervention the organism could make. When a
/// registry is supplied the self is registered there, which enforces that an
/// organism has at most one.
inline std::optional<SelfModel> first_order_self(const Organism& organism,
                                                 std::vector<Statement> all_interventions,
                                                 std::vector<Statement> all_observations,
                                                 SelfRegistry* registry = nullptr) {
  if (all_interventions.empty()) return std::nullopt;
  InterventionRecord record(organism.language, std::move(all_interventions), std::move(all_observations));
  auto c = canonical_causal_identity(record);
  if (!c) return std::nullopt;
  SelfModel m{organism.id, {organism.id}, *c, Statement{organism.vocabulary}};
  if (registry) registry->add(m);
  return m;
}

namespace detail {

struct PerspectiveEvent {
  const WorldEvent* event;
  Statement seen;
};

inline std::optional<Statement> identity_within(const std::vector<PerspectiveEvent>& perspective,
                                                Statement carrier,
                                                const auto& is_intervention,
                                                const auto& is_observation) {
  Statement meet{~std::uint32_t{0}};
  Statement seen_outside{};
  std::vector<Statement> ints;
  for (const auto& pe : perspective) {
    const Statement s = pe.seen & carrier;
    if (is_intervention(*pe.event)) {
      meet = meet & s;
      ints.push_back(s);
    } else if (is_observation(*pe.event)) {
      seen_outside = seen_outside | s;
    }
  }
  if (ints.empty()) return std::nullopt;
  const Statement c = meet - seen_outside;
  if (c.empty()) return std::nullopt;
  for (auto i : ints)
    if (!c.is_proper_subset_of(i)) return std::nullopt;
  return c;
}

}  // namespace detail

/// c^{chain}_{owner} by bounded recursive simulation over the world's event
/// log. Level k builds the identity of chain[k] inside the perspective of
/// chain[k-1] (the owner at level 0):
///   - level 0 sees every event through the owner's vocabulary; deeper
///     levels see only events in which the enclosing mind intervened, through
///     that mind's vocabulary;
///   - every level works inside the previous level's identity (its carrier),
///     so each model is nested in the one enclosing it;
///   - interventions at a level are the events where chain[k] and its chain
///     neighbour interacted (chain[0] responding to chain[1] at the top,
///     chain[k] prompting chain[k-1] below), observations are events without
///     chain[k].
/// Returns nothing when some level has no interventions (the mind was never
/// affected) or no identity survives (the scale precondition fails).
inline std::optional<SelfModel> construct_model(const SimulationWorld& world, const std::string& owner,
                                                const std::vector<std::string>& chain) {
  require(!chain.empty(), ErrorKind::kInvalidArgument, "empty chain");
  require(chain.size() <= world.max_depth, ErrorKind::kDepthExceeded,
          "chain [" + chain_key(chain) + "] is deeper than the limit of " + std::to_string(world.max_depth));
  const Organism& constructor = world.organism(owner);
  for (const auto& id : chain) (void)world.organism(id);

  std::vector<detail::PerspectiveEvent> perspective;
  for (const auto& e : world.events)
    perspective.push_back({&e, e.statement & Statement{constructor.vocabulary}});
  Statement carrier{constructor.vocabulary};
  Statement enclosing = carrier;

  for (std::size_t k = 0; k < chain.size(); ++k) {
    const std::string& object = chain[k];
    if (k > 0) {
      const std::string& mind = chain[k - 1];
      const Statement mind_vocab{world.organism(mind).vocabulary};
      std::vector<detail::PerspectiveEvent> next;
      for (const auto& pe : perspective)
        if (pe.event->involves(mind)) next.push_back({pe.event, pe.seen & mind_vocab});
      perspective = std::move(next);
    }
    auto is_int = [&](const WorldEvent& e) {
      if (chain.size() == 1) return e.involves(object);
      if (k == 0) return e.responds(object, chain[1]);
      return e.responds(chain[k - 1], object);
    };
    auto is_obs = [&](const WorldEvent& e) { return !e.involves(object); };
    auto c = detail::identity_within(perspective, carrier, is_int, is_obs);
    if (!c) return std::nullopt;
    enclosing = carrier;
    carrier = *c;
  }
  if (!constructor.in_language(carrier)) return std::nullopt;
  return SelfModel{owner, chain, carrier, enclosing};
}

/// Checks the chain shape for a self of `owner`: [owner], or an
/// even-length alternation [x, owner, y, owner, ...] with x, y ≠ owner.
inline bool well_formed_self_chain(const std::string& owner, const std::vector<std::string>& chain) {
  if (chain.size() == 1) return chain[0] == owner;
  if (chain.empty() || chain.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const bool odd = i % 2 == 1;
    if (odd != (chain[i] == owner)) return false;
  }
  return true;
}

/// The modeler's self of order n named by `chain`, built by construct_model.
/// Absent when a scale or incentive precondition fails at any level.
inline std::optional<SelfModel> nth_order_self(const std::string& modeler,
                                               const std::vector<std::string>& chain,
                                               const SimulationWorld& world, bool fitness_requires = true) {
  (void)world.organism(modeler);
  require(chain.size() <= world.max_depth, ErrorKind::kDepthExceeded,
          "chain [" + chain_key(chain) + "] is deeper than the limit of " + std::to_string(world.max_depth));
  require(well_formed_self_chain(modeler, chain), ErrorKind::kInvalidArgument,
          "chain [" + chain_key(chain) + "] is not a self chain for '" + modeler + "'");
  if (!fitness_requires) return std::nullopt;
  return construct_model(world, modeler, chain);
}

/// Statement union of two selves of the same order and owner. Rejected when
/// the union is no longer a proper subset of every intervention in `record`.
inline SelfModel union_of_selves(const SelfModel& a, const SelfModel& b, const InterventionRecord& record) {
  require(a.owner == b.owner && a.order() == b.order() && a.order() > 0, ErrorKind::kInvalidArgument,
          "only selves of the same owner and order can be united");
  const Statement u = a.identity | b.identity;
  require(satisfies_identity_constraints(u, record), ErrorKind::kInvalidArgument,
          "union " + record.language().format(u) + " is not a causal identity for the record");
  SelfModel m = a;
  m.chain = a.chain;
  m.identity = u;
  m.carrier = a.carrier | b.carrier;
  return m;
}

}  // namespace enact
