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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enact/formalism.hpp"
#include "enact/rng.hpp"

namespace enact {

/// A correct-policy candidate. Policies are statements; the wrapper keeps the
/// role visible in signatures.
struct Policy {
  Statement statement;
  friend bool operator==(const Policy&, const Policy&) = default;
};

/// A v-task: inputs I and correct outputs O ⊂ E_I over one language.
class VTask {
 public:
  /// Validating constructor; throws kInvalidArgument on the first violated
  /// invariant.
  static VTask make(LanguagePtr language, std::vector<Statement> inputs,
                    std::vector<Statement> outputs) {
    auto out = language->set_of(outputs);
    return from_sets(std::move(language), std::move(inputs), std::move(out));
  }

  static VTask from_sets(LanguagePtr language, std::vector<Statement> inputs, IndexSet outputs) {
    VTask t = unchecked(std::move(language), std::move(inputs), std::move(outputs));
    auto v = t.violations();
    require(v.empty(), ErrorKind::kInvalidArgument, v.empty() ? "" : v.front());
    return t;
  }

  /// Builds without checking the strictness invariants. Used for policy
  /// tasks and organism histories, which need not be members of Γ.
  static VTask unchecked(LanguagePtr language, std::vector<Statement> inputs, IndexSet outputs) {
    require(language != nullptr, ErrorKind::kInvalidArgument, "task without language");
    for (auto i : inputs) language->validate(i);
    sort_canonical(inputs);
    VTask t;
    t.input_ext_ = language->extension_of(inputs);
    t.language_ = std::move(language);
    t.inputs_ = std::move(inputs);
    t.outputs_ = std::move(outputs);
    return t;
  }

  const Language& language() const { return *language_; }
  const LanguagePtr& language_ptr() const { return language_; }
  std::span<const Statement> inputs() const { return inputs_; }
  const IndexSet& outputs() const { return outputs_; }
  /// E_I.
  const IndexSet& input_extension() const { return input_ext_; }
  std::vector<Statement> output_statements() const { return language_->members(outputs_); }

  bool has_input(Statement s) const {
    return std::binary_search(inputs_.begin(), inputs_.end(), s, CanonicalLess{});
  }

  /// Human-readable list of violated task invariants; empty when valid.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    const auto& lang = *language_;
    if (inputs_.empty()) out.push_back("task has no inputs");
    if (lang.kind() == LanguageKind::kDerived) {
      for (auto i : inputs_)
        if (!lang.contains(i)) out.push_back("input " + lang.format(i) + " is not in the language");
      if (inputs_.size() == lang.size() && out.empty())
        out.push_back("inputs equal the whole language; they must be a strict subset");
    }
    if (outputs_.empty()) out.push_back("task has no correct outputs");
    IndexSet stray = outputs_ - input_ext_;
    stray.for_each([&](std::size_t i) {
      out.push_back("output " + lang.format(lang.at(i)) + " is not a completion of any input");
    });
    if (!outputs_.empty() && outputs_ == input_ext_)
      out.push_back("correct outputs equal every completion of the inputs; they must be a strict subset");
    return out;
  }
  bool valid() const { return violations().empty(); }

  std::string format() const {
    std::string s = "<I={";
    for (std::size_t k = 0; k < inputs_.size(); ++k) {
      if (k) s += ",";
      s += language_->format(inputs_[k]);
    }
    s += "}, O={";
    bool first = true;
    outputs_.for_each([&](std::size_t i) {
      if (!first) s += ",";
      s += language_->format(language_->at(i));
      first = false;
    });
    return s + "}>";
  }

  friend bool operator==(const VTask& a, const VTask& b) {
    return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_;
  }

 private:
  VTask() = default;

  LanguagePtr language_;
  std::vector<Statement> inputs_;
  IndexSet outputs_;
  IndexSet input_ext_;
};

/// Deterministic total order on tasks: inputs (canonical, lexicographic)
/// then output positions. Used wherever ties must break reproducibly.
inline bool task_less(const VTask& a, const VTask& b) {
  auto ai = a.inputs(), bi = b.inputs();
  if (!std::equal(ai.begin(), ai.end(), bi.begin(), bi.end()))
    return std::lexicographical_compare(ai.begin(), ai.end(), bi.begin(), bi.end(), CanonicalLess{});
  auto ao = a.outputs().indices(), bo = b.outputs().indices();
  return ao < bo;
}

inline bool same_language(const Language& a, const Language& b) {
  return &a == &b || a.content_hash() == b.content_hash();
}

/// Π_α: every candidate π with E_I ∩ E_π = O, in canonical order.
inline std::vector<Policy> policies(const VTask& task) {
  const auto& lang = task.language();
  std::vector<Policy> out;
  auto cands = lang.candidates();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if ((task.input_extension() & lang.candidate_extension(i)) == task.outputs())
      out.push_back(Policy{cands[i]});
  }
  return out;
}

inline bool is_correct_policy(Statement policy, const VTask& task) {
  return (task.input_extension() & task.language().extension(policy)) == task.outputs();
}

/// α ⊏ ω: I_α ⊊ I_ω and O_α ⊆ O_ω.
inline bool is_child(const VTask& alpha, const VTask& omega) {
  require(same_language(alpha.language(), omega.language()), ErrorKind::kLanguageMismatch,
          "tasks are over different languages");
  auto ai = alpha.inputs(), oi = omega.inputs();
  if (ai.size() >= oi.size()) return false;
  if (!std::includes(oi.begin(), oi.end(), ai.begin(), ai.end(), CanonicalLess{})) return false;
  return alpha.outputs().is_subset_of(omega.outputs());
}

/// Length of the longest ascending chain alpha ⊏ ... within the task set.
inline std::size_t task_level(const VTask& alpha, std::span<const VTask> universe_tasks) {
  std::vector<const VTask*> nodes;
  std::size_t start = universe_tasks.size();
  for (std::size_t i = 0; i < universe_tasks.size(); ++i) {
    nodes.push_back(&universe_tasks[i]);
    if (start == universe_tasks.size() && universe_tasks[i] == alpha) start = i;
  }
  if (start == universe_tasks.size()) nodes.push_back(&alpha);
  std::vector<std::optional<std::size_t>> memo(nodes.size());
  std::function<std::size_t(std::size_t)> level = [&](std::size_t n) -> std::size_t {
    if (memo[n]) return *memo[n];
    std::size_t best = 0;
    for (std::size_t p = 0; p < nodes.size(); ++p)
      if (p != n && is_child(*nodes[n], *nodes[p])) best = std::max(best, 1 + level(p));
    memo[n] = best;
    return best;
  };
  return level(start);
}

/// The highest-level task whose correct outputs are exactly E_h: inputs are
/// every universe statement with a completion in E_h.
inline VTask policy_task(Policy h, const LanguagePtr& language) {
  const auto& lang = *language;
  IndexSet eh = lang.extension(h.statement);
  require(!eh.empty(), ErrorKind::kEmptyExtension,
          "policy " + lang.format(h.statement) + " has an empty extension");
  std::vector<Statement> inputs;
  for (auto u : lang.universe())
    if (lang.extension(u).intersects(eh)) inputs.push_back(u);
  return VTask::unchecked(language, std::move(inputs), std::move(eh));
}

/// Chooses one output from a nonempty canonical-ordered candidate list.
using Selector = std::function<std::size_t(std::span<const Statement>)>;

inline Selector canonical_first() {
  return [](std::span<const Statement>) { return std::size_t{0}; };
}

/// The option with the fewest programs, canonical-first among equals. For a
/// derived language this is i ∪ π whenever that union is a statement.
inline Selector fewest_programs_first() {
  return [](std::span<const Statement> c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i].size() < c[best].size()) best = i;
    return best;
  };
}

/// Uniform choice driven by its own seeded stream.
inline Selector seeded_selector(std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](std::span<const Statement> c) {
    return static_cast<std::size_t>(rng->uniform(c.size()));
  };
}

struct Inference {
  Statement output;
  bool correct = false;
};

/// Selects an output from E_input ∩ E_policy and grades it against O.
inline Inference infer(Policy policy, Statement input, const VTask& task,
                       const Selector& selector = canonical_first()) {
  const auto& lang = task.language();
  require(task.has_input(input), ErrorKind::kPrecondition,
          "input " + lang.format(input) + " is not an input of the task");
  auto options = lang.members(lang.extension(input) & lang.extension(policy.statement));
  require(!options.empty(), ErrorKind::kNoOutput,
          "policy " + lang.format(policy.statement) + " admits no completion of " +
              lang.format(input));
  const std::size_t pick = selector(options);
  require(pick < options.size(), ErrorKind::kOutOfRange, "selector chose outside the options");
  const Statement out = options[pick];
  return Inference{out, task.outputs().contains(*lang.index_of(out))};
}

}  // namespace enact
