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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enact/bits.hpp"
#include "enact/error.hpp"

namespace enact {

/// Hard widths of the bit-set encodings. Configurable caps may be lowered
/// below these but never raised above them.
inline constexpr std::size_t kStateWordBits = 64;
inline constexpr std::size_t kProgramWordBits = 32;

/// Limits that guard exponential enumeration. Exceeding any of them is an
/// error, never a silent truncation.
struct Caps {
  std::size_t max_states = 64;
  std::size_t max_programs = 24;
  /// Upper bound on the number of candidate subsets a derived language may
  /// enumerate (2^|vocabulary| - 1).
  std::size_t statement_budget = std::size_t{1} << 20;
};

class Environment {
 public:
  explicit Environment(std::size_t state_count, const Caps& caps = {})
      : state_count_(state_count) {
    require(state_count >= 1, ErrorKind::kInvalidArgument,
            "environment needs at least one state");
    require(state_count <= std::min(caps.max_states, kStateWordBits), ErrorKind::kCapExceeded,
            "environment has " + std::to_string(state_count) + " states; cap is " +
                std::to_string(std::min(caps.max_states, kStateWordBits)));
  }

  std::size_t state_count() const { return state_count_; }
  std::uint64_t all_states() const {
    return state_count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << state_count_) - 1;
  }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::size_t state_count_;
};

/// A declarative program: the set of states at which it holds.
struct Program {
  std::uint64_t states = 0;

  bool contains(std::size_t state) const { return ((states >> state) & 1u) != 0; }
  friend bool operator==(const Program&, const Program&) = default;
};

/// A set of vocabulary programs, encoded by program index.
struct Statement {
  std::uint32_t bits = 0;

  static Statement of(std::initializer_list<std::size_t> indices) {
    Statement s;
    for (auto i : indices) s.bits |= std::uint32_t{1} << i;
    return s;
  }

  bool empty() const { return bits == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits)); }
  bool has(std::size_t program) const { return ((bits >> program) & 1u) != 0; }
  bool is_subset_of(Statement o) const { return (bits & ~o.bits) == 0; }
  bool is_proper_subset_of(Statement o) const { return is_subset_of(o) && bits != o.bits; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits; b != 0; b &= b - 1)
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend Statement operator|(Statement a, Statement b) { return {a.bits | b.bits}; }
  friend Statement operator&(Statement a, Statement b) { return {a.bits & b.bits}; }
  friend Statement operator-(Statement a, Statement b) { return {a.bits & ~b.bits}; }
  friend bool operator==(const Statement&, const Statement&) = default;
};

/// Canonical order: lexicographic on the ascending list of program indices,
/// so {0} < {0,1} < {0,1,2} < {0,2} < {1}.
inline bool canonical_less(Statement a, Statement b) {
  if (a.bits == b.bits) return false;
  const std::uint32_t diff = a.bits ^ b.bits;
  const int k = std::countr_zero(diff);
  // Both share every index below k. Whoever owns k continues with k; the
  // other either stops (and is a prefix, hence smaller) or continues with
  // something larger than k.
  if ((a.bits >> k) & 1u) return (b.bits >> k) != 0;
  return (a.bits >> k) == 0;
}

struct CanonicalLess {
  bool operator()(Statement a, Statement b) const { return canonical_less(a, b); }
};

inline void sort_canonical(std::vector<Statement>& v) {
  std::sort(v.begin(), v.end(), CanonicalLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

class Vocabulary {
 public:
  Vocabulary(Environment environment, std::vector<Program> programs,
             std::vector<std::string> names = {}, const Caps& caps = {})
      : environment_(environment), programs_(std::move(programs)), names_(std::move(names)) {
    require(!programs_.empty(), ErrorKind::kInvalidArgument, "vocabulary is empty");
    const std::size_t cap = std::min(caps.max_programs, kProgramWordBits);
    require(programs_.size() <= cap, ErrorKind::kCapExceeded,
            "vocabulary has " + std::to_string(programs_.size()) + " programs; cap is " +
                std::to_string(cap));
    if (names_.empty()) {
      for (std::size_t i = 0; i < programs_.size(); ++i) names_.push_back("f" + std::to_string(i + 1));
    }
    require(names_.size() == programs_.size(), ErrorKind::kInvalidArgument,
            "program name count does not match program count");
    for (std::size_t i = 0; i < programs_.size(); ++i) {
      require((programs_[i].states & ~environment_.all_states()) == 0, ErrorKind::kOutOfRange,
              "program '" + names_[i] + "' names a state outside the environment");
      for (std::size_t j = 0; j < i; ++j) {
        require(!(programs_[i] == programs_[j]), ErrorKind::kInvalidArgument,
                "programs '" + names_[j] + "' and '" + names_[i] + "' hold at the same states");
        require(names_[i] != names_[j], ErrorKind::kInvalidArgument,
                "duplicate program name '" + names_[i] + "'");
      }
    }
  }

  const Environment& environment() const { return environment_; }
  std::size_t size() const { return programs_.size(); }
  const Program& program(std::size_t i) const { return programs_.at(i); }
  std::span<const Program> programs() const { return programs_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::span<const std::string> names() const { return names_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  std::uint32_t all_programs() const {
    return programs_.size() == 32 ? ~std::uint32_t{0}
                                  : (std::uint32_t{1} << programs_.size()) - 1;
  }

  /// States at which every member program holds. All states for the empty
  /// statement, which no language ever admits.
  std::uint64_t meet(Statement s) const {
    std::uint64_t m = environment_.all_states();
    for (auto i : s.indices()) m &= programs_[i].states;
    return m;
  }

  std::string format(Statement s) const {
    std::string out = "{";
    bool first = true;
    for (auto i : s.indices()) {
      if (!first) out += ",";
      out += names_[i];
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.environment_ == b.environment_ && a.programs_ == b.programs_;
  }

 private:
  Environment environment_;
  std::vector<Program> programs_;
  std::vector<std::string> names_;
};

enum class LanguageKind { kDerived, kExplicit };

/// The universe of admissible statements over a vocabulary, kept in
/// canonical order. Extensions are bit sets over universe positions.
///
/// Explicit languages may additionally name the statements that are eligible
/// as policies; by default the policy candidates are the universe itself.
class Language {
 public:
  /// Every nonempty subset of the vocabulary whose programs share a state.
  static Language derive(const Vocabulary& vocabulary, const Caps& caps = {}) {
    const std::size_t n = vocabulary.size();
    const std::size_t subsets = (n >= 63) ? ~std::size_t{0} : (std::size_t{1} << n) - 1;
    require(subsets <= caps.statement_budget, ErrorKind::kCapExceeded,
            "deriving a language over " + std::to_string(n) + " programs enumerates " +
                std::to_string(subsets) + " subsets; statement budget is " +
                std::to_string(caps.statement_budget));
    std::vector<Statement> universe;
    const auto& progs = vocabulary.programs();
    // meet[s] = meet[s without lowest bit] & program(lowest bit)
    std::vector<std::uint64_t> meet(std::size_t{1} << n);
    meet[0] = vocabulary.environment().all_states();
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
      const int low = std::countr_zero(s);
      meet[s] = meet[s & (s - 1)] & progs[static_cast<std::size_t>(low)].states;
      if (meet[s] != 0) universe.push_back(Statement{s});
    }
    return Language(vocabulary, std::move(universe), std::nullopt, LanguageKind::kDerived);
  }

  /// A literally supplied universe. Statements must be nonempty, valid and
  /// distinct; they are stored in canonical order.
  static Language explicit_universe(const Vocabulary& vocabulary, std::vector<Statement> universe,
                                    std::optional<std::vector<Statement>> candidates = std::nullopt) {
    require(!universe.empty(), ErrorKind::kInvalidArgument, "explicit universe is empty");
    auto check = [&](const std::vector<Statement>& list, const char* what) {
      for (auto s : list) {
        require(!s.empty(), ErrorKind::kInvalidArgument,
                std::string("the empty statement cannot appear in ") + what);
        require((s.bits & ~vocabulary.all_programs()) == 0, ErrorKind::kOutOfRange,
                std::string(what) + " statement names a program outside the vocabulary");
      }
      std::vector<Statement> sorted = list;
      const std::size_t before = sorted.size();
      sort_canonical(sorted);
      require(sorted.size() == before, ErrorKind::kInvalidArgument,
              std::string(what) + " contains duplicate statements");
    };
    check(universe, "universe");
    if (candidates) check(*candidates, "policy candidates");
    return Language(vocabulary, std::move(universe), std::move(candidates), LanguageKind::kExplicit);
  }

  const Vocabulary& vocabulary() const { return vocabulary_; }
  LanguageKind kind() const { return kind_; }
  std::span<const Statement> universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  const Statement& at(std::size_t i) const { return universe_.at(i); }
  /// Statements scanned when computing correct policies.
  std::span<const Statement> candidates() const { return candidates_; }
  bool has_explicit_candidates() const { return explicit_candidates_; }

  /// Extension of the i-th policy candidate; cached for desk-scale languages.
  IndexSet candidate_extension(std::size_t i) const {
    if (!candidate_ext_.empty()) return candidate_ext_[i];
    return extension(candidates_.at(i));
  }

  std::optional<std::size_t> index_of(Statement s) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), s, CanonicalLess{});
    if (it == universe_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - universe_.begin());
  }
  bool contains(Statement s) const { return index_of(s).has_value(); }

  /// Throws unless `s` is a nonempty statement over this vocabulary.
  void validate(Statement s) const {
    require(!s.empty(), ErrorKind::kInvalidArgument, "empty statement");
    require((s.bits & ~vocabulary_.all_programs()) == 0, ErrorKind::kOutOfRange,
            "statement names a program outside the vocabulary");
  }

  /// E_x: every universe statement that is a superset of x.
  IndexSet extension(Statement x) const {
    validate(x);
    IndexSet out(universe_.size());
    for (std::size_t i = 0; i < universe_.size(); ++i)
      if (x.is_subset_of(universe_[i])) out.insert(i);
    return out;
  }

  /// E_X: union of member extensions.
  IndexSet extension_of(std::span<const Statement> xs) const {
    IndexSet out(universe_.size());
    for (auto x : xs) out |= extension(x);
    return out;
  }

  std::vector<Statement> members(const IndexSet& set) const {
    std::vector<Statement> out;
    set.for_each([&](std::size_t i) { out.push_back(universe_[i]); });
    return out;
  }

  IndexSet set_of(std::span<const Statement> statements) const {
    IndexSet out(universe_.size());
    for (auto s : statements) {
      auto idx = index_of(s);
      require(idx.has_value(), ErrorKind::kInvalidArgument,
              "statement " + vocabulary_.format(s) + " is not in the language");
      out.insert(*idx);
    }
    return out;
  }

  std::string format(Statement s) const { return vocabulary_.format(s); }

  /// Content hash over environment, programs, universe and candidates.
  std::uint64_t content_hash() const {
    Fnv1a h;
    h.update_u64(vocabulary_.environment().state_count());
    h.update_u64(vocabulary_.size());
    for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
      h.update_u64(vocabulary_.program(i).states);
      const auto& n = vocabulary_.name(i);
      h.update_u64(n.size());
      h.update(n.data(), n.size());
    }
    h.update_u64(kind_ == LanguageKind::kDerived ? 0 : 1);
    h.update_u64(universe_.size());
    for (auto s : universe_) h.update_u64(s.bits);
    h.update_u64(explicit_candidates_ ? candidates_.size() : 0);
    if (explicit_candidates_)
      for (auto s : candidates_) h.update_u64(s.bits);
    return h.digest();
  }

 private:
  Language(const Vocabulary& vocabulary, std::vector<Statement> universe,
           std::optional<std::vector<Statement>> candidates, LanguageKind kind)
      : vocabulary_(vocabulary), universe_(std::move(universe)), kind_(kind) {
    sort_canonical(universe_);
    if (candidates) {
      candidates_ = std::move(*candidates);
      sort_canonical(candidates_);
      explicit_candidates_ = true;
    } else {
      candidates_ = universe_;
    }
    if (candidates_.size() * universe_.size() <= (std::size_t{1} << 24)) {
      candidate_ext_.reserve(candidates_.size());
      for (auto c : candidates_) candidate_ext_.push_back(extension(c));
    }
  }

  Vocabulary vocabulary_;
  std::vector<Statement> universe_;
  std::vector<Statement> candidates_;
  std::vector<IndexSet> candidate_ext_;
  bool explicit_candidates_ = false;
  LanguageKind kind_;
};

using LanguagePtr = std::shared_ptr<const Language>;

inline LanguagePtr share(Language language) {
  return std::make_shared<const Language>(std::move(language));
}

inline Language derive_language(const Vocabulary& vocabulary, const Caps& caps = {}) {
  return Language::derive(vocabulary, caps);
}

/// True iff `state` lies in every program of `statement`.
inline bool is_true(Statement statement, std::size_t state, const Language& language) {
  language.validate(statement);
  const auto& env = language.vocabulary().environment();
  require(state < env.state_count(), ErrorKind::kOutOfRange,
          "state " + std::to_string(state) + " outside environment of " +
              std::to_string(env.state_count()) + " states");
  return ((language.vocabulary().meet(statement) >> state) & 1u) != 0;
}

inline std::vector<Statement> extension(Statement statement, const Language& language) {
  return language.members(language.extension(statement));
}

inline std::vector<Statement> extension_of_set(std::span<const Statement> statements,
                                               const Language& language) {
  return language.members(language.extension_of(statements));
}

inline bool equivalent(Statement x, Statement y, const Language& language) {
  return language.extension(x) == language.extension(y);
}

}  // namespace enact
