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


#include <gtest/gtest.h>

#include "enact/causality.hpp"
#include "enact/scenario.hpp"
#include "support.hpp"

namespace enact {
namespace {

// p1..p5 all hold at state 0, so every program subset is a statement.
LanguagePtr five_programs() {
  return share(Language::derive(testing::vocabulary_of({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}, 6)));
}

Statement p(std::initializer_list<std::size_t> one_based) {
  Statement s;
  for (auto i : one_based) s = s | Statement{std::uint32_t{1} << (i - 1)};
  return s;
}

TEST(InterventionRecord, RejectsSharedStatements) {
  EXPECT_THROW(InterventionRecord(five_programs(), {p({1, 2})}, {p({1, 2})}), Error);
}

TEST(CausalIdentities, DistinguishingProgram) {
  InterventionRecord r(five_programs(), {p({1, 2, 3}), p({1, 2, 4})}, {p({2, 3}), p({2, 4})});
  EXPECT_EQ(causal_identities(r), std::vector<Statement>{p({1})});
  EXPECT_EQ(canonical_causal_identity(r), p({1}));
  EXPECT_EQ(ascribe_intent(r), p({1}));
}

TEST(CausalIdentities, NothingDistinguishes) {
  InterventionRecord r(five_programs(), {p({1, 2})}, {p({1}), p({2})});
  EXPECT_TRUE(causal_identities(r).empty());
  EXPECT_FALSE(canonical_causal_identity(r).has_value());
  EXPECT_FALSE(ascribe_intent(r).has_value());
}

TEST(CausalIdentities, MarkerOnTopOfObservation) {
  // int = obs plus the marker.
  InterventionRecord r(five_programs(), {p({1, 2, 5})}, {p({1, 2})});
  EXPECT_EQ(causal_identities(r), std::vector<Statement>{p({5})});
}

TEST(CausalIdentities, CanonicalIsMaximal) {
  InterventionRecord r(five_programs(), {p({1, 2, 5}), p({1, 3, 5})}, {p({2, 3})});
  EXPECT_EQ(causal_identities(r), (std::vector<Statement>{p({1}), p({1, 5}), p({5})}));
  EXPECT_EQ(canonical_causal_identity(r), p({1, 5}));
}

TEST(CausalIdentities, FullInterventionIsNotAnIdentity) {
  InterventionRecord r(five_programs(), {p({1, 2})}, {});
  EXPECT_EQ(causal_identities(r), (std::vector<Statement>{p({1}), p({2})}));
  EXPECT_FALSE(canonical_causal_identity(r).has_value());
}

TEST(CausalIdentities, RequiresInterventions) {
  InterventionRecord r(five_programs(), {}, {p({1})});
  EXPECT_THROW(causal_identities(r), Error);
}

// Every INT/OBS split of a small statement list, as (ints, obs).
template <class F>
void for_each_split(const std::vector<Statement>& pool, F&& f) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < pool.size(); ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Statement> ints, obs;
    std::size_t c = code;
    for (auto s : pool) {
      if (c % 3 == 1) ints.push_back(s);
      if (c % 3 == 2) obs.push_back(s);
      c /= 3;
    }
    f(ints, obs);
  }
}

TEST(Properties, MatchesPowersetOracle) {
  auto lang = five_programs();
  const std::vector<Statement> pool{p({1, 2, 3}), p({1, 2}), p({2, 4}), p({1, 3, 5}), p({3, 4, 5}), p({5})};
  for_each_split(pool, [&](const std::vector<Statement>& ints, const std::vector<Statement>& obs) {
    if (ints.empty()) return;
    InterventionRecord r(lang, ints, obs);
    auto got = causal_identities(r);
    std::vector<oracle::Stmt> want = oracle::identities(5, testing::to_oracle(ints), testing::to_oracle(obs));
    std::vector<oracle::Stmt> have;
    for (auto c : got) {
      EXPECT_TRUE(satisfies_identity_constraints(c, r));
      have.push_back(testing::to_oracle(c));
    }
    std::sort(have.begin(), have.end());
    EXPECT_EQ(have, want);
  });
}

TEST(Properties, DownwardCompleteAndShrinkingUnderExtension) {
  auto lang = five_programs();
  const std::vector<Statement> pool{p({1, 2, 3, 4}), p({1, 2, 3, 5}), p({2}), p({4, 5}), p({1, 2, 4, 5})};
  for_each_split(pool, [&](const std::vector<Statement>& ints, const std::vector<Statement>& obs) {
    if (ints.empty()) return;
    InterventionRecord r(lang, ints, obs);
    const auto got = causal_identities(r);
    if (auto top = canonical_causal_identity(r)) {
      for (std::uint32_t s = top->bits; s != 0; s = (s - 1) & top->bits) {
        if (!satisfies_identity_constraints(Statement{s}, r)) continue;
        EXPECT_TRUE(std::find(got.begin(), got.end(), Statement{s}) != got.end());
      }
    }
    auto more_obs = obs;
    more_obs.push_back(p({3}));
    if (std::find(ints.begin(), ints.end(), p({3})) == ints.end() &&
        std::find(obs.begin(), obs.end(), p({3})) == obs.end()) {
      auto fewer = causal_identities(InterventionRecord(lang, ints, more_obs));
      for (auto c : fewer) EXPECT_TRUE(std::find(got.begin(), got.end(), c) != got.end());
    }
    auto more_ints = ints;
    more_ints.push_back(p({1, 2, 3, 4, 5}));
    if (std::find(obs.begin(), obs.end(), p({1, 2, 3, 4, 5})) == obs.end()) {
      auto fewer = causal_identities(InterventionRecord(lang, more_ints, obs));
      for (auto c : fewer) EXPECT_TRUE(std::find(got.begin(), got.end(), c) != got.end());
    }
  });
}

TEST(Preconditions, ScaleAndIncentive) {
  auto lang = five_programs();
  Organism o;
  o.id = "o";
  o.language = lang;
  o.vocabulary = p({1, 2, 3}).bits;
  auto outside = check_preconditions(p({4}), o, true);
  EXPECT_FALSE(outside.scale);
  EXPECT_TRUE(outside.incentive);
  EXPECT_FALSE(outside.met());
  EXPECT_TRUE(check_preconditions(p({1, 2}), o, true).met());
  EXPECT_FALSE(check_preconditions(p({1, 2}), o, false).met());
}

TEST(FirstOrderSelf, MarkerAndUniqueness) {
  auto lang = five_programs();
  Organism o;
  o.id = "o";
  o.language = lang;
  o.vocabulary = lang->vocabulary().all_programs();
  SelfRegistry reg;
  auto self = first_order_self(o, {p({1, 5}), p({2, 5})}, {p({1}), p({2})}, &reg);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(self->identity, p({5}));
  EXPECT_EQ(self->order(), 1u);
  // The same record again is a no-op; a different self is rejected.
  EXPECT_NO_THROW(first_order_self(o, {p({1, 5}), p({2, 5})}, {p({1}), p({2})}, &reg));
  try {
    first_order_self(o, {p({1, 4}), p({2, 4})}, {p({1}), p({2})}, &reg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDuplicateSelf);
  }
  EXPECT_FALSE(first_order_self(o, {p({1})}, {p({1, 2})}).has_value());
  EXPECT_FALSE(first_order_self(o, {}, {}).has_value());
}

TEST(SelfModel, OrderFromChain) {
  EXPECT_EQ((SelfModel{"a", {"a"}, {}, {}}).order(), 1u);
  EXPECT_EQ((SelfModel{"a", {"b", "a"}, {}, {}}).order(), 2u);
  EXPECT_EQ((SelfModel{"a", {"b", "a", "b", "a"}, {}, {}}).order(), 3u);
  EXPECT_EQ((SelfModel{"a", {"b"}, {}, {}}).order(), 0u);
  EXPECT_TRUE(well_formed_self_chain("a", {"b", "a", "c", "a"}));
  EXPECT_FALSE(well_formed_self_chain("a", {"a", "b"}));
  EXPECT_FALSE(well_formed_self_chain("a", {"b", "a", "b"}));
}

TEST(SelfRegistry, RejectsUnnestedHigherOrderSelf) {
  SelfRegistry reg;
  EXPECT_THROW(reg.add(SelfModel{"a", {"b", "a"}, p({1, 2}), p({1})}), Error);
  EXPECT_NO_THROW(reg.add(SelfModel{"a", {"b", "a"}, p({1}), p({1, 2})}));
}

ScenarioResult run_builtin(const std::string& name) {
  return run_scenario(load_document(builtin_scenario(name)), 0, std::nullopt);
}

TEST(NthOrderSelf, SingleChainEqualsFirstOrderSelf) {
  auto r = run_builtin("gricean");
  auto direct = nth_order_self("a", {"a"}, r.world);
  const auto* registered = r.world.registry.find("a", {"a"});
  ASSERT_TRUE(direct.has_value());
  ASSERT_NE(registered, nullptr);
  EXPECT_EQ(direct->identity, registered->identity);
}

TEST(NthOrderSelf, SecondOrderNestsInFirstOrderCarrier) {
  auto r = run_builtin("gricean");
  for (const std::string who : {"a", "b"}) {
    const std::string other = who == "a" ? "b" : "a";
    auto second = nth_order_self(who, {other, who}, r.world);
    ASSERT_TRUE(second.has_value()) << who;
    EXPECT_EQ(second->order(), 2u);
    EXPECT_TRUE(second->identity.is_subset_of(second->carrier));
  }
}

TEST(NthOrderSelf, DepthAndShapeErrors) {
  auto r = run_builtin("gricean");
  r.world.max_depth = 3;
  try {
    nth_order_self("a", {"b", "a", "b", "a"}, r.world);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDepthExceeded);
  }
  EXPECT_THROW(nth_order_self("a", {"a", "b"}, r.world), Error);
  try {
    nth_order_self("nobody", {"nobody"}, r.world);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownOrganism);
  }
  EXPECT_FALSE(nth_order_self("a", {"b", "a"}, r.world, false).has_value());
}

TEST(ConstructModel, RaincoatBobTellsLarryFromHimself) {
  auto r = run_builtin("raincoat");
  const auto* self = r.world.registry.find("bob", {"bob"});
  const auto* larry = r.world.registry.find("bob", {"larry"});
  ASSERT_NE(self, nullptr);
  ASSERT_NE(larry, nullptr);
  const auto& lang = *r.world.language;
  EXPECT_EQ(lang.format(self->identity), "{b_wish,b_int}");
  EXPECT_EQ(lang.format(larry->identity), "{l_int}");
  EXPECT_TRUE((self->identity & larry->identity).empty());
}

TEST(UnionOfSelves, KeepsConstraints) {
  auto lang = five_programs();
  InterventionRecord r(lang, {p({1, 2, 3}), p({1, 2, 4})}, {});
  SelfModel a{"o", {"o"}, p({1}), p({1, 2, 3, 4})};
  SelfModel b{"o", {"o"}, p({2}), p({1, 2, 3, 4})};
  EXPECT_EQ(union_of_selves(a, b, r).identity, p({1, 2}));
  InterventionRecord tight(lang, {p({1, 2})}, {});
  EXPECT_THROW(union_of_selves(a, b, tight), Error);
}

}  // namespace
}  // namespace enact
