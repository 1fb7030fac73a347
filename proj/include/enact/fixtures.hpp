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

#include <string>
#include <vector>

#include "enact/io.hpp"
#include "enact/learning.hpp"
#include "enact/tasks.hpp"

namespace enact {

/// Weakness and description length disagree on this task: the weakest
/// correct policy is {j,k}, the shortest is {z}.
inline const char* kProp3Fixture = R"json({
  "description": "Weakness and description length select different policies",
  "environment": {"states": 6},
  "programs": {
    "a": [0, 2, 4], "b": [0, 1, 3], "c": [0, 1, 2, 4], "d": [0, 1, 2, 3], "e": [1, 3, 5], "f": [2, 4, 5],
    "g": [3, 5], "h": [4, 5], "j": [0, 2, 3, 4, 5], "k": [0, 1, 3, 4, 5], "z": [0, 3]
  },
  "universe": [
    ["a", "b", "c", "d", "j", "k", "z"],
    ["e", "b", "c", "d", "k"],
    ["a", "f", "c", "d", "j"],
    ["e", "b", "g", "d", "j", "k", "z"],
    ["a", "f", "c", "h", "j", "k"],
    ["e", "f", "g", "h", "j", "k"]
  ],
  "policy_candidates": [["z"], ["j", "k"]],
  "tasks": [
    {"name": "alpha", "inputs": [["a", "b"], ["e", "b"]],
     "outputs": [["a", "b", "c", "d", "j", "k", "z"], ["e", "b", "g", "d", "j", "k", "z"]]}
  ]
})json";

struct FixtureCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

inline std::string format_policies(const Language& lang, const std::vector<Policy>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ",";
    s += lang.format(ps[i].statement);
  }
  return s + "}";
}

/// The four facts of the counterexample, evaluated on `doc` (normally the
/// built-in fixture; a tampered copy shows which fact breaks).
inline std::vector<FixtureCheck> prop3_checks(const Document& doc) {
  const auto* alpha = doc.task("alpha");
  require(alpha != nullptr, ErrorKind::kInvalidArgument, "fixture has no task 'alpha'");
  const Language& lang = *doc.language;
  const auto& vocab = lang.vocabulary();
  std::vector<FixtureCheck> out;
  auto check = [&](std::string name, std::string expected, std::string actual) {
    const bool pass = expected == actual;
    out.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };
  const Statement z = parse_statement(Json::array({"z"}), vocab);
  const Statement jk = parse_statement(Json::array({"j", "k"}), vocab);
  std::vector<Statement> want{z, jk};
  sort_canonical(want);
  const auto pi = policies(*alpha);
  check("policies", format_policies(lang, {Policy{want[0]}, Policy{want[1]}}), format_policies(lang, pi));
  auto choice = [&](const Proxy& p) {
    if (pi.empty()) return std::string("none");
    return lang.format(learn(*alpha, p).chosen.statement);
  };
  check("weakness_choice", "{j,k}", choice(weakness()));
  check("description_length_choice", "{z}", choice(description_length()));
  check("|E_{z}|", "2", std::to_string(lang.extension(z).count()));
  check("|E_{j,k}|", "4", std::to_string(lang.extension(jk).count()));
  return out;
}

}  // namespace enact
