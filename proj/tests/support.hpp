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
#include "enact/rng.hpp"
#include "oracles.hpp"

namespace enact::testing {

inline Vocabulary vocabulary_of(const oracle::Programs& progs, int states) {
  std::vector<Program> ps;
  for (const auto& p : progs) {
    std::uint64_t m = 0;
    for (int s : p) m |= std::uint64_t{1} << s;
    ps.push_back(Program{m});
  }
  return Vocabulary(Environment(static_cast<std::size_t>(states)), std::move(ps), {});
}

inline oracle::Stmt to_oracle(Statement s) { return oracle::from_mask(s.bits); }
inline Statement from_oracle(const oracle::Stmt& s) { return Statement{oracle::to_mask(s)}; }

inline std::vector<Statement> from_oracle_all(const std::vector<oracle::Stmt>& ss) {
  std::vector<Statement> out;
  for (const auto& s : ss) out.push_back(from_oracle(s));
  return out;
}

inline std::vector<oracle::Stmt> to_oracle(std::span<const Statement> ss) {
  std::vector<oracle::Stmt> out;
  for (auto s : ss) out.push_back(to_oracle(s));
  return out;
}

inline oracle::Set positions(const IndexSet& s) {
  oracle::Set out;
  s.for_each([&](std::size_t i) { out.insert(static_cast<int>(i)); });
  return out;
}

inline IndexSet index_set(const oracle::Set& s, std::size_t n) {
  IndexSet out(n);
  for (int i : s) out.insert(static_cast<std::size_t>(i));
  return out;
}

/// Random programs: distinct, nonempty, over `states` states.
inline oracle::Programs random_programs(Rng& rng, int programs, int states) {
  oracle::Programs out;
  while (static_cast<int>(out.size()) < programs) {
    std::set<int> p;
    for (int s = 0; s < states; ++s)
      if (rng.coin()) p.insert(s);
    if (p.empty() || std::find(out.begin(), out.end(), p) != out.end()) continue;
    out.push_back(p);
  }
  return out;
}

/// Three overlapping programs over four states: {f1} {f1,f2} {f2} {f2,f3} {f3}.
inline oracle::Programs chain_programs() { return {{0, 1}, {1, 2}, {2, 3}}; }

}  // namespace enact::testing
