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
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "enact/formalism.hpp"
#include "enact/rng.hpp"
#include "enact/tasks.hpp"

namespace enact {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

enum class ProxyKind { kWeakness, kDescriptionLength, kCustom };

/// A scoring rule over statements; higher scores are preferred.
struct Proxy {
  std::string name;
  ProxyKind kind = ProxyKind::kCustom;
  std::function<std::int64_t(Statement, const Language&)> score;
};

/// |E_l|.
inline Proxy weakness() {
  return Proxy{"weakness", ProxyKind::kWeakness, [](Statement l, const Language& lang) {
                 return static_cast<std::int64_t>(lang.extension(l).count());
               }};
}

/// −|l|, so maximising it minimises description length.
inline Proxy description_length() {
  return Proxy{"description_length", ProxyKind::kDescriptionLength,
               [](Statement l, const Language&) { return -static_cast<std::int64_t>(l.size()); }};
}

inline Proxy custom_proxy(std::string name, std::function<std::int64_t(Statement, const Language&)> f) {
  return Proxy{std::move(name), ProxyKind::kCustom, std::move(f)};
}

inline Proxy proxy_by_name(const std::string& name) {
  if (name == "weakness") return weakness();
  if (name == "description_length" || name == "mdl") return description_length();
  fail(ErrorKind::kInvalidArgument, "unknown proxy '" + name + "'");
}

struct LearnResult {
  Policy chosen;
  std::vector<Policy> all_maximal;
};

/// Argmax of the proxy over Π_task; ties go to the canonically first policy.
inline LearnResult learn(const VTask& task, const Proxy& proxy) {
  auto pi = policies(task);
  require(!pi.empty(), ErrorKind::kNoCorrectPolicy, "task " + task.format() + " has no correct policy");
  LearnResult r;
  std::int64_t best = 0;
  for (const auto& p : pi) {
    const auto s = proxy.score(p.statement, task.language());
    if (r.all_maximal.empty() || s > best) {
      best = s;
      r.all_maximal.assign(1, p);
    } else if (s == best) {
      r.all_maximal.push_back(p);
    }
  }
  r.chosen = r.all_maximal.front();
  return r;
}

/// Closed form 2^{|Ē ∩ E_h|} / 2^{|Ē|} with Ē the universe outside E_{I_α}.
inline Rational generalization_probability(Policy h, const VTask& alpha) {
  require(is_correct_policy(h.statement, alpha), ErrorKind::kPrecondition,
          "policy " + alpha.language().format(h.statement) + " is not correct for " + alpha.format());
  const auto& lang = alpha.language();
  IndexSet outside = IndexSet::full(lang.size()) - alpha.input_extension();
  const std::size_t overlap = outside.intersection_count(lang.extension(h.statement));
  const std::size_t total = outside.count();
  BigInt den = 1;
  den <<= static_cast<unsigned>(total - overlap);
  return Rational(BigInt(1), den);
}

/// False whenever h is too strong to cover O_ω; otherwise whether h ∈ Π_ω.
inline bool necessity_check(Policy h, const VTask& omega) {
  const auto& lang = omega.language();
  if (lang.extension(h.statement).count() < omega.outputs().count()) return false;
  return is_correct_policy(h.statement, omega);
}

struct ExhaustiveOptions {
  /// Largest universe whose input subsets may be enumerated (2^n subsets).
  std::size_t max_universe = 22;
};

/// For each policy l, the number of valid tasks α (under the uniform task
/// convention) with l ∈ Π_α. For a fixed I the correct outputs O = E_I ∩ E_l
/// are forced, so enumerating every admissible I counts every task exactly
/// once.
inline std::vector<std::uint64_t> count_generalizing_tasks(const Language& lang,
                                                           std::span<const Statement> policy_universe,
                                                           const ExhaustiveOptions& opt = {}) {
  const std::size_t n = lang.size();
  require(n <= opt.max_universe && n < 64, ErrorKind::kBudgetExceeded,
          "exhaustive task enumeration over " + std::to_string(n) + " statements exceeds the limit of " +
              std::to_string(opt.max_universe));
  std::vector<std::uint64_t> ext(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto e = lang.extension(lang.at(i));
    e.for_each([&](std::size_t j) { ext[i] |= std::uint64_t{1} << j; });
  }
  std::vector<std::uint64_t> pext(policy_universe.size());
  for (std::size_t p = 0; p < policy_universe.size(); ++p) {
    auto e = lang.extension(policy_universe[p]);
    e.for_each([&](std::size_t j) { pext[p] |= std::uint64_t{1} << j; });
  }
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const bool strict_inputs = lang.kind() == LanguageKind::kDerived;
  std::vector<std::uint64_t> input_ext(subsets, 0);
  std::vector<std::uint64_t> counts(policy_universe.size(), 0);
  for (std::uint64_t s = 1; s < subsets; ++s) {
    input_ext[s] = input_ext[s & (s - 1)] | ext[static_cast<std::size_t>(std::countr_zero(s))];
    if (strict_inputs && s == subsets - 1) continue;
    const std::uint64_t ei = input_ext[s];
    for (std::size_t p = 0; p < pext.size(); ++p) {
      const std::uint64_t o = ei & pext[p];
      if (o != 0 && o != ei) ++counts[p];
    }
  }
  return counts;
}

/// Σ over ordered pairs of distinct policies of |g − a| − |g − b|, where
/// g(l1,l2) says l1 generalises to strictly fewer tasks than l2 and a, b are
/// the strict-comparison indicators of the two proxies. Negative means
/// proxy_a is the more sample-efficient.
inline std::int64_t sample_efficiency(const Proxy& proxy_a, const Proxy& proxy_b,
                                      const Language& language,
                                      std::span<const Statement> policy_universe,
                                      const ExhaustiveOptions& opt = {}) {
  auto counts = count_generalizing_tasks(language, policy_universe, opt);
  std::vector<std::int64_t> sa, sb;
  for (auto p : policy_universe) {
    sa.push_back(proxy_a.score(p, language));
    sb.push_back(proxy_b.score(p, language));
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < policy_universe.size(); ++i)
    for (std::size_t j = 0; j < policy_universe.size(); ++j) {
      if (i == j) continue;
      const int g = counts[i] < counts[j];
      const int a = sa[i] < sa[j];
      const int b = sb[i] < sb[j];
      sum += std::abs(g - a) - std::abs(g - b);
    }
  return sum;
}

inline std::int64_t sample_efficiency(const Proxy& proxy_a, const Proxy& proxy_b,
                                      const Language& language, const ExhaustiveOptions& opt = {}) {
  return sample_efficiency(proxy_a, proxy_b, language, language.candidates(), opt);
}

// ---------------------------------------------------------------------------
// Monte-Carlo generalisation harness.

struct GeneralizationReport {
  std::string proxy_name;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  Rational rate;
  std::uint64_t seed = 0;
  /// Trials where the proxy's argmax over Π_α was not unique.
  std::uint64_t ties = 0;
  /// Trials counted as a generalisation by a policy with |E_h| < |O_ω|.
  /// Always zero; kept as an audited counter.
  std::uint64_t necessity_violations = 0;
  std::uint64_t parent_draws = 0;
  std::uint64_t child_draws = 0;
  std::uint64_t max_attempts = 0;
};

struct MonteCarloOptions {
  /// Rejection-sampling attempts allowed per trial before giving up.
  std::uint64_t max_attempts = 1'000'000;
};

struct MonteCarloResult {
  std::vector<GeneralizationReport> reports;
  /// outcomes[p][t]: proxy p generalised on trial t.
  std::vector<std::vector<bool>> outcomes;
};

namespace detail {

using Mask = unsigned __int128;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
inline std::size_t popcount(Mask m) {
  return static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(m)) +
                                  std::popcount(static_cast<std::uint64_t>(m >> 64)));
}

inline Mask to_mask(const IndexSet& s) {
  Mask m = 0;
  s.for_each([&](std::size_t i) { m |= bit(i); });
  return m;
}

/// Uniform draw of a subset of `pool` (as a 128-bit mask over n positions).
inline Mask random_subset(Mask pool, Rng& rng) {
  Mask r = (Mask{rng.next()} << 64) | Mask{rng.next()};
  return r & pool;
}

struct McContext {
  std::size_t n = 0;
  Mask all = 0;
  bool strict_inputs = true;
  std::vector<Mask> ext;         // E_u for universe positions
  std::vector<Mask> cand_ext;    // E_π for policy candidates
  std::vector<std::size_t> cand_size;
};

inline Mask input_extension(const McContext& c, Mask inputs) {
  Mask e = 0;
  for (std::size_t i = 0; i < c.n; ++i)
    if ((inputs >> i) & 1) e |= c.ext[i];
  return e;
}

/// Distinct valid correct-output sets realisable by some candidate policy
/// for inputs with extension `ei`, optionally confined to `within`.
inline void realisable_outputs(const McContext& c, Mask ei, Mask within, std::vector<Mask>& out) {
  out.clear();
  for (auto pe : c.cand_ext) {
    const Mask o = ei & pe;
    if (o == 0 || o == ei || (o & ~within) != 0) continue;
    if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
  }
}

}  // namespace detail

/// Per trial: draw a parent ω uniformly among valid tasks that have a correct
/// policy, draw a child α ⊏ ω uniformly among valid children that have a
/// correct policy, learn from α with each proxy and record whether the
/// chosen policy is correct for ω. Each trial uses its own random stream
/// derived from (seed, trial index).
inline MonteCarloResult monte_carlo_generalization(const Language& language,
                                                   std::span<const Proxy> proxies,
                                                   std::uint64_t trials, std::uint64_t seed,
                                                   const MonteCarloOptions& opt = {}) {
  using detail::Mask;
  require(trials >= 1, ErrorKind::kPrecondition, "trials must be at least 1");
  require(!proxies.empty(), ErrorKind::kPrecondition, "no proxies given");
  require(language.size() <= 128, ErrorKind::kBudgetExceeded,
          "Monte-Carlo sampling supports universes of at most 128 statements; got " +
              std::to_string(language.size()));

  detail::McContext c;
  c.n = language.size();
  c.all = c.n == 128 ? ~Mask{0} : (Mask{1} << c.n) - 1;
  c.strict_inputs = language.kind() == LanguageKind::kDerived;
  for (std::size_t i = 0; i < c.n; ++i) c.ext.push_back(detail::to_mask(language.extension(language.at(i))));
  auto cands = language.candidates();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    c.cand_ext.push_back(detail::to_mask(language.candidate_extension(i)));
    c.cand_size.push_back(detail::popcount(c.cand_ext.back()));
  }
  std::vector<std::vector<std::int64_t>> scores(proxies.size());
  for (std::size_t p = 0; p < proxies.size(); ++p)
    for (auto s : cands) scores[p].push_back(proxies[p].score(s, language));

  MonteCarloResult result;
  result.reports.resize(proxies.size());
  result.outcomes.assign(proxies.size(), std::vector<bool>(trials, false));
  const auto k_cand = static_cast<std::uint64_t>(cands.size());
  std::uint64_t parent_draws = 0, child_draws = 0;
  std::vector<Mask> options;

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::uint64_t attempts = 0;
    Mask parent_in = 0, parent_ext = 0, parent_out = 0, child_in = 0, child_ext = 0, child_out = 0;
    bool have_child = false;
    while (!have_child) {
      // Parent: inputs uniform, accepted with probability proportional to
      // the number of distinct realisable output sets.
      for (;;) {
        require(++attempts <= opt.max_attempts, ErrorKind::kSamplingExhausted,
                "no valid parent/child pair found within " + std::to_string(opt.max_attempts) +
                    " attempts");
        ++parent_draws;
        parent_in = detail::random_subset(c.all, rng);
        if (parent_in == 0 || (c.strict_inputs && parent_in == c.all)) continue;
        if (detail::popcount(parent_in) < 2) continue;  // no strict nonempty child inputs
        parent_ext = detail::input_extension(c, parent_in);
        detail::realisable_outputs(c, parent_ext, ~Mask{0}, options);
        if (options.empty() || !rng.bernoulli(options.size(), k_cand)) continue;
        parent_out = options[rng.uniform(options.size())];
        break;
      }
      // Child: up to 256 draws for this parent, then a fresh parent. Parents
      // whose valid children are rare are slightly under-represented.
      for (int tries = 0; tries < 256 && !have_child; ++tries) {
        require(++attempts <= opt.max_attempts, ErrorKind::kSamplingExhausted,
                "no valid parent/child pair found within " + std::to_string(opt.max_attempts) +
                    " attempts");
        ++child_draws;
        child_in = detail::random_subset(parent_in, rng);
        if (child_in == 0 || child_in == parent_in) continue;
        child_ext = detail::input_extension(c, child_in);
        detail::realisable_outputs(c, child_ext, parent_out, options);
        if (options.empty() || !rng.bernoulli(options.size(), k_cand)) continue;
        child_out = options[rng.uniform(options.size())];
        have_child = true;
      }
    }

    for (std::size_t p = 0; p < proxies.size(); ++p) {
      std::size_t chosen = cands.size();
      std::size_t n_max = 0;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if ((child_ext & c.cand_ext[i]) != child_out) continue;
        if (chosen == cands.size() || scores[p][i] > scores[p][chosen]) {
          chosen = i;
          n_max = 1;
        } else if (scores[p][i] == scores[p][chosen]) {
          ++n_max;
        }
      }
      auto& rep = result.reports[p];
      if (n_max > 1) ++rep.ties;
      const bool ok = (parent_ext & c.cand_ext[chosen]) == parent_out;
      if (ok) {
        ++rep.successes;
        result.outcomes[p][t] = true;
        if (c.cand_size[chosen] < detail::popcount(parent_out)) ++rep.necessity_violations;
      }
    }
  }

  for (std::size_t p = 0; p < proxies.size(); ++p) {
    auto& rep = result.reports[p];
    rep.proxy_name = proxies[p].name;
    rep.trials = trials;
    rep.seed = seed;
    rep.rate = Rational(BigInt(rep.successes), BigInt(trials));
    rep.parent_draws = parent_draws;
    rep.child_draws = child_draws;
    rep.max_attempts = opt.max_attempts;
  }
  return result;
}

/// Per-trial difference a − b of two proxies run on the same trials.
struct PairedComparison {
  double mean_difference = 0;
  double standard_error = 0;
  /// False when a is worse than b by more than two standard errors.
  bool within_band = true;
};

inline PairedComparison compare_paired(const std::vector<bool>& a, const std::vector<bool>& b) {
  require(a.size() == b.size() && !a.empty(), ErrorKind::kPrecondition, "paired outcomes must align");
  const double n = static_cast<double>(a.size());
  double sum = 0, sum_sq = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double d = static_cast<double>(a[t]) - static_cast<double>(b[t]);
    sum += d;
    sum_sq += d * d;
  }
  PairedComparison r;
  r.mean_difference = sum / n;
  const double var = a.size() > 1 ? (sum_sq - n * r.mean_difference * r.mean_difference) / (n - 1) : 0.0;
  r.standard_error = std::sqrt(std::max(var, 0.0) / n);
  r.within_band = r.mean_difference >= -2.0 * r.standard_error;
  return r;
}

/// Random vocabulary of `programs` distinct nonempty programs over
/// `states` states.
inline Vocabulary random_vocabulary(std::size_t programs, std::size_t states, Rng& rng,
                                    const Caps& caps = {}) {
  Environment env(states, caps);
  std::vector<Program> progs;
  while (progs.size() < programs) {
    Program p{rng.next() & env.all_states()};
    if (p.states == 0) continue;
    if (std::find(progs.begin(), progs.end(), p) != progs.end()) continue;
    progs.push_back(p);
  }
  return Vocabulary(env, std::move(progs), {}, caps);
}

}  // namespace enact
