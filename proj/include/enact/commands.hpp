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

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "enact/fixtures.hpp"
#include "enact/io.hpp"
#include "enact/learning.hpp"
#include "enact/scenario.hpp"

namespace enact {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitBudget = 3 };

struct RunConfig {
  std::string command;
  /// File path, built-in scenario name or fixture name.
  std::string input;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  std::string format = "both";
  std::string out_dir;
  Caps caps;
  std::optional<std::size_t> max_steps;
};

struct CommandOutput {
  int exit_code = kExitOk;
  Json report;
  std::string csv;
  std::string trace;
};

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline Json config_echo(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["input"] = c.input;
  j["seed"] = c.seed;
  j["trials"] = c.trials ? Json(*c.trials) : Json(nullptr);
  j["format"] = c.format;
  j["max_states"] = c.caps.max_states;
  j["max_programs"] = c.caps.max_programs;
  j["max_steps"] = c.max_steps ? Json(*c.max_steps) : Json(nullptr);
  return j;
}

/// Digest of the hashed region, as written.
inline std::string hashed_digest(const Json& hashed) {
  const std::string text = hashed.dump();
  Fnv1a h;
  h.update(text.data(), text.size());
  return hex64(h.digest());
}

namespace detail {

struct Payload {
  Json result;
  std::optional<std::uint64_t> language_hash;
  bool failed = false;
  std::string csv;
  std::string trace;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline Json statements_json(const Language& lang, const std::vector<Statement>& ss) {
  Json a = Json::array();
  for (auto s : ss) a.push_back(lang.format(s));
  return a;
}

inline Json policies_json(const Language& lang, const std::vector<Policy>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(lang.format(p.statement));
  return a;
}

inline Payload cmd_validate(const RunConfig& cfg) {
  Payload p;
  std::vector<Violation> vs;
  Json entities = Json::object();
  try {
    const Json src = read_json_file(cfg.input);
    Document doc = load_document(src, cfg.caps);
    p.language_hash = doc.language->content_hash();
    vs = doc.violations;
    for (const auto& o : doc.organisms) {
      auto h = o.history_task();
      (void)h;
    }
    if (src.contains("scenario")) {
      try {
        (void)build_world(doc, cfg.seed);
      } catch (const Error& e) {
        vs.push_back({"scenario", std::string(to_string(e.kind())), e.what()});
      }
    }
    entities["language"] = {{"kind", doc.language->kind() == LanguageKind::kDerived ? "derived" : "explicit"},
                            {"statements", doc.language->size()},
                            {"programs", doc.language->vocabulary().size()}};
    entities["tasks"] = doc.tasks.size();
    entities["organisms"] = doc.organisms.size();
  } catch (const Error& e) {
    std::string where = "document";
    if (e.kind() == ErrorKind::kCapExceeded) where = "vocabulary";
    vs.push_back({where, std::string(to_string(e.kind())), e.what()});
  } catch (const nlohmann::json::exception& e) {
    vs.push_back({"document", "parse", e.what()});
  }
  Json list = Json::array();
  p.csv = "location,kind,message\n";
  for (const auto& v : vs) {
    list.push_back({{"location", v.location}, {"kind", v.kind}, {"message", v.message}});
    p.csv += csv_field(v.location) + "," + csv_field(v.kind) + "," + csv_field(v.message) + "\n";
  }
  p.result = {{"entities", entities}, {"violations", list}};
  p.failed = !vs.empty();
  return p;
}

inline Payload cmd_enumerate(const RunConfig& cfg) {
  Payload p;
  Document doc = load_document(read_json_file(cfg.input), cfg.caps);
  const Language& lang = *doc.language;
  p.language_hash = lang.content_hash();
  Json universe = Json::array();
  p.csv = "index,statement,extension_size\n";
  for (std::size_t i = 0; i < lang.size(); ++i) {
    const auto n = lang.extension(lang.at(i)).count();
    universe.push_back({{"statement", lang.format(lang.at(i))}, {"extension_size", n}});
    p.csv += std::to_string(i) + "," + csv_field(lang.format(lang.at(i))) + "," + std::to_string(n) + "\n";
  }
  p.result = {{"kind", lang.kind() == LanguageKind::kDerived ? "derived" : "explicit"},
              {"size", lang.size()},
              {"universe", universe},
              {"policy_candidates", statements_json(lang, {lang.candidates().begin(), lang.candidates().end()})}};
  return p;
}

inline Payload cmd_learn(const RunConfig& cfg) {
  Payload p;
  Document doc = load_document(read_json_file(cfg.input), cfg.caps);
  const Language& lang = *doc.language;
  p.language_hash = lang.content_hash();
  const std::vector<Proxy> proxies{weakness(), description_length()};
  Json tasks = Json::array();
  p.csv = "task,proxy,chosen,ties\n";
  for (const auto& nt : doc.tasks) {
    Json t;
    t["name"] = nt.name;
    t["task"] = nt.task.format();
    Json viol = Json::array();
    for (const auto& v : nt.task.violations()) viol.push_back(v);
    t["violations"] = viol;
    const auto pi = policies(nt.task);
    t["policies"] = policies_json(lang, pi);
    Json gp = Json::object();
    for (const auto& h : pi) {
      const auto r = generalization_probability(h, nt.task);
      gp[lang.format(h.statement)] = {{"rational", format_rational(r)}, {"decimal", to_double(r)}};
    }
    t["generalization_probability"] = gp;
    Json choices = Json::object();
    for (const auto& proxy : proxies) {
      if (pi.empty()) {
        choices[proxy.name] = nullptr;
        continue;
      }
      const auto r = learn(nt.task, proxy);
      choices[proxy.name] = {{"chosen", lang.format(r.chosen.statement)},
                             {"all_maximal", policies_json(lang, r.all_maximal)}};
      p.csv += csv_field(nt.name) + "," + proxy.name + "," + csv_field(lang.format(r.chosen.statement)) + "," +
               std::to_string(r.all_maximal.size() - 1) + "\n";
    }
    t["learned"] = choices;
    tasks.push_back(t);
  }
  p.result = {{"tasks", tasks}};
  return p;
}

inline Payload cmd_experiment(const RunConfig& cfg) {
  Payload p;
  const Json src = read_json_file(cfg.input);
  const Json ex = src.value("experiment", Json::object());
  check_keys(ex, {"mode", "proxies", "trials", "random_language", "max_universe"}, "experiment");
  LanguagePtr lang;
  Json language_source;
  if (ex.contains("random_language")) {
    const auto& rl = ex.at("random_language");
    check_keys(rl, {"programs", "states"}, "random_language");
    Rng rng = Rng::stream(cfg.seed, 0x6c616e67ULL);
    Vocabulary v = random_vocabulary(rl.at("programs").get<std::size_t>(), rl.at("states").get<std::size_t>(), rng,
                                     cfg.caps);
    lang = share(Language::derive(std::move(v), cfg.caps));
    language_source = {{"random_language", rl}};
  } else {
    lang = load_language(src, cfg.caps);
    language_source = "document";
  }
  p.language_hash = lang->content_hash();
  const std::string mode = ex.value("mode", std::string("monte_carlo"));
  require(mode == "monte_carlo" || mode == "exhaustive" || mode == "both", ErrorKind::kInvalidArgument,
          "unknown experiment mode '" + mode + "'");
  std::vector<Proxy> proxies;
  for (const auto& n : ex.value("proxies", Json::array({"weakness", "description_length"})))
    proxies.push_back(proxy_by_name(n.get<std::string>()));
  const std::uint64_t trials = cfg.trials ? *cfg.trials : ex.value("trials", std::uint64_t{10000});
  require(trials >= 1, ErrorKind::kPrecondition, "trials must be at least 1");

  Json result;
  result["language"] = {{"source", language_source},
                        {"statements", lang->size()},
                        {"programs", lang->vocabulary().size()}};
  result["mode"] = mode;
  Json assertions = Json::array();
  if (mode != "exhaustive") {
    const auto mc = monte_carlo_generalization(*lang, proxies, trials, cfg.seed);
    Json reports = Json::array();
    p.csv = "proxy,trials,successes,rate,seed,language_hash\n";
    for (const auto& r : mc.reports) {
      reports.push_back({{"proxy", r.proxy_name},
                         {"trials", r.trials},
                         {"successes", r.successes},
                         {"rate", format_rational(r.rate)},
                         {"rate_decimal", to_double(r.rate)},
                         {"seed", r.seed},
                         {"ties", r.ties},
                         {"necessity_violations", r.necessity_violations},
                         {"parent_draws", r.parent_draws},
                         {"child_draws", r.child_draws},
                         {"max_attempts", r.max_attempts}});
      p.csv += r.proxy_name + "," + std::to_string(r.trials) + "," + std::to_string(r.successes) + "," +
               format_rational(r.rate) + "," + std::to_string(r.seed) + "," + hex64(*p.language_hash) + "\n";
    }
    result["monte_carlo"] = reports;
    std::optional<std::size_t> w, d;
    for (std::size_t i = 0; i < proxies.size(); ++i) {
      if (proxies[i].kind == ProxyKind::kWeakness && !w) w = i;
      if (proxies[i].kind == ProxyKind::kDescriptionLength && !d) d = i;
    }
    if (w && d) {
      const auto cmp = compare_paired(mc.outcomes[*w], mc.outcomes[*d]);
      const bool pass = cmp.within_band;
      assertions.push_back({{"name", "rate(weakness) >= rate(description_length)"},
                            {"rate_weakness", to_double(mc.reports[*w].rate)},
                            {"rate_description_length", to_double(mc.reports[*d].rate)},
                            {"mean_difference", cmp.mean_difference},
                            {"standard_error", cmp.standard_error},
                            {"strict_holds", mc.reports[*w].successes >= mc.reports[*d].successes},
                            {"pass", pass}});
      p.failed = p.failed || !pass;
    }
  }
  if (mode != "monte_carlo") {
    ExhaustiveOptions opt;
    opt.max_universe = ex.value("max_universe", opt.max_universe);
    auto cands = lang->candidates();
    const auto counts = count_generalizing_tasks(*lang, cands, opt);
    Json per = Json::array();
    for (std::size_t i = 0; i < cands.size(); ++i)
      per.push_back({{"policy", lang->format(cands[i])},
                     {"extension_size", lang->extension(cands[i]).count()},
                     {"tasks_generalised", counts[i]}});
    Json eff = Json::array();
    for (std::size_t a = 0; a < proxies.size(); ++a)
      for (std::size_t b = 0; b < proxies.size(); ++b)
        if (a != b)
          eff.push_back({{"proxy_a", proxies[a].name},
                         {"proxy_b", proxies[b].name},
                         {"sample_efficiency", sample_efficiency(proxies[a], proxies[b], *lang, cands, opt)}});
    result["exhaustive"] = {{"policies", per}, {"sample_efficiency", eff}};
  }
  result["assertions"] = assertions;
  p.result = result;
  return p;
}

inline Payload cmd_scenario(const RunConfig& cfg) {
  Payload p;
  Json src;
  bool builtin = false;
  for (const auto& n : builtin_scenario_names()) builtin = builtin || n == cfg.input;
  if (builtin || cfg.input.rfind("prop4:", 0) == 0) {
    src = builtin_scenario(cfg.input);
  } else {
    require(std::filesystem::exists(cfg.input), ErrorKind::kUnknownScenario,
            "'" + cfg.input + "' is neither a built-in scenario nor a file");
    src = read_json_file(cfg.input);
  }
  Document doc = load_document(src, cfg.caps);
  p.language_hash = doc.language->content_hash();
  auto r = run_scenario(doc, cfg.seed, cfg.max_steps);
  p.trace = trace_jsonl(r.world);
  p.result = Json::parse(r.summary.dump());
  p.csv = "organism,stage,stage_name,chain,order,identity\n";
  for (const auto& o : r.world.organisms) {
    const Stage st = classify_stage(o, r.world);
    const auto models = r.world.registry.models_of(o.id);
    if (models.empty())
      p.csv += o.id + "," + std::to_string(static_cast<int>(st)) + "," + to_string(st) + ",,,\n";
    for (const auto& m : models)
      p.csv += o.id + "," + std::to_string(static_cast<int>(st)) + "," + to_string(st) + "," +
               csv_field(chain_key(m.chain)) + "," + std::to_string(m.order()) + "," +
               csv_field(r.world.language->format(m.identity)) + "\n";
  }
  return p;
}

inline Payload cmd_fixture(const RunConfig& cfg, const std::string& override_path) {
  Payload p;
  require(cfg.input == "prop3", ErrorKind::kInvalidArgument, "unknown fixture '" + cfg.input + "'");
  const Json src = override_path.empty() ? Json::parse(kProp3Fixture) : read_json_file(override_path);
  Document doc = load_document(src, cfg.caps);
  p.language_hash = doc.language->content_hash();
  Json checks = Json::array();
  p.csv = "check,expected,actual,pass\n";
  for (const auto& c : prop3_checks(doc)) {
    checks.push_back({{"check", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    p.csv += csv_field(c.name) + "," + csv_field(c.expected) + "," + csv_field(c.actual) + "," +
             (c.pass ? "PASS" : "FAIL") + "\n";
    p.failed = p.failed || !c.pass;
  }
  p.result = {{"fixture", cfg.input}, {"checks", checks}, {"status", p.failed ? "FAIL" : "PASS"}};
  return p;
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kCapExceeded:
      return kExitBudget;
    case ErrorKind::kUnknownScenario:
    case ErrorKind::kPrecondition:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

}  // namespace detail

/// Runs one command. `fixture_override` replaces the built-in fixture
/// document for `fixture`.
inline CommandOutput run_command(const RunConfig& cfg, const std::string& fixture_override = "") {
  const auto start = std::chrono::steady_clock::now();
  CommandOutput out;
  detail::Payload p;
  try {
    if (cfg.command == "validate") p = detail::cmd_validate(cfg);
    else if (cfg.command == "enumerate") p = detail::cmd_enumerate(cfg);
    else if (cfg.command == "learn") p = detail::cmd_learn(cfg);
    else if (cfg.command == "experiment") p = detail::cmd_experiment(cfg);
    else if (cfg.command == "scenario") p = detail::cmd_scenario(cfg);
    else if (cfg.command == "fixture") p = detail::cmd_fixture(cfg, fixture_override);
    else fail(ErrorKind::kInvalidArgument, "unknown command '" + cfg.command + "'");
    out.exit_code = p.failed ? kExitFailure : kExitOk;
  } catch (const Error& e) {
    p.result = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    out.exit_code = detail::exit_code_for(e.kind());
    if (cfg.command == "fixture" && cfg.input != "prop3") out.exit_code = kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    p.result = {{"error", {{"kind", "parse"}, {"message", e.what()}}}};
    out.exit_code = kExitFailure;
  }
  Json hashed;
  hashed["tool"] = "enact";
  hashed["version"] = kToolVersion;
  hashed["config"] = config_echo(cfg);
  hashed["language_hash"] = p.language_hash ? Json(hex64(*p.language_hash)) : Json(nullptr);
  hashed["exit_code"] = out.exit_code;
  hashed["result"] = std::move(p.result);
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.report["hashed"] = hashed;
  out.report["hashed_digest"] = hashed_digest(hashed);
  out.report["wall_clock_ms"] = ms;
  out.csv = std::move(p.csv);
  out.trace = std::move(p.trace);
  return out;
}

/// Writes report.json / report.csv (per `format`) and trace.jsonl.
inline void write_outputs(const RunConfig& cfg, const CommandOutput& out) {
  if (cfg.out_dir.empty()) return;
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  if (cfg.format == "json" || cfg.format == "both") std::ofstream(dir / "report.json") << out.report.dump(2) << "\n";
  if ((cfg.format == "csv" || cfg.format == "both") && !out.csv.empty()) std::ofstream(dir / "report.csv") << out.csv;
  if (!out.trace.empty()) std::ofstream(dir / "trace.jsonl") << out.trace;
}

}  // namespace enact
