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
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "enact/error.hpp"
#include "enact/formalism.hpp"
#include "enact/organism.hpp"
#include "enact/tasks.hpp"

namespace enact {

using Json = nlohmann::ordered_json;

/// One broken invariant, located by a JSON-pointer-like path.
struct Violation {
  std::string location;
  std::string kind;
  std::string message;
};

inline nlohmann::json to_json(const Violation& v) {
  return {{"location", v.location}, {"kind", v.kind}, {"message", v.message}};
}

struct NamedTask {
  std::string name;
  VTask task;
};

/// A loaded input document. Entities that failed to load are absent and the
/// reason is in `violations`.
struct Document {
  Json source;
  LanguagePtr language;
  std::vector<NamedTask> tasks;
  std::vector<Organism> organisms;
  std::vector<Violation> violations;

  const VTask* task(const std::string& name) const {
    for (const auto& t : tasks)
      if (t.name == name) return &t.task;
    return nullptr;
  }
};

/// Parses text, turning syntax errors into kParse with line and column.
inline Json parse_json(const std::string& text, const std::string& origin = "<input>") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::kParse, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kParse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

namespace detail {

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  require(obj.is_object(), ErrorKind::kParse, where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    require(ok, ErrorKind::kParse, where + ": unknown field '" + it.key() + "'");
  }
}

inline Vocabulary load_vocabulary(const Json& doc, const Caps& caps) {
  std::vector<Program> programs;
  std::vector<std::string> names;
  if (doc.contains("features")) {
    require(doc.contains("situations") && !doc.contains("programs") && !doc.contains("environment"),
            ErrorKind::kParse, "'features' needs 'situations' and excludes 'programs'/'environment'");
    std::map<std::string, std::size_t> index;
    for (const auto& f : doc.at("features")) {
      index.emplace(f.get<std::string>(), names.size());
      names.push_back(f.get<std::string>());
      programs.push_back(Program{0});
    }
    const auto& sits = doc.at("situations");
    require(sits.size() <= caps.max_states, ErrorKind::kCapExceeded,
            std::to_string(sits.size()) + " situations exceed the state cap of " + std::to_string(caps.max_states));
    for (std::size_t s = 0; s < sits.size(); ++s)
      for (const auto& f : sits[s]) {
        auto it = index.find(f.get<std::string>());
        require(it != index.end(), ErrorKind::kParse,
                "situations/" + std::to_string(s) + ": unknown feature '" + f.get<std::string>() + "'");
        programs[it->second].states |= std::uint64_t{1} << s;
      }
    return Vocabulary(Environment(sits.size(), caps), std::move(programs), std::move(names), caps);
  }
  require(doc.contains("environment") && doc.contains("programs"), ErrorKind::kParse,
          "document needs 'environment' and 'programs', or 'features' and 'situations'");
  check_keys(doc.at("environment"), {"states"}, "environment");
  Environment env(doc.at("environment").at("states").get<std::size_t>(), caps);
  auto add = [&](const std::string& name, const Json& states) {
    std::uint64_t m = 0;
    for (const auto& s : states) {
      const auto v = s.get<std::size_t>();
      require(v < env.state_count(), ErrorKind::kOutOfRange,
              "program '" + name + "' names state " + std::to_string(v) + " outside the environment");
      m |= std::uint64_t{1} << v;
    }
    names.push_back(name);
    programs.push_back(Program{m});
  };
  const auto& ps = doc.at("programs");
  if (ps.is_object()) {
    for (auto it = ps.begin(); it != ps.end(); ++it) add(it.key(), it.value());
  } else {
    for (const auto& p : ps) {
      check_keys(p, {"name", "states"}, "programs");
      add(p.at("name").get<std::string>(), p.at("states"));
    }
  }
  return Vocabulary(env, std::move(programs), std::move(names), caps);
}

}  // namespace detail

/// ["a","b"] -> {a,b} over the vocabulary.
inline Statement parse_statement(const Json& names, const Vocabulary& vocab) {
  require(names.is_array(), ErrorKind::kParse, "statement must be an array of program names");
  Statement s;
  for (const auto& n : names) {
    const auto name = n.get<std::string>();
    const auto i = vocab.find(name);
    require(i.has_value(), ErrorKind::kInvalidArgument, "unknown program '" + name + "'");
    s = s | Statement{std::uint32_t{1} << *i};
  }
  return s;
}

inline std::vector<Statement> parse_statements(const Json& list, const Vocabulary& vocab) {
  std::vector<Statement> out;
  for (const auto& s : list) out.push_back(parse_statement(s, vocab));
  return out;
}

inline LanguagePtr load_language(const Json& doc, const Caps& caps = {}) {
  Vocabulary vocab = detail::load_vocabulary(doc, caps);
  if (!doc.contains("universe")) {
    require(!doc.contains("policy_candidates"), ErrorKind::kParse,
            "'policy_candidates' is only meaningful with an explicit 'universe'");
    return share(Language::derive(std::move(vocab), caps));
  }
  auto universe = parse_statements(doc.at("universe"), vocab);
  std::optional<std::vector<Statement>> cands;
  if (doc.contains("policy_candidates")) cands = parse_statements(doc.at("policy_candidates"), vocab);
  return share(Language::explicit_universe(std::move(vocab), std::move(universe), std::move(cands)));
}

/// Tasks give "inputs" and either "outputs" or a "policy" whose completions
/// of the inputs are the correct outputs.
inline VTask load_task(const Json& t, const LanguagePtr& lang) {
  detail::check_keys(t, {"name", "inputs", "outputs", "policy"}, "task");
  const auto& vocab = lang->vocabulary();
  auto inputs = parse_statements(t.at("inputs"), vocab);
  require(t.contains("outputs") != t.contains("policy"), ErrorKind::kParse,
          "task needs exactly one of 'outputs' or 'policy'");
  if (t.contains("policy")) {
    const Statement p = parse_statement(t.at("policy"), vocab);
    IndexSet out = lang->extension_of(inputs) & lang->extension(p);
    return VTask::unchecked(lang, std::move(inputs), std::move(out));
  }
  IndexSet out(lang->size());
  for (const auto& o : t.at("outputs")) {
    const Statement s = parse_statement(o, vocab);
    const auto idx = lang->index_of(s);
    require(idx.has_value(), ErrorKind::kInvalidArgument, "output " + vocab.format(s) + " is not in the language");
    out.insert(*idx);
  }
  return VTask::unchecked(lang, std::move(inputs), std::move(out));
}

inline Organism load_organism(const Json& o, const LanguagePtr& lang) {
  detail::check_keys(o,
                     {"id", "inert", "vocabulary", "marker", "reflexes", "learning", "preference", "proxy",
                      "memory_limit", "models"},
                     "organism");
  const auto& vocab = lang->vocabulary();
  Organism org;
  org.id = o.at("id").get<std::string>();
  org.language = lang;
  org.is_organism = !o.value("inert", false);
  org.vocabulary = o.contains("vocabulary") ? parse_statement(o.at("vocabulary"), vocab).bits
                                            : vocab.all_programs();
  if (o.contains("marker")) {
    const auto m = vocab.find(o.at("marker").get<std::string>());
    require(m.has_value(), ErrorKind::kInvalidArgument, "unknown marker program");
    org.marker = *m;
  }
  for (const auto& r : o.value("reflexes", Json::array())) {
    const Statement s = parse_statement(r, vocab);
    require(org.in_language(s), ErrorKind::kInvalidArgument,
            "reflex " + vocab.format(s) + " is not in the organism's language");
    org.reflex_policies.push_back(Policy{s});
  }
  org.learning = o.value("learning", false);
  org.preference = o.value("preference", std::string("canonical"));
  org.proxy = o.value("proxy", std::string("weakness"));
  org.memory_limit = o.value("memory_limit", std::size_t{0});
  for (const auto& m : o.value("models", Json::array())) {
    detail::check_keys(m, {"chain", "incentive"}, "models");
    org.models.push_back(ModelTarget{m.at("chain").get<std::vector<std::string>>(), m.value("incentive", true)});
  }
  return org;
}

/// Loads every section it can. Structural errors in the language are fatal;
/// problems with individual tasks and organisms become violations.
inline Document load_document(const Json& doc, const Caps& caps = {}) {
  detail::check_keys(doc,
                     {"environment", "programs", "features", "situations", "universe", "policy_candidates", "tasks",
                      "organisms", "scenario", "experiment", "description"},
                     "document");
  Document d;
  d.source = doc;
  d.language = load_language(doc, caps);
  const auto tasks = doc.value("tasks", Json::array());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string where = "tasks/" + std::to_string(i);
    try {
      VTask t = load_task(tasks[i], d.language);
      for (const auto& m : t.violations()) d.violations.push_back({where, "invalid_task", m});
      d.tasks.push_back({tasks[i].value("name", "task" + std::to_string(i)), std::move(t)});
    } catch (const Error& e) {
      d.violations.push_back({where, std::string(to_string(e.kind())), e.what()});
    }
  }
  const auto orgs = doc.value("organisms", Json::array());
  for (std::size_t i = 0; i < orgs.size(); ++i) {
    try {
      d.organisms.push_back(load_organism(orgs[i], d.language));
    } catch (const Error& e) {
      d.violations.push_back({"organisms/" + std::to_string(i), std::string(to_string(e.kind())), e.what()});
    }
  }
  return d;
}

}  // namespace enact
