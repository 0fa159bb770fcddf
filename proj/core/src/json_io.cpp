// Copyright 2026 The Assistance Tool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "at/json_io.hpp"

#include <algorithm>

namespace at {

using nlohmann::json;

namespace {

class Reader {
 public:
  void fail(std::string field, std::string rule) { violations_.push_back({std::move(field), std::move(rule)}); }

  std::string text(const json& body, const std::string& key, bool required = true) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) {
      if (required) fail(key, "is required");
      return {};
    }
    if (!it->is_string()) {
      fail(key, "must be a string");
      return {};
    }
    return it->get<std::string>();
  }

  std::vector<std::string> strings(const json& value, const std::string& field) {
    std::vector<std::string> out;
    if (value.is_null()) return out;
    if (!value.is_array()) {
      fail(field, "must be an array of strings");
      return out;
    }
    for (const auto& v : value) {
      if (!v.is_string()) {
        fail(field, "must be an array of strings");
        continue;
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  Rational hours(const json& body, const std::string& key) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) {
      fail(key, "is required");
      return {};
    }
    if (it->is_number_integer()) return Rational(it->get<std::int64_t>());
    if (it->is_string()) {
      if (auto r = Rational::parse(it->get<std::string>())) return *r;
    }
    fail(key, "must be an integer or an \"n/d\" fraction");
    return {};
  }

  int integer(const json& body, const std::string& key, const std::string& field) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_number_integer()) {
      fail(field, "must be an integer");
      return 0;
    }
    return it->get<int>();
  }

  template <typename E>
  std::optional<E> pole(const json& value, const std::string& field) {
    if (value.is_string())
      if (auto e = enum_from_string<E>(value.get<std::string>())) return e;
    fail(field, "unknown value " + value.dump());
    return std::nullopt;
  }

  void finish() {
    if (!violations_.empty()) throw ValidationError(std::move(violations_));
  }

 private:
  std::vector<Violation> violations_;
};

void require_object(const json& body) {
  if (!body.is_object()) throw ValidationError(std::vector<Violation>{{"body", "must be a JSON object"}});
}

}  // namespace

json hours_to_json(const Rational& hours) {
  if (hours.is_integer()) return hours.num();
  return hours.to_string();
}

json personality_to_json(const PersonalityType& p) {
  json out{{"perception", to_string(p.perception)},
           {"input", to_string(p.input)},
           {"reasoning", to_string(p.reasoning)},
           {"processing", to_string(p.processing)},
           {"understanding", to_string(p.understanding)}};
  json strengths = json::object();
  for (const auto& [axis, s] : p.strengths) strengths[std::string(to_string(axis))] = to_string(s);
  out["strengths"] = strengths;
  return out;
}

json profile_to_json(const TeacherProfile& profile) {
  json knowledge = json::object();
  for (const auto& k : profile.knowledge) knowledge[k.topic] = to_string(k.level);
  json behaviours = json::object();
  for (const auto& b : profile.behaviours) behaviours[b.aspect] = b.style;
  json extensions = json::object();
  for (const auto& [k, v] : profile.extensions) extensions[k] = v;
  return json{{"uid", profile.uid.value},
              {"skills", profile.skills},
              {"knowledge", knowledge},
              {"behaviours", behaviours},
              {"personality", profile.personality ? personality_to_json(*profile.personality) : json(nullptr)},
              {"tools",
               {{"known_tools", profile.tools.known_tools},
                {"wished_functionalities", profile.tools.wished_functionalities}}},
              {"extensions", extensions}};
}

TeacherProfile profile_from_json(Uid uid, const json& body) {
  require_object(body);
  Reader r;
  TeacherProfile p;
  p.uid = uid;
  p.skills = r.strings(body.value("skills", json()), "skills");

  if (auto it = body.find("knowledge"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) r.fail("knowledge", "must be an object of topic to level");
    else
      for (const auto& [topic, level] : it->items())
        if (auto l = r.pole<KnowledgeLevel>(level, "knowledge." + topic)) p.knowledge.push_back({topic, *l});
  }
  if (auto it = body.find("behaviours"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) r.fail("behaviours", "must be an object of aspect to style");
    else
      for (const auto& [aspect, style] : it->items()) {
        if (style.is_string()) p.behaviours.push_back({aspect, style.get<std::string>()});
        else r.fail("behaviours." + aspect, "must be a string");
      }
  }
  if (auto it = body.find("personality"); it != body.end() && !it->is_null()) {
    const json& pj = *it;
    if (!pj.is_object()) {
      r.fail("personality", "must be an object or null");
    } else {
      PersonalityType t;
      auto field = [&](const char* key) -> const json& {
        static const json missing;
        auto f = pj.find(key);
        return f == pj.end() ? missing : *f;
      };
      if (auto v = r.pole<Perception>(field("perception"), "personality.perception")) t.perception = *v;
      if (auto v = r.pole<InputMode>(field("input"), "personality.input")) t.input = *v;
      if (auto v = r.pole<Reasoning>(field("reasoning"), "personality.reasoning")) t.reasoning = *v;
      if (auto v = r.pole<Processing>(field("processing"), "personality.processing")) t.processing = *v;
      if (auto v = r.pole<Understanding>(field("understanding"), "personality.understanding")) t.understanding = *v;
      if (auto s = pj.find("strengths"); s != pj.end() && !s->is_null()) {
        if (!s->is_object()) r.fail("personality.strengths", "must be an object of axis to strength");
        else
          for (const auto& [axis, strength] : s->items()) {
            auto a = enum_from_string<Axis>(axis);
            if (!a) {
              r.fail("personality.strengths." + axis, "unknown axis");
              continue;
            }
            if (auto v = r.pole<Strength>(strength, "personality.strengths." + axis)) t.strengths[*a] = *v;
          }
      }
      p.personality = t;
    }
  }
  if (auto it = body.find("tools"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) r.fail("tools", "must be an object");
    else {
      p.tools.known_tools = r.strings(it->value("known_tools", json()), "tools.known_tools");
      p.tools.wished_functionalities =
          r.strings(it->value("wished_functionalities", json()), "tools.wished_functionalities");
    }
  }
  if (auto it = body.find("extensions"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) r.fail("extensions", "must be an object of dimension to text");
    else
      for (const auto& [k, v] : it->items()) {
        if (v.is_string()) p.extensions[k] = v.get<std::string>();
        else r.fail("extensions." + k, "must be a string");
      }
  }
  r.finish();
  return p;
}

json unit_to_json(const TeachingUnit& u) {
  json groups = json::array();
  for (const auto& g : u.groups) groups.push_back({{"members", g.members}, {"team_count", g.team_count}});
  json resources = json::array();
  for (const auto& res : u.resources) resources.push_back({{"label", res.label}, {"locator", res.locator}});
  return json{{"unit_id", u.unit_id},
              {"title", u.title},
              {"domain_project", u.domain_project},
              {"client_needs", u.client_needs},
              {"lecture_hours", hours_to_json(u.lecture_hours)},
              {"practical_hours", hours_to_json(u.practical_hours)},
              {"session_duration", hours_to_json(u.session_duration)},
              {"group_count", u.group_count},
              {"groups", groups},
              {"resources", resources},
              {"method_id", u.method_id}};
}

TeachingUnit unit_from_json(const json& body) {
  require_object(body);
  Reader r;
  TeachingUnit u;
  u.unit_id = r.text(body, "unit_id");
  u.title = r.text(body, "title");
  u.domain_project = r.text(body, "domain_project", false);
  u.client_needs = r.text(body, "client_needs", false);
  u.lecture_hours = r.hours(body, "lecture_hours");
  u.practical_hours = r.hours(body, "practical_hours");
  u.session_duration = r.hours(body, "session_duration");
  u.group_count = r.integer(body, "group_count", "group_count");
  u.method_id = r.text(body, "method_id");
  if (auto it = body.find("groups"); it != body.end() && it->is_array()) {
    for (std::size_t g = 0; g < it->size(); ++g) {
      const json& gj = (*it)[g];
      std::string field = "groups[" + std::to_string(g + 1) + "]";
      if (!gj.is_object()) {
        r.fail(field, "must be an object");
        continue;
      }
      StudentGroup group;
      group.members = r.strings(gj.value("members", json()), field + ".members");
      group.team_count = r.integer(gj, "team_count", field + ".team_count");
      u.groups.push_back(std::move(group));
    }
  } else {
    r.fail("groups", "must be an array");
  }
  if (auto it = body.find("resources"); it != body.end() && !it->is_null()) {
    if (!it->is_array()) r.fail("resources", "must be an array");
    else
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& rj = (*it)[i];
        if (!rj.is_object()) {
          r.fail("resources[" + std::to_string(i + 1) + "]", "must be an object");
          continue;
        }
        u.resources.push_back({r.text(rj, "label", false), r.text(rj, "locator")});
      }
  }
  r.finish();
  if (auto v = validate_unit(u); !v.empty()) throw ValidationError(std::move(v));
  return u;
}

QuizSubmission quiz_from_json(const json& body) {
  require_object(body);
  Reader r;
  QuizSubmission q;
  auto choice = [&](const json& v, const std::string& field) -> std::optional<Choice> {
    if (v == "a") return Choice::a;
    if (v == "b") return Choice::b;
    r.fail(field, "must be \"a\" or \"b\"");
    return std::nullopt;
  };
  const json answers = body.value("answers", json());
  if (answers.is_array()) {
    for (std::size_t i = 0; i < answers.size(); ++i) {
      if (answers[i].is_null()) continue;
      int id = static_cast<int>(i + 1);
      if (auto c = choice(answers[i], "answers." + std::to_string(id))) q.sheet.answers[id] = *c;
    }
  } else if (answers.is_object()) {
    for (const auto& [key, v] : answers.items()) {
      int id = 0;
      try {
        std::size_t used = 0;
        id = std::stoi(key, &used);
        if (used != key.size()) id = 0;
      } catch (const std::exception&) {
      }
      if (id < 1 || id > QuestionnaireDefinition::kItemCount) {
        r.fail("answers." + key, "unknown item");
        continue;
      }
      if (auto c = choice(v, "answers." + key)) q.sheet.answers[id] = *c;
    }
  } else {
    r.fail("answers", "must be an array or an object keyed by item id");
  }
  if (auto v = r.pole<Reasoning>(body.value("reasoning", json()), "reasoning")) q.reasoning = *v;
  r.finish();
  return q;
}

json violations_to_json(const std::vector<Violation>& violations) {
  json out = json::array();
  for (const auto& v : violations) out.push_back({{"field", v.field}, {"rule", v.rule}});
  return out;
}

}  // namespace at
