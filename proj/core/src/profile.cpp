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

#include "at/profile.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "at/text.hpp"

namespace at {

namespace {

constexpr std::array<std::string_view, 4> kLevels{"none", "little", "working", "expert"};
constexpr std::array<std::string_view, 2> kPerception{"sensory", "intuitive"};
constexpr std::array<std::string_view, 2> kInput{"visual", "verbal"};
constexpr std::array<std::string_view, 2> kReasoning{"inductive", "deductive"};
constexpr std::array<std::string_view, 2> kProcessing{"active", "reflexive"};
constexpr std::array<std::string_view, 2> kUnderstanding{"sequential", "global"};
constexpr std::array<std::string_view, 5> kAxes{"perception", "input", "reasoning", "processing",
                                                "understanding"};
constexpr std::array<std::string_view, 3> kStrengths{"balanced", "moderate", "strong"};

template <typename E>
constexpr const auto& names_of() {
  if constexpr (std::is_same_v<E, KnowledgeLevel>) return kLevels;
  else if constexpr (std::is_same_v<E, Perception>) return kPerception;
  else if constexpr (std::is_same_v<E, InputMode>) return kInput;
  else if constexpr (std::is_same_v<E, Reasoning>) return kReasoning;
  else if constexpr (std::is_same_v<E, Processing>) return kProcessing;
  else if constexpr (std::is_same_v<E, Understanding>) return kUnderstanding;
  else if constexpr (std::is_same_v<E, Axis>) return kAxes;
  else return kStrengths;
}

// Predicate per personality axis, in Axis order.
constexpr std::array<std::string_view, 5> kAxisPredicates{"perceives", "inputs", "reasons", "processes",
                                                          "understands"};

constexpr std::string_view kKnowsLevel = "knows_level_";
constexpr std::string_view kBehaves = "behaves_";
constexpr std::string_view kStrength = "strength_";
constexpr std::string_view kExtension = "extension_";

template <typename T>
void check_unique(const std::vector<T>& items, const std::string& field, std::vector<Violation>& out) {
  std::set<T> seen;
  for (const auto& item : items) {
    if (!seen.insert(item).second) out.push_back({field, "duplicate entry '" + item + "'"});
  }
}

void check_identifiers(const std::vector<std::string>& items, const std::string& field,
                       std::vector<Violation>& out) {
  for (const auto& item : items)
    if (!is_identifier(item)) out.push_back({field, "'" + item + "' is not a valid identifier"});
}

}  // namespace

template <typename E>
std::optional<E> enum_from_string(std::string_view name) {
  const auto& names = names_of<E>();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<E>(i);
  return std::nullopt;
}

template std::optional<KnowledgeLevel> enum_from_string<KnowledgeLevel>(std::string_view);
template std::optional<Perception> enum_from_string<Perception>(std::string_view);
template std::optional<InputMode> enum_from_string<InputMode>(std::string_view);
template std::optional<Reasoning> enum_from_string<Reasoning>(std::string_view);
template std::optional<Processing> enum_from_string<Processing>(std::string_view);
template std::optional<Understanding> enum_from_string<Understanding>(std::string_view);
template std::optional<Axis> enum_from_string<Axis>(std::string_view);
template std::optional<Strength> enum_from_string<Strength>(std::string_view);

std::string_view to_string(KnowledgeLevel v) { return kLevels.at(static_cast<std::size_t>(v)); }
std::string_view to_string(Perception v) { return kPerception.at(static_cast<std::size_t>(v)); }
std::string_view to_string(InputMode v) { return kInput.at(static_cast<std::size_t>(v)); }
std::string_view to_string(Reasoning v) { return kReasoning.at(static_cast<std::size_t>(v)); }
std::string_view to_string(Processing v) { return kProcessing.at(static_cast<std::size_t>(v)); }
std::string_view to_string(Understanding v) { return kUnderstanding.at(static_cast<std::size_t>(v)); }
std::string_view to_string(Axis v) { return kAxes.at(static_cast<std::size_t>(v)); }
std::string_view to_string(Strength v) { return kStrengths.at(static_cast<std::size_t>(v)); }

std::optional<int> knowledge_rank(std::string_view name) {
  auto level = enum_from_string<KnowledgeLevel>(name);
  if (!level) return std::nullopt;
  return static_cast<int>(*level);
}

TopicRegistry::TopicRegistry(std::vector<std::pair<std::string, std::string>> topics)
    : topics_(std::move(topics)) {}

TopicRegistry TopicRegistry::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

TopicRegistry TopicRegistry::parse(std::string_view text, const std::string& source) {
  std::vector<std::pair<std::string, std::string>> topics;
  std::set<std::string> seen;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string>& fields) {
    if (fields.empty() || fields.size() > 2)
      throw ParseError(source, line_no, 1, "expected 'topic | label'", {"topic"});
    if (!is_identifier(fields[0])) throw ParseError(source, line_no, 1, "invalid topic identifier", {"topic"});
    if (!seen.insert(fields[0]).second) throw ParseError(source, line_no, 1, "duplicate topic " + fields[0]);
    topics.emplace_back(fields[0], fields.size() == 2 ? fields[1] : fields[0]);
  });
  return TopicRegistry(std::move(topics));
}

std::vector<std::string> TopicRegistry::topics() const {
  std::vector<std::string> out;
  for (const auto& [t, l] : topics_) out.push_back(t);
  return out;
}

bool TopicRegistry::contains(std::string_view topic) const {
  return std::any_of(topics_.begin(), topics_.end(), [&](const auto& p) { return p.first == topic; });
}

std::string TopicRegistry::label(std::string_view topic) const {
  for (const auto& [t, l] : topics_)
    if (t == topic) return l;
  return std::string(topic);
}

std::vector<Violation> validate_profile(const TeacherProfile& profile) {
  std::vector<Violation> out;

  check_identifiers(profile.skills, "skills", out);
  check_unique(profile.skills, "skills", out);

  std::vector<std::string> topics;
  for (const auto& k : profile.knowledge) {
    if (!is_identifier(k.topic)) out.push_back({"knowledge", "'" + k.topic + "' is not a valid topic"});
    if (static_cast<std::size_t>(k.level) >= kLevels.size())
      out.push_back({"knowledge." + k.topic, "level out of range"});
    topics.push_back(k.topic);
  }
  {
    std::set<std::string> seen;
    for (const auto& t : topics)
      if (!seen.insert(t).second) out.push_back({"knowledge." + t, "more than one entry for topic " + t});
  }

  std::set<std::string> aspects;
  for (const auto& b : profile.behaviours) {
    if (!is_identifier(b.aspect)) out.push_back({"behaviours", "'" + b.aspect + "' is not a valid aspect"});
    if (!is_identifier(b.style)) out.push_back({"behaviours." + b.aspect, "'" + b.style + "' is not a valid style"});
    if (!aspects.insert(b.aspect).second)
      out.push_back({"behaviours." + b.aspect, "more than one style for aspect " + b.aspect});
  }

  if (profile.personality) {
    const auto& p = *profile.personality;
    if (static_cast<std::size_t>(p.perception) > 1 || static_cast<std::size_t>(p.input) > 1 ||
        static_cast<std::size_t>(p.reasoning) > 1 || static_cast<std::size_t>(p.processing) > 1 ||
        static_cast<std::size_t>(p.understanding) > 1)
      out.push_back({"personality", "pole out of range"});
    for (const auto& [axis, strength] : p.strengths) {
      if (axis == Axis::reasoning)
        out.push_back({"personality.strengths", "reasoning is self-declared and carries no strength"});
      if (static_cast<std::size_t>(axis) >= kAxes.size() || static_cast<std::size_t>(strength) >= kStrengths.size())
        out.push_back({"personality.strengths", "value out of range"});
    }
  }

  check_identifiers(profile.tools.known_tools, "tools.known_tools", out);
  check_unique(profile.tools.known_tools, "tools.known_tools", out);
  check_identifiers(profile.tools.wished_functionalities, "tools.wished_functionalities", out);
  check_unique(profile.tools.wished_functionalities, "tools.wished_functionalities", out);

  for (const auto& [dimension, text] : profile.extensions)
    if (!is_identifier(dimension)) out.push_back({"extensions", "'" + dimension + "' is not a valid dimension name"});

  return out;
}

TeacherProfile default_profile(Uid uid, const TopicRegistry& registry) {
  TeacherProfile p;
  p.uid = uid;
  return normalize_profile(std::move(p), registry);
}

TeacherProfile normalize_profile(TeacherProfile p, const TopicRegistry& registry) {
  for (const auto& topic : registry.topics()) {
    bool present = std::any_of(p.knowledge.begin(), p.knowledge.end(),
                               [&](const KnowledgeEntry& k) { return k.topic == topic; });
    if (!present) p.knowledge.push_back({topic, KnowledgeLevel::none});
  }
  std::sort(p.skills.begin(), p.skills.end());
  std::sort(p.knowledge.begin(), p.knowledge.end(),
            [](const auto& a, const auto& b) { return a.topic < b.topic; });
  std::sort(p.behaviours.begin(), p.behaviours.end(),
            [](const auto& a, const auto& b) { return a.aspect < b.aspect; });
  std::sort(p.tools.known_tools.begin(), p.tools.known_tools.end());
  std::sort(p.tools.wished_functionalities.begin(), p.tools.wished_functionalities.end());
  return p;
}

std::string teacher_subject(Uid uid) { return "teacher:" + uid.to_string(); }

FactSet profile_to_facts(const TeacherProfile& input, const TopicRegistry& registry) {
  if (auto v = validate_profile(input); !v.empty()) throw ValidationError(std::move(v));
  TeacherProfile p = normalize_profile(input, registry);
  const std::string s = teacher_subject(p.uid);
  FactSet out;
  for (const auto& skill : p.skills) out.insert(Fact(s, "has_skill", Value::id(skill)));
  for (const auto& k : p.knowledge)
    out.insert(Fact(s, std::string(kKnowsLevel) + k.topic, Value::id(std::string(to_string(k.level)))));
  for (const auto& b : p.behaviours) out.insert(Fact(s, std::string(kBehaves) + b.aspect, Value::id(b.style)));
  if (p.personality) {
    const auto& t = *p.personality;
    out.insert(Fact(s, "perceives", Value::id(std::string(to_string(t.perception)))));
    out.insert(Fact(s, "inputs", Value::id(std::string(to_string(t.input)))));
    out.insert(Fact(s, "reasons", Value::id(std::string(to_string(t.reasoning)))));
    out.insert(Fact(s, "processes", Value::id(std::string(to_string(t.processing)))));
    out.insert(Fact(s, "understands", Value::id(std::string(to_string(t.understanding)))));
    for (const auto& [axis, strength] : t.strengths)
      out.insert(Fact(s, std::string(kStrength) + std::string(to_string(axis)),
                      Value::id(std::string(to_string(strength)))));
  } else {
    out.insert(Fact(s, "personality", Value::id("undeclared")));
  }
  for (const auto& tool : p.tools.known_tools) out.insert(Fact(s, "knows_tool", Value::id(tool)));
  for (const auto& f : p.tools.wished_functionalities) out.insert(Fact(s, "wishes_functionality", Value::id(f)));
  for (const auto& [dimension, text] : p.extensions)
    out.insert(Fact(s, std::string(kExtension) + dimension, Value::text(text)));
  return out;
}

namespace {

std::string expect_identifier(const Fact& f) {
  if (!f.object.is_identifier())
    throw ConflictError(f.predicate, "expected identifier object in '" + f.to_line() + "'");
  return f.object.str();
}

template <typename E>
E expect_enum(const Fact& f, std::string_view what) {
  auto v = enum_from_string<E>(expect_identifier(f));
  if (!v) throw ConflictError(std::string(what), "unknown " + std::string(what) + " value in '" + f.to_line() + "'");
  return *v;
}

}  // namespace

ProfileDecoding decode_profile(Uid uid, const FactSet& facts, const TopicRegistry& registry) {
  ProfileDecoding out;
  TeacherProfile& p = out.profile;
  p.uid = uid;
  const std::string s = teacher_subject(uid);

  std::map<std::string, KnowledgeLevel> levels;
  std::map<std::string, std::string> styles;
  std::array<std::optional<std::string>, 5> poles;
  std::map<Axis, Strength> strengths;
  bool undeclared = false;

  for (const auto& f : facts) {
    if (f.subject != s) continue;
    const std::string& pred = f.predicate;
    if (pred == "has_skill") {
      p.skills.push_back(expect_identifier(f));
    } else if (pred.starts_with(kKnowsLevel) && pred.size() > kKnowsLevel.size()) {
      std::string topic = pred.substr(kKnowsLevel.size());
      auto level = expect_enum<KnowledgeLevel>(f, "knowledge level");
      if (!levels.emplace(topic, level).second)
        throw ConflictError(topic, "conflicting knowledge levels for topic " + topic);
    } else if (pred.starts_with(kBehaves) && pred.size() > kBehaves.size()) {
      std::string aspect = pred.substr(kBehaves.size());
      if (!styles.emplace(aspect, expect_identifier(f)).second)
        throw ConflictError(aspect, "conflicting styles for behaviour aspect " + aspect);
    } else if (pred.starts_with(kStrength) && pred.size() > kStrength.size()) {
      std::string axis_name = pred.substr(kStrength.size());
      auto axis = enum_from_string<Axis>(axis_name);
      if (!axis) {
        out.ignored.push_back(f);
        continue;
      }
      if (!strengths.emplace(*axis, expect_enum<Strength>(f, "strength")).second)
        throw ConflictError(axis_name, "conflicting strengths for axis " + axis_name);
    } else if (pred.starts_with(kExtension) && pred.size() > kExtension.size()) {
      std::string dimension = pred.substr(kExtension.size());
      if (f.object.kind() != Value::Kind::text)
        throw ConflictError(dimension, "extension " + dimension + " must hold text");
      if (!p.extensions.emplace(dimension, f.object.str()).second)
        throw ConflictError(dimension, "conflicting values for extension " + dimension);
    } else if (pred == "knows_tool") {
      p.tools.known_tools.push_back(expect_identifier(f));
    } else if (pred == "wishes_functionality") {
      p.tools.wished_functionalities.push_back(expect_identifier(f));
    } else if (pred == "personality") {
      if (expect_identifier(f) != "undeclared") {
        out.ignored.push_back(f);
        continue;
      }
      undeclared = true;
    } else {
      auto it = std::find(kAxisPredicates.begin(), kAxisPredicates.end(), pred);
      if (it == kAxisPredicates.end()) {
        out.ignored.push_back(f);
        continue;
      }
      auto idx = static_cast<std::size_t>(it - kAxisPredicates.begin());
      std::string axis_name(kAxes[idx]);
      if (poles[idx] && *poles[idx] != expect_identifier(f))
        throw ConflictError(axis_name, "conflicting poles for axis " + axis_name);
      poles[idx] = expect_identifier(f);
    }
  }

  for (const auto& [topic, level] : levels) p.knowledge.push_back({topic, level});
  for (const auto& [aspect, style] : styles) p.behaviours.push_back({aspect, style});

  std::size_t declared = static_cast<std::size_t>(std::count_if(poles.begin(), poles.end(),
                                                                [](const auto& o) { return o.has_value(); }));
  if (declared > 0 && undeclared)
    throw ConflictError("personality", "personality marked undeclared but axes are present");
  if (declared > 0 && declared < poles.size()) {
    for (std::size_t i = 0; i < poles.size(); ++i)
      if (!poles[i]) throw ConflictError(std::string(kAxes[i]), "personality incomplete: missing axis " + std::string(kAxes[i]));
  }
  if (declared == poles.size()) {
    PersonalityType t;
    auto pole = [&](std::size_t i, auto tag) {
      using E = decltype(tag);
      auto v = enum_from_string<E>(*poles[i]);
      if (!v) throw ConflictError(std::string(kAxes[i]), "unknown pole '" + *poles[i] + "' for axis " + std::string(kAxes[i]));
      return *v;
    };
    t.perception = pole(0, Perception{});
    t.input = pole(1, InputMode{});
    t.reasoning = pole(2, Reasoning{});
    t.processing = pole(3, Processing{});
    t.understanding = pole(4, Understanding{});
    t.strengths = std::move(strengths);
    p.personality = std::move(t);
  } else if (!strengths.empty()) {
    throw ConflictError("personality", "strengths given without a personality type");
  }

  p = normalize_profile(std::move(p), registry);
  return out;
}

TeacherProfile facts_to_profile(Uid uid, const FactSet& facts, const TopicRegistry& registry) {
  return decode_profile(uid, facts, registry).profile;
}

}  // namespace at
