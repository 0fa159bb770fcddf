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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "at/error.hpp"
#include "at/fact.hpp"
#include "at/fact_store.hpp"

namespace at {

enum class KnowledgeLevel { none, little, working, expert };

enum class Perception { sensory, intuitive };
enum class InputMode { visual, verbal };
enum class Reasoning { inductive, deductive };
enum class Processing { active, reflexive };
enum class Understanding { sequential, global };

enum class Axis { perception, input, reasoning, processing, understanding };
enum class Strength { balanced, moderate, strong };

std::string_view to_string(KnowledgeLevel v);
std::string_view to_string(Perception v);
std::string_view to_string(InputMode v);
std::string_view to_string(Reasoning v);
std::string_view to_string(Processing v);
std::string_view to_string(Understanding v);
std::string_view to_string(Axis v);
std::string_view to_string(Strength v);

/// Reverse lookups; nullopt for unknown names.
template <typename E>
std::optional<E> enum_from_string(std::string_view name);

/// Position of a knowledge level in none < little < working < expert, or
/// nullopt when `name` is not a level.
std::optional<int> knowledge_rank(std::string_view name);

struct KnowledgeEntry {
  std::string topic;
  KnowledgeLevel level = KnowledgeLevel::none;
  friend bool operator==(const KnowledgeEntry&, const KnowledgeEntry&) = default;
};

struct BehaviourEntry {
  std::string aspect;
  std::string style;
  friend bool operator==(const BehaviourEntry&, const BehaviourEntry&) = default;
};

/// The five learning-style axes. Strengths only exist for axes deduced from
/// the questionnaire, never for reasoning.
struct PersonalityType {
  Perception perception = Perception::sensory;
  InputMode input = InputMode::visual;
  Reasoning reasoning = Reasoning::deductive;
  Processing processing = Processing::active;
  Understanding understanding = Understanding::sequential;
  std::map<Axis, Strength> strengths;
  friend bool operator==(const PersonalityType&, const PersonalityType&) = default;
};

struct ToolPreference {
  std::vector<std::string> known_tools;
  std::vector<std::string> wished_functionalities;
  friend bool operator==(const ToolPreference&, const ToolPreference&) = default;
};

struct TeacherProfile {
  Uid uid;
  std::vector<std::string> skills;
  std::vector<KnowledgeEntry> knowledge;
  std::vector<BehaviourEntry> behaviours;
  std::optional<PersonalityType> personality;
  ToolPreference tools;
  /// Dimensions kept as free text (experience, working context, ...).
  std::map<std::string, std::string> extensions;
  friend bool operator==(const TeacherProfile&, const TeacherProfile&) = default;
};

/// Declared knowledge topics with display labels, read from
/// `config/topics.registry` (`topic | label` per line).
class TopicRegistry {
 public:
  TopicRegistry() = default;
  explicit TopicRegistry(std::vector<std::pair<std::string, std::string>> topics);

  static TopicRegistry load(const std::filesystem::path& path);
  static TopicRegistry parse(std::string_view text, const std::string& source = "<registry>");

  std::vector<std::string> topics() const;
  bool contains(std::string_view topic) const;
  /// Label for a topic; the topic itself when unlabelled or unknown.
  std::string label(std::string_view topic) const;

 private:
  std::vector<std::pair<std::string, std::string>> topics_;
};

/// Empty report iff every profile invariant holds.
std::vector<Violation> validate_profile(const TeacherProfile& profile);

/// Standard profile: every registry topic at level none, nothing else.
TeacherProfile default_profile(Uid uid, const TopicRegistry& registry);

/// Copy with sorted lists and every registry topic present (missing ones
/// at level none). profile_to_facts and facts_to_profile both work on this
/// form, so round trips are exact for normalized profiles.
TeacherProfile normalize_profile(TeacherProfile profile, const TopicRegistry& registry);

/// `teacher:<uid>`.
std::string teacher_subject(Uid uid);

/// Fact vocabulary (subject `teacher:<uid>`):
///
///   has_skill <skill>            knows_level_<topic> <level>
///   behaves_<aspect> <style>     perceives|inputs|reasons|processes|understands <pole>
///   strength_<axis> <strength>   personality undeclared      (no personality given)
///   knows_tool <tool>            wishes_functionality <functionality>
///   extension_<dimension> "<text>"
///
/// Throws ValidationError naming the first violation of an invalid profile.
FactSet profile_to_facts(const TeacherProfile& profile, const TopicRegistry& registry);

struct ProfileDecoding {
  TeacherProfile profile;
  /// Facts about the teacher whose predicate is outside the vocabulary.
  std::vector<Fact> ignored;
};

/// Inverse of profile_to_facts. Throws ConflictError naming the topic or
/// axis when facts disagree.
ProfileDecoding decode_profile(Uid uid, const FactSet& facts, const TopicRegistry& registry);
TeacherProfile facts_to_profile(Uid uid, const FactSet& facts, const TopicRegistry& registry);

}  // namespace at
