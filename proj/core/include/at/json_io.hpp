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

#include <nlohmann/json.hpp>

#include "at/ils.hpp"
#include "at/profile.hpp"
#include "at/unit.hpp"

namespace at {

/// Request and response bodies. Field names follow the C++ types. Hours
/// are JSON integers when whole and `"n/d"` strings otherwise; knowledge
/// and behaviours are objects keyed by topic and aspect.
///
/// The readers collect every problem they find and throw ValidationError.

nlohmann::json profile_to_json(const TeacherProfile& profile);
TeacherProfile profile_from_json(Uid uid, const nlohmann::json& body);

nlohmann::json personality_to_json(const PersonalityType& personality);

nlohmann::json unit_to_json(const TeachingUnit& unit);
TeachingUnit unit_from_json(const nlohmann::json& body);

/// `{"answers": {"1": "a", ...} | ["a", "b", ...], "reasoning": "deductive"}`.
struct QuizSubmission {
  AnswerSheet sheet;
  Reasoning reasoning = Reasoning::deductive;
};
QuizSubmission quiz_from_json(const nlohmann::json& body);

nlohmann::json violations_to_json(const std::vector<Violation>& violations);

nlohmann::json hours_to_json(const Rational& hours);

}  // namespace at
