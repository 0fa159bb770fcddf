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
#include <string>
#include <string_view>
#include <vector>

#include "at/profile.hpp"

namespace at {

/// The four axes the 44-item questionnaire measures. Each has a positive
/// pole (listed first) that positive scores point to.
enum class QuizAxis { processing, perception, input, understanding };

std::string_view to_string(QuizAxis axis);
/// Positive pole name: active, sensory, visual, sequential.
std::string_view positive_pole(QuizAxis axis);
/// Negative pole name: reflexive, intuitive, verbal, global.
std::string_view negative_pole(QuizAxis axis);

enum class Choice { a, b };

struct QuestionnaireItem {
  int item_id = 0;
  QuizAxis axis = QuizAxis::processing;
  /// Pole that an "a" answer favours; one of the axis's two poles.
  std::string pole_of_a;
  std::string prompt;
};

/// Exactly 44 items, 11 per axis, ids 1..44. File format, one record per
/// line: `item_id | axis | pole_of_a | prompt`.
class QuestionnaireDefinition {
 public:
  static constexpr int kItemCount = 44;
  static constexpr int kItemsPerAxis = 11;

  static QuestionnaireDefinition parse(std::string_view text, const std::string& source = "<questionnaire>");
  static QuestionnaireDefinition load(const std::filesystem::path& path);

  const std::vector<QuestionnaireItem>& items() const { return items_; }
  const QuestionnaireItem& item(int item_id) const { return items_.at(static_cast<std::size_t>(item_id - 1)); }

 private:
  std::vector<QuestionnaireItem> items_;
};

struct AnswerSheet {
  std::map<int, Choice> answers;

  bool complete() const;
  /// Item ids 1..44 without an answer.
  std::vector<int> missing() const;
};

struct AxisScore {
  QuizAxis axis = QuizAxis::processing;
  int value = 0;
  Strength strength = Strength::balanced;
  friend bool operator==(const AxisScore&, const AxisScore&) = default;
};

class IncompleteSheetError : public Error {
 public:
  explicit IncompleteSheetError(std::vector<int> missing);
  const std::vector<int>& missing() const { return missing_; }

 private:
  std::vector<int> missing_;
};

/// balanced for |value| <= 3, moderate for 5..7, strong for >= 9.
Strength strength_of(int value);

/// One score per axis in QuizAxis order. Each item counts +1 when its
/// chosen pole is the axis's positive pole and -1 otherwise.
std::vector<AxisScore> score(const AnswerSheet& sheet, const QuestionnaireDefinition& def);

/// Poles from score signs plus the self-declared reasoning pole.
PersonalityType classify(const std::vector<AxisScore>& scores, Reasoning declared_reasoning);

}  // namespace at
