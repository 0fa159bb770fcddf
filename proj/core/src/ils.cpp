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

#include "at/ils.hpp"

#include <array>
#include <charconv>
#include <set>

#include "at/text.hpp"

namespace at {

namespace {

constexpr std::array<std::string_view, 4> kQuizAxes{"processing", "perception", "input", "understanding"};
constexpr std::array<std::string_view, 4> kPositive{"active", "sensory", "visual", "sequential"};
constexpr std::array<std::string_view, 4> kNegative{"reflexive", "intuitive", "verbal", "global"};

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(QuizAxis axis) { return kQuizAxes.at(static_cast<std::size_t>(axis)); }
std::string_view positive_pole(QuizAxis axis) { return kPositive.at(static_cast<std::size_t>(axis)); }
std::string_view negative_pole(QuizAxis axis) { return kNegative.at(static_cast<std::size_t>(axis)); }

QuestionnaireDefinition QuestionnaireDefinition::parse(std::string_view text, const std::string& source) {
  QuestionnaireDefinition def;
  std::array<int, 4> per_axis{};
  std::set<int> ids;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string>& f) {
    if (f.size() != 4) throw ParseError(source, line, 1, "expected 'item_id | axis | pole_of_a | prompt'");
    QuestionnaireItem item;
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), item.item_id);
    if (ec != std::errc() || p != f[0].data() + f[0].size())
      throw ParseError(source, line, 1, "invalid item id '" + f[0] + "'", {"integer"});
    std::size_t axis = 0;
    while (axis < kQuizAxes.size() && kQuizAxes[axis] != f[1]) ++axis;
    if (axis == kQuizAxes.size())
      throw ParseError(source, line, 1, "unknown axis '" + f[1] + "'",
                       {"processing", "perception", "input", "understanding"});
    item.axis = static_cast<QuizAxis>(axis);
    if (f[2] != kPositive[axis] && f[2] != kNegative[axis])
      throw ParseError(source, line, 1, "pole '" + f[2] + "' does not belong to axis " + f[1],
                       {std::string(kPositive[axis]), std::string(kNegative[axis])});
    item.pole_of_a = f[2];
    item.prompt = f[3];
    if (!ids.insert(item.item_id).second) throw ParseError(source, line, 1, "duplicate item id " + f[0]);
    ++per_axis[axis];
    def.items_.push_back(std::move(item));
  });
  if (def.items_.size() != kItemCount)
    throw ParseError(source, 1, 1, "questionnaire must have exactly 44 items, found " + std::to_string(def.items_.size()));
  if (*ids.begin() != 1 || *ids.rbegin() != kItemCount)
    throw ParseError(source, 1, 1, "item ids must be contiguous from 1 to 44");
  for (std::size_t a = 0; a < per_axis.size(); ++a)
    if (per_axis[a] != kItemsPerAxis)
      throw ParseError(source, 1, 1, "axis " + std::string(kQuizAxes[a]) + " must have 11 items");
  std::sort(def.items_.begin(), def.items_.end(),
            [](const auto& x, const auto& y) { return x.item_id < y.item_id; });
  return def;
}

QuestionnaireDefinition QuestionnaireDefinition::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

bool AnswerSheet::complete() const { return missing().empty(); }

std::vector<int> AnswerSheet::missing() const {
  std::vector<int> out;
  for (int id = 1; id <= QuestionnaireDefinition::kItemCount; ++id)
    if (!answers.contains(id)) out.push_back(id);
  return out;
}

IncompleteSheetError::IncompleteSheetError(std::vector<int> missing)
    : Error("incomplete answer sheet, missing items: " + join_ids(missing)), missing_(std::move(missing)) {}

Strength strength_of(int value) {
  int m = value < 0 ? -value : value;
  if (m <= 4) return Strength::balanced;
  if (m <= 8) return Strength::moderate;
  return Strength::strong;
}

std::vector<AxisScore> score(const AnswerSheet& sheet, const QuestionnaireDefinition& def) {
  if (auto missing = sheet.missing(); !missing.empty()) throw IncompleteSheetError(std::move(missing));
  std::array<int, 4> totals{};
  for (const auto& item : def.items()) {
    auto axis = static_cast<std::size_t>(item.axis);
    bool a_is_positive = item.pole_of_a == kPositive[axis];
    bool chose_a = sheet.answers.at(item.item_id) == Choice::a;
    totals[axis] += (chose_a == a_is_positive) ? 1 : -1;
  }
  std::vector<AxisScore> out;
  for (std::size_t a = 0; a < totals.size(); ++a)
    out.push_back({static_cast<QuizAxis>(a), totals[a], strength_of(totals[a])});
  return out;
}

PersonalityType classify(const std::vector<AxisScore>& scores, Reasoning declared_reasoning) {
  std::array<const AxisScore*, 4> by_axis{};
  for (const auto& s : scores) by_axis.at(static_cast<std::size_t>(s.axis)) = &s;
  for (std::size_t a = 0; a < by_axis.size(); ++a) {
    if (!by_axis[a]) throw Error("missing score for axis " + std::string(kQuizAxes[a]));
    if (by_axis[a]->value == 0)
      throw Error("zero score on axis " + std::string(kQuizAxes[a]) + " cannot come from a complete sheet");
  }
  auto positive = [&](QuizAxis a) { return by_axis[static_cast<std::size_t>(a)]->value > 0; };
  PersonalityType t;
  t.processing = positive(QuizAxis::processing) ? Processing::active : Processing::reflexive;
  t.perception = positive(QuizAxis::perception) ? Perception::sensory : Perception::intuitive;
  t.input = positive(QuizAxis::input) ? InputMode::visual : InputMode::verbal;
  t.understanding = positive(QuizAxis::understanding) ? Understanding::sequential : Understanding::global;
  t.reasoning = declared_reasoning;
  t.strengths[Axis::processing] = by_axis[0]->strength;
  t.strengths[Axis::perception] = by_axis[1]->strength;
  t.strengths[Axis::input] = by_axis[2]->strength;
  t.strengths[Axis::understanding] = by_axis[3]->strength;
  return t;
}

}  // namespace at
