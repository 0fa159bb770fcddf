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

#include "at/error.hpp"
#include "at/rational.hpp"

namespace at {

enum class Modality { audio, video, text };
enum class SectionKind { principle, example };

std::string_view to_string(Modality m);
std::string_view to_string(SectionKind k);
std::optional<Modality> modality_from_string(std::string_view s);

struct MethodStep {
  std::string step_id;
  std::string name;
  Rational weight;
  std::vector<std::string> deliveries;
  friend bool operator==(const MethodStep&, const MethodStep&) = default;
};

struct PresentationSection {
  std::string section_id;
  SectionKind kind = SectionKind::principle;
  std::map<Modality, std::string> media;
  friend bool operator==(const PresentationSection&, const PresentationSection&) = default;
};

/// A pedagogical method read from a `.method` file:
///
///   method <method_id>
///   name <display name>
///   [steps]
///   step_id | name | weight | delivery, delivery, ...
///   [presentation]
///   section_id | principle|example | modality=locator, ...
struct MethodDefinition {
  std::string method_id;
  std::string name;
  std::vector<MethodStep> steps;
  std::vector<PresentationSection> presentation_sections;
  friend bool operator==(const MethodDefinition&, const MethodDefinition&) = default;
};

MethodDefinition parse_method(std::string_view text, const std::string& source = "<method>");
MethodDefinition load_method(const std::filesystem::path& path);

/// Throws ValidationError when a method breaks its invariants.
void validate_method(const MethodDefinition& method);

/// Presentation sections per topic, from a catalog file with records
/// `topic | section_id | principle|example | modality=locator, ...`.
class PresentationCatalog {
 public:
  static PresentationCatalog parse(std::string_view text, const std::string& source = "<catalog>");
  static PresentationCatalog load(const std::filesystem::path& path);

  void add(const std::string& topic, std::vector<PresentationSection> sections);
  /// Empty when the topic has no sections.
  const std::vector<PresentationSection>& sections(const std::string& topic) const;

 private:
  std::map<std::string, std::vector<PresentationSection>> topics_;
};

}  // namespace at
