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

#include <string>
#include <vector>

#include "at/error.hpp"
#include "at/fact.hpp"
#include "at/rational.hpp"

namespace at {

/// One practical-work group. `team_count` of zero marks a group handled
/// by another member of the teaching staff: no teams are composed for it.
struct StudentGroup {
  std::vector<std::string> members;
  int team_count = 0;
  friend bool operator==(const StudentGroup&, const StudentGroup&) = default;
};

struct Resource {
  std::string label;
  std::string locator;
  friend bool operator==(const Resource&, const Resource&) = default;
};

struct TeachingUnit {
  std::string unit_id;
  std::string title;
  std::string domain_project;
  std::string client_needs;
  Rational lecture_hours;
  Rational practical_hours;
  Rational session_duration;
  int group_count = 0;
  std::vector<StudentGroup> groups;
  std::vector<Resource> resources;
  std::string method_id;
  friend bool operator==(const TeachingUnit&, const TeachingUnit&) = default;
};

std::vector<Violation> validate_unit(const TeachingUnit& unit);

/// `unit:<unit_id>`.
std::string unit_subject(const std::string& unit_id);

/// Members are stored as a set; facts_to_unit returns them sorted.
FactSet unit_to_facts(const TeachingUnit& unit);
TeachingUnit facts_to_unit(const std::string& unit_id, const FactSet& facts);

}  // namespace at
