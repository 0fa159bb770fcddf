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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "at/method.hpp"
#include "at/rational.hpp"
#include "at/unit.hpp"

namespace at {

struct Team {
  std::string team_id;
  int group_index = 0;
  std::vector<std::string> members;
  friend bool operator==(const Team&, const Team&) = default;
};

/// Sorts members, then deals them round-robin into `team-1..team-k`.
/// Throws Error when team_count is zero or exceeds the member count.
std::vector<Team> compose_teams(std::vector<std::string> members, int team_count, int group_index = 1);

struct SessionCount {
  std::int64_t sessions = 0;
  /// Practical hours left unscheduled.
  Rational remainder;
};

/// floor(practical_hours / session_duration) and the leftover hours.
SessionCount session_count(const Rational& practical_hours, const Rational& session_duration);

/// Sessions per step by largest-remainder apportionment with a floor of one
/// session per step. Steps whose plain weight share falls below one are
/// pinned to one session and the rest is re-apportioned among the others.
/// Remainder ties go to the earlier step.
std::vector<std::int64_t> apportion(std::int64_t sessions, const std::vector<Rational>& weights);

/// Exact (fractional) share each step is entitled to under the same
/// one-session floor; apportion() stays within one session of it.
std::vector<Rational> entitled_shares(std::int64_t sessions, const std::vector<Rational>& weights);

struct Session {
  int index = 0;  // 1-based
  Rational duration;
  std::string assigned_step;
  std::vector<std::string> due_deliveries;
  friend bool operator==(const Session&, const Session&) = default;
};

struct Scenario {
  std::string unit_id;
  std::vector<Session> sessions;
  /// step_id -> (first session, last session), both 1-based.
  std::map<std::string, std::pair<int, int>> step_spans;
  Rational unscheduled_hours;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws Error when the unit uses another method or has fewer sessions
/// than the method has steps.
Scenario compose_scenario(const TeachingUnit& unit, const MethodDefinition& method);

}  // namespace at
