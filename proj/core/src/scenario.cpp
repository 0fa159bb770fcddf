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

#include "at/scenario.hpp"

#include <algorithm>
#include <numeric>

#include "at/error.hpp"

namespace at {

std::vector<Team> compose_teams(std::vector<std::string> members, int team_count, int group_index) {
  if (team_count <= 0) throw Error("team count must be positive");
  if (static_cast<std::size_t>(team_count) > members.size())
    throw Error("cannot form " + std::to_string(team_count) + " teams from " + std::to_string(members.size()) +
                " members");
  std::sort(members.begin(), members.end());
  std::vector<Team> teams(static_cast<std::size_t>(team_count));
  for (std::size_t t = 0; t < teams.size(); ++t) {
    teams[t].team_id = "team-" + std::to_string(t + 1);
    teams[t].group_index = group_index;
  }
  for (std::size_t i = 0; i < members.size(); ++i) teams[i % teams.size()].members.push_back(std::move(members[i]));
  return teams;
}

SessionCount session_count(const Rational& practical_hours, const Rational& session_duration) {
  if (practical_hours <= Rational(0) || session_duration <= Rational(0))
    throw Error("practical hours and session duration must be positive");
  if (session_duration > practical_hours) throw Error("session duration exceeds practical hours");
  std::int64_t n = (practical_hours / session_duration).floor();
  return {n, practical_hours - session_duration * Rational(n)};
}

std::vector<Rational> entitled_shares(std::int64_t sessions, const std::vector<Rational>& weights) {
  const std::size_t k = weights.size();
  if (k == 0) throw Error("no steps to apportion");
  if (sessions < static_cast<std::int64_t>(k))
    throw Error("need at least " + std::to_string(k) + " sessions, have " + std::to_string(sessions));
  for (const auto& w : weights)
    if (w <= Rational(0)) throw Error("step weights must be positive");

  std::vector<bool> pinned(k, false);
  std::vector<Rational> shares(k);
  // Pin steps below one session until the remaining shares are all >= 1.
  while (true) {
    Rational free_weight(0);
    std::int64_t free_sessions = sessions;
    for (std::size_t i = 0; i < k; ++i) {
      if (pinned[i]) --free_sessions;
      else free_weight += weights[i];
    }
    bool changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (pinned[i]) {
        shares[i] = Rational(1);
        continue;
      }
      shares[i] = Rational(free_sessions) * weights[i] / free_weight;
      if (shares[i] < Rational(1)) {
        pinned[i] = true;
        changed = true;
      }
    }
    if (!changed) return shares;
  }
}

std::vector<std::int64_t> apportion(std::int64_t sessions, const std::vector<Rational>& weights) {
  std::vector<Rational> shares = entitled_shares(sessions, weights);
  std::vector<std::int64_t> alloc(shares.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    alloc[i] = shares[i].floor();
    assigned += alloc[i];
  }
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return shares[a] - Rational(alloc[a]) > shares[b] - Rational(alloc[b]);
  });
  for (std::size_t j = 0; assigned < sessions; ++j, ++assigned) ++alloc[order[j % order.size()]];
  return alloc;
}

Scenario compose_scenario(const TeachingUnit& unit, const MethodDefinition& method) {
  if (unit.method_id != method.method_id)
    throw Error("unit " + unit.unit_id + " uses method " + unit.method_id + ", not " + method.method_id);
  SessionCount count = session_count(unit.practical_hours, unit.session_duration);
  const auto steps = static_cast<std::int64_t>(method.steps.size());
  if (count.sessions < steps)
    throw Error("method " + method.method_id + " has " + std::to_string(steps) + " steps but only " +
                std::to_string(count.sessions) + " sessions fit; " + std::to_string(steps - count.sessions) +
                " short");

  std::vector<Rational> weights;
  for (const auto& s : method.steps) weights.push_back(s.weight);
  auto alloc = apportion(count.sessions, weights);

  Scenario sc;
  sc.unit_id = unit.unit_id;
  sc.unscheduled_hours = count.remainder;
  int index = 1;
  for (std::size_t i = 0; i < method.steps.size(); ++i) {
    const auto& step = method.steps[i];
    int first = index;
    for (std::int64_t j = 0; j < alloc[i]; ++j) {
      Session s;
      s.index = index++;
      s.duration = unit.session_duration;
      s.assigned_step = step.step_id;
      if (j + 1 == alloc[i]) s.due_deliveries = step.deliveries;
      sc.sessions.push_back(std::move(s));
    }
    sc.step_spans[step.step_id] = {first, index - 1};
  }
  return sc;
}

}  // namespace at
