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

#include "at/unit.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace at {

std::vector<Violation> validate_unit(const TeachingUnit& u) {
  std::vector<Violation> out;
  if (!is_identifier(u.unit_id)) out.push_back({"unit_id", "must be an identifier"});
  if (!is_identifier(u.method_id)) out.push_back({"method_id", "must be an identifier"});
  if (u.lecture_hours < Rational(0)) out.push_back({"lecture_hours", "must be non-negative"});
  if (u.practical_hours <= Rational(0)) out.push_back({"practical_hours", "must be positive"});
  if (u.session_duration <= Rational(0)) out.push_back({"session_duration", "must be positive"});
  if (u.session_duration > u.practical_hours)
    out.push_back({"session_duration", "must not exceed practical_hours"});
  if (u.group_count <= 0) out.push_back({"group_count", "must be positive"});
  if (u.group_count != static_cast<int>(u.groups.size()))
    out.push_back({"groups", "group_count must equal the number of roster groups"});

  std::set<std::string> names;
  for (std::size_t g = 0; g < u.groups.size(); ++g) {
    const auto& group = u.groups[g];
    std::string field = "groups[" + std::to_string(g + 1) + "]";
    if (group.team_count < 0) out.push_back({field + ".team_count", "must be non-negative"});
    if (group.team_count > static_cast<int>(group.members.size()))
      out.push_back({field + ".team_count", "more teams than members"});
    for (const auto& m : group.members) {
      if (m.empty()) out.push_back({field + ".members", "empty student name"});
      if (!names.insert(m).second) out.push_back({field + ".members", "duplicate student '" + m + "'"});
    }
  }
  for (std::size_t i = 0; i < u.resources.size(); ++i) {
    if (u.resources[i].locator.empty())
      out.push_back({"resources[" + std::to_string(i + 1) + "].locator", "must not be empty"});
  }
  return out;
}

std::string unit_subject(const std::string& unit_id) { return "unit:" + unit_id; }

namespace {

Value hours_value(const Rational& r) {
  return r.is_integer() ? Value::integer(r.num()) : Value::rational(r);
}

std::string group_subject(const std::string& unit_id, std::size_t g) {
  return unit_subject(unit_id) + ":group:" + std::to_string(g);
}

std::string resource_subject(const std::string& unit_id, std::size_t i) {
  return unit_subject(unit_id) + ":resource:" + std::to_string(i);
}

std::optional<std::size_t> index_after(const std::string& subject, const std::string& prefix) {
  if (!subject.starts_with(prefix)) return std::nullopt;
  std::string_view rest(subject);
  rest.remove_prefix(prefix.size());
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc() || p != rest.data() + rest.size() || v == 0) return std::nullopt;
  return v;
}

Rational expect_number(const Fact& f) {
  if (!f.object.is_number()) throw ConflictError(f.predicate, "expected number in '" + f.to_line() + "'");
  return f.object.as_rational();
}

}  // namespace

FactSet unit_to_facts(const TeachingUnit& u) {
  if (auto v = validate_unit(u); !v.empty()) throw ValidationError(std::move(v));
  const std::string s = unit_subject(u.unit_id);
  FactSet out;
  out.insert(Fact(s, "title", Value::text(u.title)));
  out.insert(Fact(s, "domain_project", Value::text(u.domain_project)));
  out.insert(Fact(s, "client_needs", Value::text(u.client_needs)));
  out.insert(Fact(s, "lecture_hours", hours_value(u.lecture_hours)));
  out.insert(Fact(s, "practical_hours", hours_value(u.practical_hours)));
  out.insert(Fact(s, "session_duration", hours_value(u.session_duration)));
  out.insert(Fact(s, "group_count", Value::integer(u.group_count)));
  out.insert(Fact(s, "method", Value::id(u.method_id)));
  for (std::size_t g = 0; g < u.groups.size(); ++g) {
    std::string gs = group_subject(u.unit_id, g + 1);
    out.insert(Fact(gs, "team_count", Value::integer(u.groups[g].team_count)));
    for (const auto& m : u.groups[g].members) out.insert(Fact(gs, "member", Value::text(m)));
  }
  for (std::size_t i = 0; i < u.resources.size(); ++i) {
    std::string rs = resource_subject(u.unit_id, i + 1);
    out.insert(Fact(rs, "label", Value::text(u.resources[i].label)));
    out.insert(Fact(rs, "locator", Value::text(u.resources[i].locator)));
  }
  return out;
}

TeachingUnit facts_to_unit(const std::string& unit_id, const FactSet& facts) {
  TeachingUnit u;
  u.unit_id = unit_id;
  const std::string s = unit_subject(unit_id);
  const std::string group_prefix = s + ":group:";
  const std::string resource_prefix = s + ":resource:";
  std::map<std::size_t, StudentGroup> groups;
  std::map<std::size_t, Resource> resources;
  std::set<std::string> seen;

  auto once = [&](const Fact& f) {
    if (!seen.insert(f.subject + " " + f.predicate).second)
      throw ConflictError(f.predicate, "conflicting values for " + f.subject + " " + f.predicate);
  };

  for (const auto& f : facts) {
    if (f.subject == s) {
      once(f);
      if (f.predicate == "title") u.title = f.object.str();
      else if (f.predicate == "domain_project") u.domain_project = f.object.str();
      else if (f.predicate == "client_needs") u.client_needs = f.object.str();
      else if (f.predicate == "lecture_hours") u.lecture_hours = expect_number(f);
      else if (f.predicate == "practical_hours") u.practical_hours = expect_number(f);
      else if (f.predicate == "session_duration") u.session_duration = expect_number(f);
      else if (f.predicate == "group_count") u.group_count = static_cast<int>(expect_number(f).floor());
      else if (f.predicate == "method") u.method_id = f.object.str();
    } else if (auto g = index_after(f.subject, group_prefix)) {
      auto& group = groups[*g];
      if (f.predicate == "team_count") {
        once(f);
        group.team_count = static_cast<int>(expect_number(f).floor());
      } else if (f.predicate == "member") {
        group.members.push_back(f.object.str());
      }
    } else if (auto r = index_after(f.subject, resource_prefix)) {
      if (f.predicate == "label") {
        once(f);
        resources[*r].label = f.object.str();
      } else if (f.predicate == "locator") {
        once(f);
        resources[*r].locator = f.object.str();
      }
    }
  }
  if (seen.empty()) throw NotFoundError("no facts for unit " + unit_id);
  for (std::size_t g = 1; g <= static_cast<std::size_t>(std::max(u.group_count, 0)); ++g) {
    auto group = groups[g];
    std::sort(group.members.begin(), group.members.end());
    u.groups.push_back(std::move(group));
  }
  for (auto& [i, r] : resources) u.resources.push_back(std::move(r));
  return u;
}

}  // namespace at
