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

#include "at/error.hpp"

namespace at {

namespace {

std::string parse_message(const std::string& source, std::size_t line, std::size_t column,
                          const std::string& message, const std::vector<std::string>& expected) {
  std::string out = source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

std::string violation_message(const std::vector<Violation>& violations) {
  if (violations.empty()) return "validation failed";
  return "invalid " + violations.front().field + ": " + violations.front().rule;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, std::string message,
                       std::vector<std::string> expected)
    : Error(parse_message(source, line, column, message, expected)),
      source_(std::move(source)),
      line_(line),
      column_(column),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violation_message(violations)), violations_(std::move(violations)) {}

}  // namespace at
