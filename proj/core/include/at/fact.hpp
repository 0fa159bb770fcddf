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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "at/rational.hpp"

namespace at {

/// True for tokens of [A-Za-z0-9_:.-]+ that do not read as a number.
bool is_identifier(std::string_view token);

/// Object of a fact, or the value a rule variable binds to.
///
/// Four kinds exist: bare identifiers, quoted text, integers and rationals.
/// Ordering and equality follow the canonical textual form, which is
/// injective, so two values compare equal iff they are the same value.
class Value {
 public:
  enum class Kind { identifier, text, integer, rational };

  static Value id(std::string name);
  static Value text(std::string value);
  static Value integer(std::int64_t value);
  static Value rational(Rational value);

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_identifier() const { return kind() == Kind::identifier; }
  bool is_number() const { return kind() == Kind::integer || kind() == Kind::rational; }

  /// Identifier name or text content; empty for numbers.
  const std::string& str() const;
  std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
  /// Integers widen to rationals.
  Rational as_rational() const;

  const std::string& canonical() const { return canonical_; }

  friend bool operator==(const Value& a, const Value& b) { return a.canonical_ == b.canonical_; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    return a.canonical_.compare(b.canonical_) <=> 0;
  }

 private:
  struct Ident {
    std::string name;
  };
  struct Text {
    std::string value;
  };
  using Data = std::variant<Ident, Text, std::int64_t, Rational>;

  explicit Value(Data data);

  Data data_;
  std::string canonical_;
};

/// Subject-predicate-object assertion.
struct Fact {
  std::string subject;
  std::string predicate;
  Value object;

  Fact(std::string s, std::string p, Value o);

  /// `subject predicate object .` without the newline.
  std::string to_line() const;

  friend bool operator==(const Fact&, const Fact&) = default;
  friend std::strong_ordering operator<=>(const Fact& a, const Fact& b);
};

/// Set of facts in canonical line order.
class FactSet {
 public:
  using const_iterator = std::set<Fact>::const_iterator;

  FactSet() = default;
  FactSet(std::initializer_list<Fact> facts);
  template <typename It>
  FactSet(It first, It last) : facts_(first, last) {}

  /// Returns false when the fact was already present.
  bool insert(Fact fact) { return facts_.insert(std::move(fact)).second; }
  void insert(const FactSet& other) { facts_.insert(other.begin(), other.end()); }
  bool erase(const Fact& fact) { return facts_.erase(fact) > 0; }
  bool contains(const Fact& fact) const { return facts_.contains(fact); }

  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const_iterator begin() const { return facts_.begin(); }
  const_iterator end() const { return facts_.end(); }

  /// All facts whose subject equals `subject`.
  std::vector<Fact> about(std::string_view subject) const;

  friend bool operator==(const FactSet&, const FactSet&) = default;

 private:
  std::set<Fact> facts_;
};

/// Canonical text: one sorted line per fact and a trailing newline.
std::string serialize_facts(const FactSet& facts);

/// Parses fact text. `source` names the input in error messages.
/// Throws ParseError with 1-based line and column.
FactSet parse_facts(std::string_view text, const std::string& source = "<input>");

/// Canonical text form of one value (`"text"`, `name`, `42`, `13/2`).
std::string format_value(const Value& v);

/// Parses a single value token in canonical or non-canonical form.
std::optional<Value> parse_value(std::string_view token);

struct Variable {
  std::string name;  // without the leading '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// A pattern position: either a constant value or a variable.
using Term = std::variant<Value, Variable>;

/// Parses `?name` as a variable and anything else as a constant value.
Term make_term(std::string_view token);

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;
};

using Binding = std::map<std::string, Value>;

/// Extends `binding` so that `pattern` matches `fact`; false when impossible.
bool unify(const TriplePattern& pattern, const Fact& fact, Binding& binding);

/// Every binding that turns `pattern` into a member of `facts`, ordered
/// lexicographically by bound values (variables taken in name order).
std::vector<Binding> query(const FactSet& facts, const TriplePattern& pattern);

std::string format_binding(const Binding& binding);

}  // namespace at
