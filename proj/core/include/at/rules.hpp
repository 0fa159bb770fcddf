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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "at/fact.hpp"

namespace at {

enum class CompareOp { lt, le, eq, ne, gt, ge };

std::string_view to_string(CompareOp op);

/// `?var <op> constant`. Ordering operators compare numbers numerically and
/// knowledge levels by none < little < working < expert; any other pair of
/// values is unordered and the guard fails.
struct Guard {
  std::string variable;
  CompareOp op = CompareOp::eq;
  Value constant = Value::integer(0);
};

bool evaluate_guard(const Guard& guard, const Binding& binding);

enum class DirectiveKind { present, skip, embed_tool, link_blogs };

std::string_view to_string(DirectiveKind kind);
std::optional<DirectiveKind> directive_kind_from_string(std::string_view name);
/// Number of arguments each kind takes.
std::size_t directive_arity(DirectiveKind kind);

/// Adaptation instruction emitted by inference:
///
///   present(topic, modality, ordering)   skip(topic)
///   embed_tool(tool)                     link_blogs()
class Directive {
 public:
  Directive(DirectiveKind kind, std::vector<Value> args);

  static Directive present(std::string topic, std::string modality, std::string ordering);
  static Directive skip(std::string topic);
  static Directive embed_tool(std::string tool);
  static Directive link_blogs();

  DirectiveKind kind() const { return kind_; }
  const std::vector<Value>& args() const { return args_; }

  /// Topic for present/skip, tool for embed_tool, empty for link_blogs.
  std::string subject() const;
  /// present only.
  std::string modality() const { return args_.at(1).str(); }
  std::string ordering() const { return args_.at(2).str(); }

  /// Deduplication key: kind plus topic or tool.
  std::string key() const;
  /// `kind(arg,...)`.
  std::string canonical() const;

  friend bool operator==(const Directive& a, const Directive& b) {
    return a.kind_ == b.kind_ && a.args_ == b.args_;
  }
  friend bool operator<(const Directive& a, const Directive& b) { return a.canonical() < b.canonical(); }

 private:
  DirectiveKind kind_;
  std::vector<Value> args_;
};

struct DirectiveTemplate {
  DirectiveKind kind = DirectiveKind::link_blogs;
  std::vector<Term> args;
};

using Condition = std::variant<TriplePattern, Guard>;
/// A TriplePattern conclusion asserts the instantiated fact.
using Conclusion = std::variant<TriplePattern, DirectiveTemplate>;

struct Rule {
  std::string name;
  std::vector<Condition> conditions;
  std::vector<Conclusion> conclusions;
  /// Position in the rule file; lower fires first.
  int priority = 0;

  std::vector<TriplePattern> patterns() const;
  std::vector<Guard> guards() const;
};

struct RuleBase {
  std::vector<Rule> rules;
  std::string source;

  const Rule* find(std::string_view name) const;
};

/// Parses the rule language:
///
///   RULE <name> WHEN <condition> {AND <condition>}
///               THEN <conclusion> {AND <conclusion>} END
///
///   condition  := (term, term, term) | ?var <op> constant
///   conclusion := assert (term, term, term) | directive kind(term, ...)
///
/// `#` starts a comment. Throws ParseError carrying line, column and the
/// expected tokens; also for unbound variables and duplicate rule names.
RuleBase parse_rules(std::string_view text, const std::string& source = "<rules>");
RuleBase load_rules(const std::string& path);

/// One rule per line; parse_rules(to_source(rb)) reproduces rb's rules.
std::string to_source(const RuleBase& rb);
std::string to_source(const Rule& rule);

/// Facts and directives produced by firing `rule` under `binding`.
/// Assertions whose subject or predicate would not be an identifier are
/// dropped.
struct Firing {
  std::vector<Fact> facts;
  std::vector<Directive> directives;
};
Firing instantiate(const Rule& rule, const Binding& binding);

struct Inference {
  /// Input facts plus everything asserted.
  FactSet derived;
  /// Firing order, first directive per key kept.
  std::vector<Directive> directives;
  /// Every directive emitted, in firing order, before deduplication.
  std::vector<Directive> emitted;
  std::size_t rounds = 0;
};

/// Semi-naive forward chaining to fixpoint. Rounds fire rules in priority
/// order and each rule's new bindings in lexicographic order.
Inference infer(const FactSet& facts, const RuleBase& rb);

struct TraceStep {
  std::string rule;
  Binding binding;
};

/// Rule firings leading to `directive`, premises first. Throws
/// NotFoundError when `directive` is not in infer(facts, rb).directives.
std::vector<TraceStep> explain(const FactSet& facts, const RuleBase& rb, const Directive& directive);

/// Canonical directive lines sorted by kind then key.
std::vector<std::string> format_directives(const std::vector<Directive>& directives);

}  // namespace at
