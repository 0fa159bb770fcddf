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

#include "at/rules.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "at/error.hpp"
#include "at/fact_store.hpp"
#include "at/profile.hpp"

namespace at {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "!=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "=";
}

bool evaluate_guard(const Guard& guard, const Binding& binding) {
  auto it = binding.find(guard.variable);
  if (it == binding.end()) return false;
  const Value& lhs = it->second;
  const Value& rhs = guard.constant;
  if (guard.op == CompareOp::eq) return lhs == rhs;
  if (guard.op == CompareOp::ne) return lhs != rhs;

  int cmp = 0;
  if (lhs.is_number() && rhs.is_number()) {
    auto a = lhs.as_rational(), b = rhs.as_rational();
    cmp = a < b ? -1 : (a > b ? 1 : 0);
  } else if (lhs.is_identifier() && rhs.is_identifier()) {
    auto a = knowledge_rank(lhs.str()), b = knowledge_rank(rhs.str());
    if (!a || !b) return false;
    cmp = *a - *b;
  } else {
    return false;
  }
  switch (guard.op) {
    case CompareOp::lt: return cmp < 0;
    case CompareOp::le: return cmp <= 0;
    case CompareOp::gt: return cmp > 0;
    case CompareOp::ge: return cmp >= 0;
    default: return false;
  }
}

std::string_view to_string(DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::present: return "present";
    case DirectiveKind::skip: return "skip";
    case DirectiveKind::embed_tool: return "embed_tool";
    case DirectiveKind::link_blogs: return "link_blogs";
  }
  return "present";
}

std::optional<DirectiveKind> directive_kind_from_string(std::string_view name) {
  for (auto k : {DirectiveKind::present, DirectiveKind::skip, DirectiveKind::embed_tool, DirectiveKind::link_blogs})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::size_t directive_arity(DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::present: return 3;
    case DirectiveKind::skip: return 1;
    case DirectiveKind::embed_tool: return 1;
    case DirectiveKind::link_blogs: return 0;
  }
  return 0;
}

Directive::Directive(DirectiveKind kind, std::vector<Value> args) : kind_(kind), args_(std::move(args)) {
  if (args_.size() != directive_arity(kind_))
    throw Error(std::string(to_string(kind_)) + " takes " + std::to_string(directive_arity(kind_)) + " arguments");
}

Directive Directive::present(std::string topic, std::string modality, std::string ordering) {
  return Directive(DirectiveKind::present,
                   {Value::id(std::move(topic)), Value::id(std::move(modality)), Value::id(std::move(ordering))});
}
Directive Directive::skip(std::string topic) { return Directive(DirectiveKind::skip, {Value::id(std::move(topic))}); }
Directive Directive::embed_tool(std::string tool) {
  return Directive(DirectiveKind::embed_tool, {Value::id(std::move(tool))});
}
Directive Directive::link_blogs() { return Directive(DirectiveKind::link_blogs, {}); }

std::string Directive::subject() const { return args_.empty() ? std::string() : args_.front().str(); }

std::string Directive::key() const {
  std::string k(to_string(kind_));
  if (!args_.empty()) k += "/" + args_.front().canonical();
  return k;
}

std::string Directive::canonical() const {
  std::string out(to_string(kind_));
  out += "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ",";
    out += args_[i].canonical();
  }
  return out + ")";
}

std::vector<TriplePattern> Rule::patterns() const {
  std::vector<TriplePattern> out;
  for (const auto& c : conditions)
    if (auto* p = std::get_if<TriplePattern>(&c)) out.push_back(*p);
  return out;
}

std::vector<Guard> Rule::guards() const {
  std::vector<Guard> out;
  for (const auto& c : conditions)
    if (auto* g = std::get_if<Guard>(&c)) out.push_back(*g);
  return out;
}

const Rule* RuleBase::find(std::string_view name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok { word, variable, string, lparen, rparen, comma, op, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == ':' ||
         c == '.' || c == '-' || c == '/';
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& source) : text_(text), source_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (c == '(') { t.kind = Tok::lparen; t.text = "("; advance(); }
      else if (c == ')') { t.kind = Tok::rparen; t.text = ")"; advance(); }
      else if (c == ',') { t.kind = Tok::comma; t.text = ","; advance(); }
      else if (c == '<' || c == '>' || c == '=' || c == '!') {
        t.kind = Tok::op;
        t.text.push_back(c);
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=' && c != '=') {
          t.text.push_back('=');
          advance();
        }
        if (t.text == "!") throw ParseError(source_, t.line, t.column, "stray '!'", {"!="});
      } else if (c == '?') {
        advance();
        t.kind = Tok::variable;
        while (pos_ < text_.size() && word_char(text_[pos_]) && text_[pos_] != '/') t.text.push_back(advance());
        if (t.text.empty()) throw ParseError(source_, t.line, t.column, "empty variable name", {"variable name"});
      } else if (c == '"') {
        t.kind = Tok::string;
        std::size_t start = pos_;
        advance();
        while (true) {
          if (pos_ >= text_.size() || text_[pos_] == '\n')
            throw ParseError(source_, t.line, t.column, "unterminated text literal", {"\""});
          char d = advance();
          if (d == '\\' && pos_ < text_.size()) advance();
          else if (d == '"') break;
        }
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (word_char(c)) {
        t.kind = Tok::word;
        while (pos_ < text_.size() && word_char(text_[pos_])) t.text.push_back(advance());
      } else {
        throw ParseError(source_, t.line, t.column, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::set<std::string> kKeywords{"RULE", "WHEN", "AND", "THEN", "END", "assert", "directive"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::string& source) : toks_(std::move(tokens)), source_(source) {}

  RuleBase run() {
    RuleBase rb;
    std::set<std::string> names;
    while (peek().kind != Tok::end) {
      const Token& start = peek();
      Rule r = rule();
      if (!names.insert(r.name).second)
        throw ParseError(source_, start.line, start.column, "duplicate rule name '" + r.name + "'");
      r.priority = static_cast<int>(rb.rules.size());
      rb.rules.push_back(std::move(r));
    }
    return rb;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& message, std::vector<std::string> expected) const {
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(source_, t.line, t.column, message + ", found " + found, std::move(expected));
  }

  bool at_keyword(const char* kw) const { return peek().kind == Tok::word && peek().text == kw; }

  void keyword(const char* kw, std::vector<std::string> expected = {}) {
    if (!at_keyword(kw)) {
      if (expected.empty()) expected = {kw};
      fail(peek(), std::string("expected ") + kw, std::move(expected));
    }
    next();
  }

  void punct(Tok kind, const char* text) {
    if (peek().kind != kind) fail(peek(), std::string("expected '") + text + "'", {text});
    next();
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::variable) {
      next();
      return Variable{t.text};
    }
    if (t.kind == Tok::string) {
      next();
      auto v = parse_value(t.text);
      if (!v) fail(t, "malformed text literal", {"text"});
      return *v;
    }
    if (t.kind == Tok::word && !kKeywords.contains(t.text)) {
      auto v = parse_value(t.text);
      if (!v) fail(t, "malformed constant", {"identifier", "number"});
      next();
      return *v;
    }
    fail(t, "expected term", {"variable", "constant"});
  }

  TriplePattern pattern() {
    punct(Tok::lparen, "(");
    Term s = term();
    punct(Tok::comma, ",");
    Term p = term();
    punct(Tok::comma, ",");
    Term o = term();
    punct(Tok::rparen, ")");
    return {std::move(s), std::move(p), std::move(o)};
  }

  Guard guard() {
    const Token& var = next();
    const Token& op = peek();
    static const std::map<std::string, CompareOp> ops{{"<", CompareOp::lt},  {"<=", CompareOp::le},
                                                      {"=", CompareOp::eq},  {"!=", CompareOp::ne},
                                                      {">", CompareOp::gt},  {">=", CompareOp::ge}};
    if (op.kind != Tok::op || !ops.contains(op.text)) fail(op, "expected comparison", {"<", "<=", "=", "!=", ">", ">="});
    next();
    Term c = term();
    if (!std::holds_alternative<Value>(c)) fail(toks_[pos_ - 1], "guard must compare with a constant", {"constant"});
    return Guard{var.text, ops.at(op.text), std::get<Value>(c)};
  }

  Condition condition() {
    if (peek().kind == Tok::lparen) return pattern();
    if (peek().kind == Tok::variable) return guard();
    fail(peek(), "expected condition", {"(", "variable"});
  }

  Conclusion conclusion() {
    if (at_keyword("assert")) {
      next();
      return pattern();
    }
    if (at_keyword("directive")) {
      next();
      const Token& k = peek();
      auto kind = k.kind == Tok::word ? directive_kind_from_string(k.text) : std::nullopt;
      if (!kind) fail(k, "unknown directive", {"present", "skip", "embed_tool", "link_blogs"});
      next();
      DirectiveTemplate d{*kind, {}};
      punct(Tok::lparen, "(");
      if (peek().kind != Tok::rparen) {
        d.args.push_back(term());
        while (peek().kind == Tok::comma) {
          next();
          d.args.push_back(term());
        }
      }
      punct(Tok::rparen, ")");
      if (d.args.size() != directive_arity(*kind))
        fail(k, std::string(to_string(*kind)) + " takes " + std::to_string(directive_arity(*kind)) + " arguments",
             {});
      check_directive_constants(k, d);
      return d;
    }
    fail(peek(), "expected conclusion", {"assert", "directive"});
  }

  void check_directive_constants(const Token& at, const DirectiveTemplate& d) {
    auto constant = [&](std::size_t i) -> const Value* { return std::get_if<Value>(&d.args[i]); };
    for (std::size_t i = 0; i < d.args.size(); ++i) {
      if (auto* v = constant(i); v && !v->is_identifier())
        fail(at, "directive arguments must be identifiers", {"identifier"});
    }
    if (d.kind != DirectiveKind::present) return;
    if (auto* m = constant(1); m && !modality_ok(m->str()))
      fail(at, "unknown modality '" + m->str() + "'", {"audio", "video", "text"});
    if (auto* o = constant(2); o && o->str() != "deductive" && o->str() != "inductive")
      fail(at, "unknown ordering '" + o->str() + "'", {"deductive", "inductive"});
  }

  static bool modality_ok(const std::string& m) { return m == "audio" || m == "video" || m == "text"; }

  Rule rule() {
    keyword("RULE");
    const Token& name = peek();
    if (name.kind != Tok::word || kKeywords.contains(name.text) || !is_identifier(name.text))
      fail(name, "expected rule name", {"rule name"});
    next();
    Rule r;
    r.name = name.text;
    keyword("WHEN");

    std::set<std::string> bound;
    auto add_condition = [&]() {
      const Token& at = peek();
      Condition c = condition();
      if (auto* p = std::get_if<TriplePattern>(&c)) {
        for (const Term* t : {&p->subject, &p->predicate, &p->object})
          if (auto* v = std::get_if<Variable>(t)) bound.insert(v->name);
      } else {
        const auto& g = std::get<Guard>(c);
        if (!bound.contains(g.variable))
          throw ParseError(source_, at.line, at.column,
                           "rule " + r.name + ": guard uses unbound variable ?" + g.variable);
      }
      r.conditions.push_back(std::move(c));
    };

    if (peek().kind != Tok::lparen) fail(peek(), "expected pattern", {"("});
    add_condition();
    while (at_keyword("AND")) {
      next();
      add_condition();
    }
    keyword("THEN", {"AND", "THEN"});

    auto add_conclusion = [&]() {
      const Token& at = peek();
      Conclusion c = conclusion();
      auto check = [&](const Term& t) {
        if (auto* v = std::get_if<Variable>(&t); v && !bound.contains(v->name))
          throw ParseError(source_, at.line, at.column,
                           "rule " + r.name + ": conclusion uses unbound variable ?" + v->name);
      };
      if (auto* p = std::get_if<TriplePattern>(&c)) {
        check(p->subject);
        check(p->predicate);
        check(p->object);
      } else {
        for (const auto& t : std::get<DirectiveTemplate>(c).args) check(t);
      }
      r.conclusions.push_back(std::move(c));
    };

    add_conclusion();
    while (at_keyword("AND")) {
      next();
      add_conclusion();
    }
    keyword("END", {"AND", "END"});
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::string& source_;
};

std::string term_source(const Term& t) {
  if (auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
  return std::get<Value>(t).canonical();
}

std::string pattern_source(const TriplePattern& p) {
  return "(" + term_source(p.subject) + ", " + term_source(p.predicate) + ", " + term_source(p.object) + ")";
}

}  // namespace

RuleBase parse_rules(std::string_view text, const std::string& source) {
  RuleBase rb = Parser(Lexer(text, source).run(), source).run();
  rb.source = std::string(text);
  return rb;
}

RuleBase load_rules(const std::string& path) { return parse_rules(read_file(path), path); }

std::string to_source(const Rule& r) {
  std::string out = "RULE " + r.name + " WHEN ";
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    if (i) out += " AND ";
    if (auto* p = std::get_if<TriplePattern>(&r.conditions[i])) {
      out += pattern_source(*p);
    } else {
      const auto& g = std::get<Guard>(r.conditions[i]);
      out += "?" + g.variable + " " + std::string(to_string(g.op)) + " " + g.constant.canonical();
    }
  }
  out += " THEN ";
  for (std::size_t i = 0; i < r.conclusions.size(); ++i) {
    if (i) out += " AND ";
    if (auto* p = std::get_if<TriplePattern>(&r.conclusions[i])) {
      out += "assert " + pattern_source(*p);
    } else {
      const auto& d = std::get<DirectiveTemplate>(r.conclusions[i]);
      out += "directive " + std::string(to_string(d.kind)) + "(";
      for (std::size_t j = 0; j < d.args.size(); ++j) {
        if (j) out += ", ";
        out += term_source(d.args[j]);
      }
      out += ")";
    }
  }
  return out + " END";
}

std::string to_source(const RuleBase& rb) {
  std::string out;
  for (const auto& r : rb.rules) out += to_source(r) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Inference

namespace {

std::optional<Value> resolve(const Term& t, const Binding& b) {
  if (auto* v = std::get_if<Value>(&t)) return *v;
  auto it = b.find(std::get<Variable>(t).name);
  if (it == b.end()) return std::nullopt;
  return it->second;
}

struct Derivation {
  std::size_t rule = 0;
  Binding binding;
  std::vector<Fact> premises;
};

// Records the first derivation of every asserted fact and directive.
struct Recorder {
  std::map<Fact, Derivation> facts;
  std::map<std::string, Derivation> directives;  // by canonical form
};

// Enumerates matches of a rule's patterns where pattern i draws from
// sources[i]; guards are checked once every pattern is matched.
void join(const std::vector<TriplePattern>& patterns, const std::vector<Guard>& guards,
          const std::vector<const FactSet*>& sources, std::size_t i, Binding& binding,
          std::vector<Fact>& premises, std::map<Binding, std::vector<Fact>>& out) {
  if (i == patterns.size()) {
    for (const auto& g : guards)
      if (!evaluate_guard(g, binding)) return;
    out.emplace(binding, premises);
    return;
  }
  for (const auto& f : *sources[i]) {
    Binding trial = binding;
    if (!unify(patterns[i], f, trial)) continue;
    premises.push_back(f);
    join(patterns, guards, sources, i + 1, trial, premises, out);
    premises.pop_back();
  }
}

std::size_t herbrand_budget(const FactSet& facts, const RuleBase& rb) {
  std::set<std::string> constants;
  for (const auto& f : facts) {
    constants.insert(f.subject);
    constants.insert(f.predicate);
    constants.insert(f.object.canonical());
  }
  for (const auto& r : rb.rules)
    for (const auto& c : r.conclusions)
      if (auto* p = std::get_if<TriplePattern>(&c))
        for (const Term* t : {&p->subject, &p->predicate, &p->object})
          if (auto* v = std::get_if<Value>(t)) constants.insert(v->canonical());
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 4;
  std::size_t n = std::max<std::size_t>(constants.size(), 1);
  std::size_t base = n;
  for (int i = 0; i < 2 && base < cap; ++i) base = base > cap / n ? cap : base * n;
  std::size_t rules = std::max<std::size_t>(rb.rules.size(), 1);
  return base > cap / rules ? cap : base * rules;
}

Inference run_inference(const FactSet& input, const RuleBase& rb, Recorder* rec) {
  Inference result;
  result.derived = input;
  FactSet delta = input;
  FactSet old;
  const std::size_t budget = herbrand_budget(input, rb);

  std::vector<std::vector<TriplePattern>> patterns;
  std::vector<std::vector<Guard>> guards;
  for (const auto& r : rb.rules) {
    patterns.push_back(r.patterns());
    guards.push_back(r.guards());
  }

  while (!delta.empty()) {
    if (++result.rounds > budget) throw std::logic_error("inference exceeded its iteration budget");
    FactSet fresh;
    for (std::size_t ri = 0; ri < rb.rules.size(); ++ri) {
      const Rule& rule = rb.rules[ri];
      const auto& pats = patterns[ri];
      std::map<Binding, std::vector<Fact>> matches;
      for (std::size_t i = 0; i < pats.size(); ++i) {
        std::vector<const FactSet*> sources(pats.size());
        for (std::size_t j = 0; j < pats.size(); ++j)
          sources[j] = j < i ? &old : (j == i ? &delta : &result.derived);
        Binding b;
        std::vector<Fact> premises;
        join(pats, guards[ri], sources, 0, b, premises, matches);
      }
      for (const auto& [binding, premises] : matches) {
        Firing firing = instantiate(rule, binding);
        for (auto& f : firing.facts) {
          if (result.derived.contains(f) || fresh.contains(f)) continue;
          if (rec) rec->facts.emplace(f, Derivation{ri, binding, premises});
          fresh.insert(std::move(f));
        }
        for (auto& d : firing.directives) {
          if (rec) rec->directives.emplace(d.canonical(), Derivation{ri, binding, premises});
          result.emitted.push_back(std::move(d));
        }
      }
    }
    old = result.derived;
    result.derived.insert(fresh);
    delta = std::move(fresh);
  }

  std::set<std::string> keys;
  for (const auto& d : result.emitted)
    if (keys.insert(d.key()).second) result.directives.push_back(d);
  return result;
}

}  // namespace

Firing instantiate(const Rule& rule, const Binding& binding) {
  Firing out;
  for (const auto& c : rule.conclusions) {
    if (auto* p = std::get_if<TriplePattern>(&c)) {
      auto s = resolve(p->subject, binding), pr = resolve(p->predicate, binding), o = resolve(p->object, binding);
      if (!s || !pr || !o || !s->is_identifier() || !pr->is_identifier()) continue;
      out.facts.emplace_back(s->str(), pr->str(), *o);
    } else {
      const auto& t = std::get<DirectiveTemplate>(c);
      std::vector<Value> args;
      for (const auto& a : t.args) {
        auto v = resolve(a, binding);
        if (!v) throw Error("rule " + rule.name + ": unbound directive argument");
        args.push_back(*v);
      }
      out.directives.emplace_back(t.kind, std::move(args));
    }
  }
  return out;
}

Inference infer(const FactSet& facts, const RuleBase& rb) { return run_inference(facts, rb, nullptr); }

std::vector<TraceStep> explain(const FactSet& facts, const RuleBase& rb, const Directive& directive) {
  Recorder rec;
  Inference inf = run_inference(facts, rb, &rec);
  if (std::find(inf.directives.begin(), inf.directives.end(), directive) == inf.directives.end())
    throw NotFoundError("directive " + directive.canonical() + " is not derivable");

  std::vector<TraceStep> trace;
  std::set<Fact> visited;
  // Premises in derivation order, then the firing itself.
  std::function<void(const Fact&)> visit = [&](const Fact& f) {
    if (!visited.insert(f).second) return;
    auto it = rec.facts.find(f);
    if (it == rec.facts.end()) return;  // input fact
    for (const auto& p : it->second.premises) visit(p);
    trace.push_back({rb.rules[it->second.rule].name, it->second.binding});
  };
  const Derivation& d = rec.directives.at(directive.canonical());
  for (const auto& p : d.premises) visit(p);
  trace.push_back({rb.rules[d.rule].name, d.binding});
  return trace;
}

std::vector<std::string> format_directives(const std::vector<Directive>& directives) {
  std::vector<const Directive*> sorted;
  for (const auto& d : directives) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(), [](const Directive* a, const Directive* b) {
    auto ka = std::string(to_string(a->kind())), kb = std::string(to_string(b->kind()));
    if (ka != kb) return ka < kb;
    if (a->key() != b->key()) return a->key() < b->key();
    return a->canonical() < b->canonical();
  });
  std::vector<std::string> out;
  for (const auto* d : sorted) out.push_back(d->canonical());
  return out;
}

}  // namespace at
