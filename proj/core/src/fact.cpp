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

#include "at/fact.hpp"

#include <algorithm>
#include <cstdio>

#include "at/error.hpp"

namespace at {

namespace {

bool is_identifier_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == ':' || c == '.' || c == '-';
}

bool looks_integer(std::string_view s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::string quote(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

void append_utf8(std::string& out, unsigned cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Cursor over one line of fact text.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no, const std::string& source)
      : line_(line), line_no_(line_no), source_(source) {}

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
  }
  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }
  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const {
    throw ParseError(source_, line_no_, column(), message, std::move(expected));
  }

  std::string identifier(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_identifier_char(line_[pos_])) ++pos_;
    if (pos_ == start) {
      pos_ = start;
      fail(std::string("expected ") + what, {what});
    }
    std::string tok(line_.substr(start, pos_ - start));
    if (!is_identifier(tok)) {
      pos_ = start;
      fail(std::string("numeric token where ") + what + " expected", {what});
    }
    return tok;
  }

  Value object() {
    skip_space();
    if (at_end()) fail("expected object", {"object"});
    if (peek() == '"') return Value::text(text_literal());
    std::size_t start = pos_;
    while (pos_ < line_.size() && (is_identifier_char(line_[pos_]) || line_[pos_] == '/')) ++pos_;
    if (pos_ == start) fail("expected object", {"object"});
    auto v = parse_value(line_.substr(start, pos_ - start));
    if (!v) {
      pos_ = start;
      fail("malformed object token", {"identifier", "integer", "rational", "text"});
    }
    return *v;
  }

  void terminator() {
    skip_space();
    if (at_end() || peek() != '.') fail("missing terminal '.'", {"."});
    ++pos_;
    skip_space();
    if (!at_end()) fail("unexpected content after '.'", {"end of line"});
  }

 private:
  std::string text_literal() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated text literal", {"\""});
      char c = line_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) fail("dangling escape", {"escape"});
      char e = line_[pos_++];
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'u': {
          if (pos_ + 4 > line_.size()) fail("short \\u escape", {"4 hex digits"});
          unsigned cp = 0;
          for (int i = 0; i < 4; ++i) {
            char h = line_[pos_++];
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<unsigned>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<unsigned>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<unsigned>(h - 'A' + 10);
            else fail("bad hex digit in \\u escape", {"hex digit"});
          }
          append_utf8(out, cp);
          break;
        }
        default:
          --pos_;
          fail("unknown escape", {"\\\"", "\\\\", "\\n", "\\t", "\\r", "\\u"});
      }
    }
  }

  std::string_view line_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
  const std::string& source_;
};

}  // namespace

bool is_identifier(std::string_view token) {
  if (token.empty()) return false;
  if (!std::all_of(token.begin(), token.end(), is_identifier_char)) return false;
  return !looks_integer(token);
}

Value::Value(Data data) : data_(std::move(data)) {
  switch (kind()) {
    case Kind::identifier: canonical_ = std::get<Ident>(data_).name; break;
    case Kind::text: canonical_ = quote(std::get<Text>(data_).value); break;
    case Kind::integer: canonical_ = std::to_string(std::get<std::int64_t>(data_)); break;
    case Kind::rational: canonical_ = std::get<Rational>(data_).to_string(); break;
  }
}

Value Value::id(std::string name) {
  if (!at::is_identifier(name)) throw Error("invalid identifier '" + name + "'");
  return Value(Ident{std::move(name)});
}

Value Value::text(std::string value) { return Value(Text{std::move(value)}); }

Value Value::integer(std::int64_t value) { return Value(value); }

Value Value::rational(Rational value) { return Value(value); }

const std::string& Value::str() const {
  static const std::string empty;
  if (auto* i = std::get_if<Ident>(&data_)) return i->name;
  if (auto* t = std::get_if<Text>(&data_)) return t->value;
  return empty;
}

Rational Value::as_rational() const {
  if (auto* i = std::get_if<std::int64_t>(&data_)) return Rational(*i);
  return std::get<Rational>(data_);
}

Fact::Fact(std::string s, std::string p, Value o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (!is_identifier(subject)) throw Error("invalid fact subject '" + subject + "'");
  if (!is_identifier(predicate)) throw Error("invalid fact predicate '" + predicate + "'");
}

std::string Fact::to_line() const { return subject + " " + predicate + " " + object.canonical() + " ."; }

std::strong_ordering operator<=>(const Fact& a, const Fact& b) {
  if (auto c = a.subject.compare(b.subject) <=> 0; c != 0) return c;
  if (auto c = a.predicate.compare(b.predicate) <=> 0; c != 0) return c;
  return a.object <=> b.object;
}

FactSet::FactSet(std::initializer_list<Fact> facts) : facts_(facts) {}

std::vector<Fact> FactSet::about(std::string_view subject) const {
  std::vector<Fact> out;
  for (const auto& f : facts_)
    if (f.subject == subject) out.push_back(f);
  return out;
}

std::string serialize_facts(const FactSet& facts) {
  std::string out;
  for (const auto& f : facts) {
    out += f.to_line();
    out.push_back('\n');
  }
  return out;
}

FactSet parse_facts(std::string_view text, const std::string& source) {
  FactSet out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    LineScanner scan(line, line_no, source);
    scan.skip_space();
    if (!scan.at_end()) {
      std::string subject = scan.identifier("subject");
      std::string predicate = scan.identifier("predicate");
      Value object = scan.object();
      scan.terminator();
      out.insert(Fact(std::move(subject), std::move(predicate), std::move(object)));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::string format_value(const Value& v) { return v.canonical(); }

std::optional<Value> parse_value(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '"') {
    try {
      std::string line = "x x " + std::string(token) + " .";
      auto fs = parse_facts(line);
      return fs.begin()->object;
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }
  if (token.find('/') != std::string_view::npos) {
    auto r = Rational::parse(token);
    if (!r) return std::nullopt;
    return Value::rational(*r);
  }
  if (looks_integer(token)) {
    auto r = Rational::parse(token);
    if (!r) return std::nullopt;
    return Value::integer(r->num());
  }
  if (!is_identifier(token)) return std::nullopt;
  return Value::id(std::string(token));
}

Term make_term(std::string_view token) {
  if (!token.empty() && token.front() == '?') return Variable{std::string(token.substr(1))};
  auto v = parse_value(token);
  if (!v) throw Error("invalid term '" + std::string(token) + "'");
  return *v;
}

namespace {

bool unify_term(const Term& term, const Value& value, Binding& binding) {
  if (auto* c = std::get_if<Value>(&term)) return *c == value;
  const auto& name = std::get<Variable>(term).name;
  auto [it, inserted] = binding.emplace(name, value);
  return inserted || it->second == value;
}

}  // namespace

bool unify(const TriplePattern& pattern, const Fact& fact, Binding& binding) {
  Binding trial = binding;
  if (!unify_term(pattern.subject, Value::id(fact.subject), trial)) return false;
  if (!unify_term(pattern.predicate, Value::id(fact.predicate), trial)) return false;
  if (!unify_term(pattern.object, fact.object, trial)) return false;
  binding = std::move(trial);
  return true;
}

std::vector<Binding> query(const FactSet& facts, const TriplePattern& pattern) {
  std::vector<Binding> out;
  for (const auto& f : facts) {
    Binding b;
    if (unify(pattern, f, b)) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Binding& a, const Binding& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const auto& x, const auto& y) { return x.second < y.second; });
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_binding(const Binding& binding) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : binding) {
    if (!first) out += ", ";
    first = false;
    out += "?" + k + "=" + v.canonical();
  }
  return out + "}";
}

}  // namespace at
