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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "at/error.hpp"
#include "at/rules.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace at {
namespace {

using testing::shipped_config;
using testing::shipped_rules;
using testing::Closure;
using testing::naive_fixpoint;
using testing::RuleGen;

TEST(Parse, DocumentedExampleMatchesHandBuiltTree) {
  RuleBase rb = parse_rules(
      "RULE r1 WHEN (?t, knows_level_maetic, ?l) AND ?l <= little AND (?t, inputs, verbal) "
      "THEN directive present(maetic, audio, deductive) END");
  ASSERT_EQ(rb.rules.size(), 1u);
  const Rule& r = rb.rules[0];
  EXPECT_EQ(r.name, "r1");
  EXPECT_EQ(r.priority, 0);

  auto patterns = r.patterns();
  ASSERT_EQ(patterns.size(), 2u);
  EXPECT_EQ(std::get<Variable>(patterns[0].subject).name, "t");
  EXPECT_EQ(std::get<Value>(patterns[0].predicate), Value::id("knows_level_maetic"));
  EXPECT_EQ(std::get<Variable>(patterns[0].object).name, "l");
  EXPECT_EQ(std::get<Variable>(patterns[1].subject).name, "t");
  EXPECT_EQ(std::get<Value>(patterns[1].predicate), Value::id("inputs"));
  EXPECT_EQ(std::get<Value>(patterns[1].object), Value::id("verbal"));

  auto guards = r.guards();
  ASSERT_EQ(guards.size(), 1u);
  EXPECT_EQ(guards[0].variable, "l");
  EXPECT_EQ(guards[0].op, CompareOp::le);
  EXPECT_EQ(guards[0].constant, Value::id("little"));

  ASSERT_EQ(r.conclusions.size(), 1u);
  const auto& d = std::get<DirectiveTemplate>(r.conclusions[0]);
  EXPECT_EQ(d.kind, DirectiveKind::present);
  ASSERT_EQ(d.args.size(), 3u);
  EXPECT_EQ(std::get<Value>(d.args[0]), Value::id("maetic"));
  EXPECT_EQ(std::get<Value>(d.args[1]), Value::id("audio"));
  EXPECT_EQ(std::get<Value>(d.args[2]), Value::id("deductive"));
}

TEST(Parse, EmptyTextIsEmptyRuleBase) {
  EXPECT_TRUE(parse_rules("").rules.empty());
  EXPECT_TRUE(parse_rules("# only a comment\n\n").rules.empty());
}

TEST(Parse, UnboundConclusionVariableNamed) {
  try {
    parse_rules("RULE lonely WHEN (?t, inputs, verbal) THEN directive skip(?x) END");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("lonely"), std::string::npos) << msg;
    EXPECT_NE(msg.find("?x"), std::string::npos) << msg;
  }
}

TEST(Parse, UnboundGuardVariableRejected) {
  EXPECT_THROW(parse_rules("RULE g WHEN (?t, inputs, verbal) AND ?l <= little THEN directive link_blogs() END"),
               ParseError);
}

TEST(Parse, DuplicateRuleName) {
  EXPECT_THROW(parse_rules("RULE a WHEN (?t, p, q) THEN directive link_blogs() END\n"
                           "RULE a WHEN (?t, p, r) THEN directive link_blogs() END"),
               ParseError);
}

TEST(Parse, SyntaxErrorCarriesPositionAndExpectations) {
  try {
    parse_rules("RULE a WHEN (?t, p, q)\n  THEN directive skip(maetic)\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_rules("RULE a WHEN (?t p, q) THEN directive link_blogs() END");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 17u);
  }
}

TEST(Parse, DirectiveArityAndConstantsChecked) {
  EXPECT_THROW(parse_rules("RULE a WHEN (?t, p, q) THEN directive skip() END"), ParseError);
  EXPECT_THROW(parse_rules("RULE a WHEN (?t, p, q) THEN directive present(maetic, smell, deductive) END"),
               ParseError);
  EXPECT_THROW(parse_rules("RULE a WHEN (?t, p, q) THEN directive unknown(x) END"), ParseError);
}

TEST(Parse, SourceRoundTrip) {
  const RuleBase& rb = shipped_rules();
  RuleBase again = parse_rules(to_source(rb));
  ASSERT_EQ(again.rules.size(), rb.rules.size());
  EXPECT_EQ(to_source(again), to_source(rb));
}

TEST(Guard, KnowledgeLevelsAndNumbers) {
  Binding b{{"l", Value::id("little")}, {"n", Value::integer(3)}, {"s", Value::text("x")}};
  EXPECT_TRUE(evaluate_guard({"l", CompareOp::le, Value::id("little")}, b));
  EXPECT_TRUE(evaluate_guard({"l", CompareOp::lt, Value::id("working")}, b));
  EXPECT_FALSE(evaluate_guard({"l", CompareOp::ge, Value::id("working")}, b));
  EXPECT_TRUE(evaluate_guard({"n", CompareOp::gt, Value::rational(Rational(5, 2))}, b));
  EXPECT_FALSE(evaluate_guard({"n", CompareOp::lt, Value::id("little")}, b));
  EXPECT_FALSE(evaluate_guard({"s", CompareOp::lt, Value::text("y")}, b));
  EXPECT_TRUE(evaluate_guard({"s", CompareOp::ne, Value::text("y")}, b));
}

bool contains(const std::vector<Directive>& ds, const Directive& d) {
  return std::find(ds.begin(), ds.end(), d) != ds.end();
}

TEST(Infer, JonesDirectives) {
  Inference inf = infer(testing::jones_facts(), shipped_rules());
  EXPECT_TRUE(contains(inf.directives, Directive::present("maetic", "audio", "deductive")));
  EXPECT_TRUE(contains(inf.directives, Directive::skip("active_pedagogy")));
  EXPECT_TRUE(contains(inf.directives, Directive::skip("group_pedagogy")));
  EXPECT_TRUE(contains(inf.directives, Directive::skip("project_pedagogy")));
  EXPECT_TRUE(contains(inf.directives, Directive::embed_tool("spreadsheet")));
  for (const auto& d : inf.directives)
    if (d.kind() == DirectiveKind::present) EXPECT_EQ(d.subject(), "maetic");
}

TEST(Infer, DefaultProfilePresentsEveryTopicInVideo) {
  FactSet facts = profile_to_facts(default_profile(Uid{1}, shipped_config().registry), shipped_config().registry);
  Inference inf = infer(facts, shipped_rules());
  // Hand evaluation: personality undeclared -> video + deductive; every
  // topic at none -> present; no tools -> no embed_tool; no skips.
  for (const auto& topic : shipped_config().registry.topics())
    EXPECT_TRUE(contains(inf.directives, Directive::present(topic, "video", "deductive"))) << topic;
  for (const auto& d : inf.directives) {
    EXPECT_NE(d.kind(), DirectiveKind::skip);
    EXPECT_NE(d.kind(), DirectiveKind::embed_tool);
  }
}

TEST(Infer, EmptyRuleBaseChangesNothing) {
  FactSet facts = testing::jones_facts();
  Inference inf = infer(facts, RuleBase{});
  EXPECT_EQ(inf.derived, facts);
  EXPECT_TRUE(inf.directives.empty());
}

TEST(Infer, FirstDirectivePerKeyWins) {
  RuleBase rb = parse_rules(
      "RULE a WHEN (?t, p, ?x) THEN directive present(maetic, audio, deductive) END\n"
      "RULE b WHEN (?t, p, ?x) THEN directive present(maetic, video, inductive) END\n");
  Inference inf = infer(FactSet{Fact("t", "p", Value::id("v"))}, rb);
  ASSERT_EQ(inf.directives.size(), 1u);
  EXPECT_EQ(inf.directives[0], Directive::present("maetic", "audio", "deductive"));
  EXPECT_EQ(inf.emitted.size(), 2u);
}

TEST(Infer, ChainsThroughDerivedFacts) {
  RuleBase rb = parse_rules(
      "RULE step WHEN (?a, edge, ?b) AND (?b, edge, ?c) THEN assert (?a, edge, ?c) END\n");
  FactSet facts;
  for (int i = 0; i < 6; ++i)
    facts.insert(Fact("n" + std::to_string(i), "edge", Value::id("n" + std::to_string(i + 1))));
  Inference inf = infer(facts, rb);
  EXPECT_EQ(inf.derived.size(), 21u);  // all i < j pairs among 7 nodes
  EXPECT_TRUE(inf.derived.contains(Fact("n0", "edge", Value::id("n6"))));
}

TEST(Infer, CanonicalOutputSortedByKindThenKey) {
  auto lines = format_directives(infer(testing::jones_facts(), shipped_rules()).directives);
  EXPECT_EQ(lines, (std::vector<std::string>{"embed_tool(spreadsheet)", "link_blogs()",
                                             "present(maetic,audio,deductive)", "skip(active_pedagogy)",
                                             "skip(group_pedagogy)", "skip(project_pedagogy)"}));
}

TEST(Explain, PresentingRuleWithLevelBinding) {
  auto trace = explain(testing::jones_facts(), shipped_rules(), Directive::present("maetic", "audio", "deductive"));
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(trace.back().rule, "present_maetic");
  EXPECT_EQ(trace.back().binding.at("l"), Value::id("little"));
  bool modality_step = std::any_of(trace.begin(), trace.end(), [](const TraceStep& s) { return s.rule == "modality_audio"; });
  EXPECT_TRUE(modality_step);
}

TEST(Explain, ReplayReproducesDirective) {
  FactSet facts = testing::jones_facts();
  Directive target = Directive::present("maetic", "audio", "deductive");
  FactSet state = facts;
  std::vector<Directive> produced;
  for (const auto& step : explain(facts, shipped_rules(), target)) {
    Firing f = instantiate(*shipped_rules().find(step.rule), step.binding);
    for (auto& fact : f.facts) state.insert(fact);
    produced.insert(produced.end(), f.directives.begin(), f.directives.end());
  }
  EXPECT_TRUE(contains(produced, target));
}

TEST(Explain, NotDerivableIsAnError) {
  EXPECT_THROW(explain(testing::jones_facts(), RuleBase{}, Directive::link_blogs()), NotFoundError);
  EXPECT_THROW(explain(testing::jones_facts(), shipped_rules(), Directive::skip("maetic")), NotFoundError);
}

TEST(Oracle, SemiNaiveEqualsNaiveFixpoint) {
  RuleGen gen(2024);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    RuleBase rb = parse_rules(gen.rulebase());
    FactSet facts = gen.facts();
    Inference inf = infer(facts, rb);
    Closure oracle = naive_fixpoint(facts, rb);
    std::set<std::string> emitted;
    for (const auto& d : inf.emitted) emitted.insert(d.canonical());
    std::set<std::string> keys;
    for (const auto& d : inf.directives) EXPECT_TRUE(keys.insert(d.key()).second) << d.canonical();
    if (inf.derived != oracle.facts || emitted != oracle.directives) {
      ++mismatches;
      ADD_FAILURE() << "instance " << i << "\n" << to_source(rb) << serialize_facts(facts);
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(Properties, MonotoneInFacts) {
  RuleGen gen(99);
  for (int i = 0; i < 100; ++i) {
    RuleBase rb = parse_rules(gen.rulebase());
    FactSet small = gen.facts();
    FactSet big = small;
    big.insert(gen.facts());
    Inference a = infer(small, rb), b = infer(big, rb);
    for (const auto& f : a.derived) ASSERT_TRUE(b.derived.contains(f));
    std::set<std::string> emitted_b;
    for (const auto& d : b.emitted) emitted_b.insert(d.canonical());
    for (const auto& d : a.emitted) ASSERT_TRUE(emitted_b.contains(d.canonical()));
  }
}

TEST(Properties, DeterministicAndOrderIndependent) {
  RuleGen gen(5);
  std::mt19937 shuffle_rng(8);
  for (int i = 0; i < 100; ++i) {
    RuleBase rb = parse_rules(gen.rulebase());
    FactSet facts = gen.facts();
    std::vector<Fact> shuffled(facts.begin(), facts.end());
    std::shuffle(shuffled.begin(), shuffled.end(), shuffle_rng);
    FactSet rebuilt;
    for (auto& f : shuffled) rebuilt.insert(f);
    Inference a = infer(facts, rb), b = infer(rebuilt, rb);
    EXPECT_EQ(serialize_facts(a.derived), serialize_facts(b.derived));
    EXPECT_EQ(format_directives(a.directives), format_directives(b.directives));
  }
}

}  // namespace
}  // namespace at
