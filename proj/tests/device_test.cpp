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

#include "at/device.hpp"
#include "at/error.hpp"
#include "at/text.hpp"
#include "support.hpp"

namespace at {
namespace {

using testing::maetic;
using testing::shipped_config;
using testing::shipped_rules;

PresentationSection section(const std::string& id, SectionKind kind) {
  return PresentationSection{id, kind, {{Modality::text, id + ".txt"}}};
}

std::vector<std::string> ids(const std::vector<PresentationSection>& s) {
  std::vector<std::string> out;
  for (const auto& x : s) out.push_back(x.section_id);
  return out;
}

TEST(OrderPresentation, DeductivePutsPrinciplesFirst) {
  std::vector<PresentationSection> s{section("e1", SectionKind::example), section("p1", SectionKind::principle),
                                     section("e2", SectionKind::example), section("p2", SectionKind::principle)};
  EXPECT_EQ(ids(order_presentation(s, Ordering::deductive)), (std::vector<std::string>{"p1", "p2", "e1", "e2"}));
  EXPECT_EQ(ids(order_presentation(s, Ordering::inductive)), (std::vector<std::string>{"e1", "e2", "p1", "p2"}));
}

TEST(OrderPresentation, AllPrinciplesUnchanged) {
  std::vector<PresentationSection> s{section("p2", SectionKind::principle), section("p1", SectionKind::principle)};
  EXPECT_EQ(ids(order_presentation(s, Ordering::deductive)), ids(s));
  EXPECT_EQ(ids(order_presentation(s, Ordering::inductive)), ids(s));
}

TEST(OrderPresentation, Idempotent) {
  std::vector<PresentationSection> s{section("e1", SectionKind::example), section("p1", SectionKind::principle),
                                     section("e2", SectionKind::example)};
  auto once = order_presentation(s, Ordering::deductive);
  EXPECT_EQ(order_presentation(once, Ordering::deductive), once);
}

MethodDefinition one_step_method() {
  MethodDefinition m;
  m.method_id = "tiny";
  m.name = "Tiny";
  m.steps = {{"only", "Only step", Rational(1), {"report"}}};
  m.presentation_sections = {section("p", SectionKind::principle)};
  return m;
}

TeachingUnit small_unit(const std::string& method_id, int teams) {
  TeachingUnit u;
  u.unit_id = "small";
  u.title = "Small";
  u.lecture_hours = Rational(2);
  u.practical_hours = Rational(4);
  u.session_duration = Rational(2);
  u.group_count = 1;
  u.groups = {{{"ann", "bob", "cy", "dee", "eve"}, teams}};
  u.method_id = method_id;
  return u;
}

TEST(TeamBlog, PageCountIsThreePlusSteps) {
  TeachingUnit u = testing::web_programming_unit();
  Scenario sc = compose_scenario(u, maetic());
  Team team{"g1-team-1", 1, {"a", "b", "c", "d", "e"}};
  SiteTree tree = generate_team_blog(team, sc, maetic());
  EXPECT_EQ(tree.pages.size(), 3 + maetic().steps.size());
  EXPECT_EQ(tree.pages.size(), 8u);
  EXPECT_TRUE(tree.pages.contains("index.html"));
  EXPECT_TRUE(tree.pages.contains("progress.html"));
  EXPECT_TRUE(tree.pages.contains("communication.html"));
  for (const auto& step : maetic().steps) EXPECT_TRUE(tree.pages.contains("steps/" + step.step_id + ".html"));
}

TEST(TeamBlog, OneStepGivesFourPages) {
  TeachingUnit u = small_unit("tiny", 1);
  Scenario sc = compose_scenario(u, one_step_method());
  EXPECT_EQ(generate_team_blog({"team-1", 1, {"ann"}}, sc, one_step_method()).pages.size(), 4u);
}

TEST(TeamBlog, EachDeliveryOnExactlyOneStepPage) {
  Scenario sc = compose_scenario(testing::web_programming_unit(), maetic());
  SiteTree tree = generate_team_blog({"t", 1, {"x"}}, sc, maetic());
  for (const auto& step : maetic().steps)
    for (const auto& d : step.deliveries) {
      int pages = 0;
      for (const auto& [path, page] : tree.pages) {
        if (path.rfind("steps/", 0) != 0) continue;
        std::string html = render_page(page, "standard");
        if (html.find(html_escape(d) + " (due") != std::string::npos) ++pages;
      }
      EXPECT_EQ(pages, 1) << d;
    }
}

std::vector<Team> teams_of(const TeachingUnit& u) {
  std::vector<Team> out;
  for (std::size_t g = 0; g < u.groups.size(); ++g)
    if (u.groups[g].team_count > 0)
      for (auto& t : compose_teams(u.groups[g].members, u.groups[g].team_count, static_cast<int>(g + 1)))
        out.push_back(t);
  return out;
}

std::size_t count_blog_links(const SiteTree& esuitcase) {
  std::size_t n = 0;
  for (const auto& s : esuitcase.pages.at("blogs.html").sections)
    for (const auto& b : s.blocks)
      if (auto* l = std::get_if<Link>(&b); l && l->href.rfind("../blogs/", 0) == 0) ++n;
  return n;
}

TEST(ESuitcase, JonesDirectives) {
  std::vector<Directive> ds{Directive::present("maetic", "audio", "deductive"), Directive::skip("active_pedagogy"),
                            Directive::skip("group_pedagogy"), Directive::skip("project_pedagogy"),
                            Directive::embed_tool("spreadsheet")};
  TeachingUnit u = testing::web_programming_unit();
  Scenario sc = compose_scenario(u, maetic());
  SiteTree tree = generate_esuitcase(ds, teams_of(u), maetic(), u, sc, shipped_config());
  EXPECT_EQ(count_blog_links(tree), 5u);
  EXPECT_TRUE(tree.pages.contains("presentations/maetic.html"));
  for (const auto& topic : {"active_pedagogy", "group_pedagogy", "project_pedagogy"})
    EXPECT_FALSE(tree.pages.contains(std::string("presentations/") + topic + ".html"));
  const Page& page = tree.pages.at("presentations/maetic.html");
  std::vector<SectionKind> kinds;
  for (const auto& s : page.sections)
    for (const auto& b : s.blocks)
      if (auto* m = std::get_if<MediaRef>(&b)) {
        EXPECT_EQ(m->modality, Modality::audio);
        kinds.push_back(s.heading.find("(principle)") != std::string::npos ? SectionKind::principle
                                                                           : SectionKind::example);
      }
  EXPECT_FALSE(kinds.empty());
  EXPECT_TRUE(std::is_partitioned(kinds.begin(), kinds.end(), [](SectionKind k) { return k == SectionKind::principle; }));
}

TEST(ESuitcase, MinimalCase) {
  TeachingUnit u = small_unit("tiny", 1);
  Scenario sc = compose_scenario(u, one_step_method());
  SiteTree tree = generate_esuitcase({}, teams_of(u), one_step_method(), u, sc, shipped_config());
  std::vector<std::string> paths;
  for (const auto& [p, page] : tree.pages) paths.push_back(p);
  EXPECT_EQ(paths, (std::vector<std::string>{"blogs.html", "index.html", "logbook.html", "resources.html"}));
  EXPECT_EQ(count_blog_links(tree), 1u);
}

TEST(ESuitcase, TextFallbackWhenModalityMissing) {
  MethodDefinition m = one_step_method();
  TeachingUnit u = small_unit("tiny", 1);
  Scenario sc = compose_scenario(u, m);
  SiteTree tree = generate_esuitcase({Directive::present("tiny", "audio", "deductive")}, teams_of(u), m, u, sc,
                                     shipped_config());
  bool saw_media = false;
  for (const auto& s : tree.pages.at("presentations/tiny.html").sections)
    for (const auto& b : s.blocks)
      if (auto* media = std::get_if<MediaRef>(&b)) {
        saw_media = true;
        EXPECT_EQ(media->modality, Modality::text);
        EXPECT_EQ(media->locator, "p.txt");
      }
  EXPECT_TRUE(saw_media);
}

TEST(ESuitcase, PresentWithoutSectionsNamesTopic) {
  TeachingUnit u = small_unit("tiny", 1);
  Scenario sc = compose_scenario(u, one_step_method());
  try {
    generate_esuitcase({Directive::present("unheard_of", "video", "deductive")}, teams_of(u), one_step_method(), u, sc,
                       shipped_config());
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unheard_of"), std::string::npos);
  }
}

TEST(ESuitcase, StandardDirectivesGiveVideoPagesForEveryTopic) {
  const auto& reg = shipped_config().registry;
  TeachingUnit u = testing::web_programming_unit();
  auto ds = infer(profile_to_facts(default_profile(Uid{1}, reg), reg), shipped_rules()).directives;
  Scenario sc = compose_scenario(u, maetic());
  SiteTree tree = generate_esuitcase(ds, teams_of(u), maetic(), u, sc, shipped_config());
  for (const auto& topic : reg.topics()) {
    const std::string path = "presentations/" + topic + ".html";
    ASSERT_TRUE(tree.pages.contains(path)) << topic;
    for (const auto& s : tree.pages.at(path).sections)
      for (const auto& b : s.blocks)
        if (auto* m = std::get_if<MediaRef>(&b)) EXPECT_NE(m->modality, Modality::audio);
  }
}

TEST(Toolbox, DirectiveEntry) {
  ToolboxManifest m = generate_toolbox({Directive::embed_tool("spreadsheet")}, shipped_config());
  const ToolboxEntry* e = m.find("spreadsheet");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->source, ToolSource::directive);
  EXPECT_EQ(e->locator, "tools/spreadsheet.html");
}

TEST(Toolbox, NoDirectivesGivesStandardList) {
  ToolboxManifest m = generate_toolbox({}, shipped_config());
  ASSERT_EQ(m.entries.size(), shipped_config().standard_toolbox.size());
  for (const auto& e : m.entries) EXPECT_EQ(e.source, ToolSource::standard);
}

TEST(Toolbox, DirectiveWinsOverStandard) {
  const std::string tool = shipped_config().standard_toolbox.front().first;
  ToolboxManifest m = generate_toolbox({Directive::embed_tool(tool)}, shipped_config());
  EXPECT_EQ(m.entries.size(), shipped_config().standard_toolbox.size());
  EXPECT_EQ(m.find(tool)->source, ToolSource::directive);
}

TEST(Toolbox, ManifestLines) {
  ToolboxManifest m;
  m.entries = {{"a", "tools/a.html", ToolSource::directive}, {"b", "x", ToolSource::standard}};
  EXPECT_EQ(m.serialize(), "a | tools/a.html | directive\nb | x | standard\n");
}

TEST(Device, JonesBundleLaws) {
  DeviceBundle b = generate_device(testing::jones_profile(), testing::web_programming_unit(), maetic(), shipped_rules(),
                                   shipped_config());
  EXPECT_EQ(b.team_blogs.size(), 5u);
  EXPECT_EQ(b.teams.size(), 5u);
  EXPECT_EQ(count_blog_links(b.esuitcase), b.team_blogs.size());
  EXPECT_TRUE(check_links(b).empty());
  for (const auto& d : b.directives)
    if (d.kind() == DirectiveKind::skip)
      EXPECT_FALSE(b.esuitcase.pages.contains("presentations/" + d.subject() + ".html"));
  ASSERT_NE(b.toolbox.find("spreadsheet"), nullptr);
  EXPECT_EQ(b.toolbox.find("spreadsheet")->source, ToolSource::directive);
}

TEST(Device, DeterministicBytes) {
  auto make = [] {
    return render_bundle(generate_device(testing::jones_profile(), testing::web_programming_unit(), maetic(),
                                         shipped_rules(), shipped_config()),
                         "standard");
  };
  EXPECT_EQ(make(), make());
}

TEST(Device, SmallestLegalBundle) {
  TeachingUnit u = small_unit("tiny", 1);
  u.practical_hours = Rational(2);
  DeviceBundle b = generate_device(default_profile(Uid{1}, shipped_config().registry), u, one_step_method(),
                                   RuleBase{}, shipped_config());
  ASSERT_EQ(b.team_blogs.size(), 1u);
  EXPECT_EQ(b.team_blogs.begin()->second.pages.size(), 4u);
  EXPECT_EQ(count_blog_links(b.esuitcase), 1u);
}

TEST(Device, StageNamedOnFailure) {
  TeachingUnit u = small_unit("tiny", 1);
  u.practical_hours = Rational(2);
  MethodDefinition m = one_step_method();
  m.steps.push_back({"second", "Second", Rational(1), {}});
  try {
    generate_device(default_profile(Uid{1}, shipped_config().registry), u, m, RuleBase{}, shipped_config());
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "scenario");
  }
}

TEST(Links, BrokenLinkReported) {
  DeviceBundle b = generate_device(testing::jones_profile(), testing::web_programming_unit(), maetic(), shipped_rules(),
                                   shipped_config());
  b.esuitcase.pages.at("index.html").sections.push_back({"Extra", {Link{"missing.html", "Missing"}}});
  auto broken = check_links(b);
  ASSERT_EQ(broken.size(), 1u);
  EXPECT_EQ(broken[0], "esuitcase/index.html -> missing.html");
}

TEST(Render, GoldenPage) {
  Page page{"Logbook <team-1>",
            {{"Members", {Paragraph{"Ann & Bob"}}},
             {"Links", {Link{"progress.html", "Progress"}, MediaRef{Modality::audio, "media/a.mp3"},
                        MediaRef{Modality::video, "media/v.mp4"}, MediaRef{Modality::text, "media/t.txt"},
                        CheckItem{"Report \"v1\""}}}}};
  EXPECT_EQ(render_page(page, "standard"), read_file(testing::source_dir() / "tests/golden/page.html"));
}

TEST(Publish, WritesLayoutAndReplacesPrevious) {
  testing::TempDir dir;
  DeviceBundle b = generate_device(testing::jones_profile(), testing::web_programming_unit(), maetic(), shipped_rules(),
                                   shipped_config());
  std::filesystem::path root = dir.path() / "device" / "web_programming";
  FilesystemPublisher(root).publish(b, "standard");
  write_atomically(root / "stale.html", "old");
  FilesystemPublisher(root).publish(b, "standard");
  auto tree = read_tree(root);
  EXPECT_FALSE(tree.contains("stale.html"));
  EXPECT_EQ(tree, render_bundle(b, "standard"));
  EXPECT_TRUE(tree.contains("toolbox.manifest"));
  EXPECT_TRUE(tree.contains("esuitcase/index.html"));
  EXPECT_TRUE(tree.contains("blogs/g1-team-1/index.html"));
}

}  // namespace
}  // namespace at
