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

#include "at/device.hpp"

#include <algorithm>

#include "at/error.hpp"
#include "at/fact_store.hpp"
#include "at/text.hpp"

namespace fs = std::filesystem;

namespace at {

std::string_view to_string(Ordering o) { return o == Ordering::deductive ? "deductive" : "inductive"; }
std::string_view to_string(ToolSource s) { return s == ToolSource::directive ? "directive" : "standard"; }

const ToolboxEntry* ToolboxManifest::find(std::string_view tool) const {
  for (const auto& e : entries)
    if (e.tool == tool) return &e;
  return nullptr;
}

std::string ToolboxManifest::serialize() const {
  std::string out;
  for (const auto& e : entries) out += e.tool + " | " + e.locator + " | " + std::string(to_string(e.source)) + "\n";
  return out;
}

DeviceConfig DeviceConfig::load(const fs::path& dir) {
  DeviceConfig c;
  c.registry = TopicRegistry::load(dir / "topics.registry");
  c.catalog = PresentationCatalog::load(dir / "pedagogies.presentations");
  auto read_pairs = [&](const fs::path& p, auto&& sink) {
    std::string source = p.string();
    for_each_record(read_file(p), [&](std::size_t line, const std::vector<std::string>& f) {
      if (f.size() != 2 || !is_identifier(f[0]) || f[1].empty())
        throw ParseError(source, line, 1, "expected 'tool | locator'", {"tool"});
      sink(f[0], f[1]);
    });
  };
  read_pairs(dir / "standard.toolbox",
             [&](const std::string& t, const std::string& l) { c.standard_toolbox.emplace_back(t, l); });
  read_pairs(dir / "tools.catalog", [&](const std::string& t, const std::string& l) { c.tool_locators[t] = l; });
  return c;
}

std::string DeviceConfig::tool_locator(const std::string& tool) const {
  auto it = tool_locators.find(tool);
  if (it != tool_locators.end()) return it->second;
  for (const auto& [t, l] : standard_toolbox)
    if (t == tool) return l;
  return "tools/" + tool;
}

std::vector<PresentationSection> order_presentation(std::vector<PresentationSection> sections, Ordering ordering) {
  SectionKind first = ordering == Ordering::deductive ? SectionKind::principle : SectionKind::example;
  std::stable_partition(sections.begin(), sections.end(),
                        [&](const PresentationSection& s) { return s.kind == first; });
  return sections;
}

namespace {

std::string format_hours(const Rational& h) {
  if (h.is_integer()) return std::to_string(h.num()) + " h";
  return std::to_string(h.num()) + "/" + std::to_string(h.den()) + " h";
}

std::string step_page(const std::string& step_id) { return "steps/" + step_id + ".html"; }

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

SiteTree generate_team_blog(const Team& team, const Scenario& scenario, const MethodDefinition& method) {
  SiteTree tree;
  tree.root = team.team_id;

  Page index{"Logbook of " + team.team_id, {}};
  PageSection members{"Team members", {}};
  for (const auto& m : team.members) members.blocks.push_back(Paragraph{m});
  index.sections.push_back(std::move(members));
  PageSection nav{"Logbook", {}};
  nav.blocks.push_back(Link{"progress.html", "Progress of the work"});
  for (const auto& step : method.steps) nav.blocks.push_back(Link{step_page(step.step_id), "Step: " + step.name});
  nav.blocks.push_back(Link{"communication.html", "Team communication"});
  index.sections.push_back(std::move(nav));
  tree.pages["index.html"] = std::move(index);

  Page progress{"Progress of " + team.team_id, {}};
  for (const auto& step : method.steps) {
    const auto& [first, last] = scenario.step_spans.at(step.step_id);
    PageSection s{step.name, {}};
    s.blocks.push_back(Paragraph{"Sessions " + std::to_string(first) + " to " + std::to_string(last)});
    s.blocks.push_back(CheckItem{"Step completed"});
    s.blocks.push_back(Link{step_page(step.step_id), "Step details"});
    progress.sections.push_back(std::move(s));
  }
  progress.sections.push_back({"Back", {Link{"index.html", "Logbook home"}}});
  tree.pages["progress.html"] = std::move(progress);

  for (const auto& step : method.steps) {
    Page page{step.name, {}};
    PageSection sessions{"Sessions", {}};
    PageSection deliveries{"Deliveries", {}};
    for (const auto& s : scenario.sessions) {
      if (s.assigned_step != step.step_id) continue;
      sessions.blocks.push_back(Paragraph{"Session " + std::to_string(s.index) + " (" + format_hours(s.duration) + ")"});
      for (const auto& d : s.due_deliveries)
        deliveries.blocks.push_back(CheckItem{d + " (due session " + std::to_string(s.index) + ")"});
    }
    if (deliveries.blocks.empty()) deliveries.blocks.push_back(Paragraph{"No delivery for this step."});
    page.sections.push_back(std::move(sessions));
    page.sections.push_back(std::move(deliveries));
    page.sections.push_back({"Back", {Link{"../index.html", "Logbook home"}}});
    tree.pages[step_page(step.step_id)] = std::move(page);
  }

  Page comm{"Communication of " + team.team_id, {}};
  PageSection who{"Members", {}};
  for (const auto& m : team.members) who.blocks.push_back(Paragraph{m});
  comm.sections.push_back(std::move(who));
  comm.sections.push_back({"Messages", {Paragraph{"No messages yet."}}});
  comm.sections.push_back({"Back", {Link{"index.html", "Logbook home"}}});
  tree.pages["communication.html"] = std::move(comm);
  return tree;
}

SiteTree generate_esuitcase(const std::vector<Directive>& directives, const std::vector<Team>& teams,
                            const MethodDefinition& method, const TeachingUnit& unit, const Scenario& scenario,
                            const DeviceConfig& config) {
  SiteTree tree;
  tree.root = "esuitcase";
  for (const auto& r : unit.resources) tree.external_locators.insert(r.locator);

  Page index{"Pedagogical device: " + unit.title, {}};
  PageSection tu{"Teaching unit", {}};
  tu.blocks.push_back(Paragraph{"Domain project: " + unit.domain_project});
  tu.blocks.push_back(Paragraph{"Client needs: " + unit.client_needs});
  tu.blocks.push_back(Paragraph{"Lectures: " + format_hours(unit.lecture_hours)});
  tu.blocks.push_back(Paragraph{"Practical work: " + format_hours(unit.practical_hours) + " in " +
                                std::to_string(scenario.sessions.size()) + " sessions of " +
                                format_hours(unit.session_duration)});
  if (scenario.unscheduled_hours > Rational(0))
    tu.blocks.push_back(Paragraph{"Unscheduled practical time: " + format_hours(scenario.unscheduled_hours)});
  tu.blocks.push_back(Paragraph{"Groups: " + std::to_string(unit.group_count) + ", teams: " +
                                std::to_string(teams.size())});
  tu.blocks.push_back(Paragraph{"Method: " + method.name});
  index.sections.push_back(std::move(tu));

  PageSection presentations{"Presentations", {}};
  for (const auto& d : directives) {
    if (d.kind() != DirectiveKind::present) continue;
    const std::string topic = d.subject();
    const auto& sections =
        topic == method.method_id ? method.presentation_sections : config.catalog.sections(topic);
    if (sections.empty()) throw Error("no presentation sections for topic " + topic);
    auto modality = modality_from_string(d.modality());
    if (!modality) throw Error("unknown modality " + d.modality() + " for topic " + topic);
    Ordering ordering = d.ordering() == "inductive" ? Ordering::inductive : Ordering::deductive;

    std::string label = topic == method.method_id ? method.name : config.registry.label(topic);
    Page page{label, {}};
    page.sections.push_back(
        {"About this presentation",
         {Paragraph{"Modality: " + std::string(to_string(*modality)) + ". Ordering: " +
                    std::string(to_string(ordering)) +
                    (ordering == Ordering::deductive ? " (principles before examples)." : " (examples before principles).")}}});
    for (const auto& s : order_presentation(sections, ordering)) {
      auto it = s.media.find(*modality);
      MediaRef ref = it != s.media.end() ? MediaRef{*modality, it->second}
                                          : MediaRef{Modality::text, s.media.at(Modality::text)};
      tree.external_locators.insert(ref.locator);
      page.sections.push_back({s.section_id + " (" + std::string(to_string(s.kind)) + ")", {ref}});
    }
    page.sections.push_back({"Back", {Link{"../index.html", "Device home"}}});
    std::string path = "presentations/" + topic + ".html";
    presentations.blocks.push_back(Link{path, label});
    tree.pages[path] = std::move(page);
  }
  if (presentations.blocks.empty()) presentations.blocks.push_back(Paragraph{"No presentation needed."});
  index.sections.push_back(std::move(presentations));
  index.sections.push_back({"Teacher space",
                            {Link{"logbook.html", "Teacher logbook"}, Link{"resources.html", "Pedagogical resources"},
                             Link{"blogs.html", "Team logbooks"}}});
  tree.pages["index.html"] = std::move(index);

  Page logbook{"Teacher logbook", {}};
  for (const auto& step : method.steps) {
    const auto& [first, last] = scenario.step_spans.at(step.step_id);
    PageSection s{step.name, {}};
    s.blocks.push_back(Paragraph{"Sessions " + std::to_string(first) + " to " + std::to_string(last)});
    if (!step.deliveries.empty()) s.blocks.push_back(Paragraph{"Deliveries: " + join(step.deliveries, ", ")});
    logbook.sections.push_back(std::move(s));
  }
  PageSection logres{"Pedagogical resources", {}};
  for (const auto& r : unit.resources) logres.blocks.push_back(Link{r.locator, r.label});
  if (logres.blocks.empty()) logres.blocks.push_back(Paragraph{"No resources listed."});
  logbook.sections.push_back(std::move(logres));
  logbook.sections.push_back({"Back", {Link{"index.html", "Device home"}}});
  tree.pages["logbook.html"] = std::move(logbook);

  Page resources{"Pedagogical resources", {}};
  PageSection list{"Resources", {}};
  for (const auto& r : unit.resources) list.blocks.push_back(Link{r.locator, r.label});
  if (list.blocks.empty()) list.blocks.push_back(Paragraph{"No resources listed."});
  resources.sections.push_back(std::move(list));
  resources.sections.push_back({"Back", {Link{"index.html", "Device home"}}});
  tree.pages["resources.html"] = std::move(resources);

  Page blogs{"Team logbooks", {}};
  std::map<int, PageSection> by_group;
  for (const auto& t : teams) {
    auto& sec = by_group[t.group_index];
    sec.heading = "Group " + std::to_string(t.group_index);
    sec.blocks.push_back(Link{"../blogs/" + t.team_id + "/index.html", t.team_id + ": " + join(t.members, ", ")});
  }
  for (auto& [g, sec] : by_group) blogs.sections.push_back(std::move(sec));
  if (teams.empty()) blogs.sections.push_back({"Teams", {Paragraph{"No teams composed."}}});
  blogs.sections.push_back({"Back", {Link{"index.html", "Device home"}}});
  tree.pages["blogs.html"] = std::move(blogs);
  return tree;
}

ToolboxManifest generate_toolbox(const std::vector<Directive>& directives, const DeviceConfig& config) {
  std::map<std::string, ToolboxEntry> entries;
  for (const auto& d : directives) {
    if (d.kind() != DirectiveKind::embed_tool) continue;
    const std::string tool = d.subject();
    entries.try_emplace(tool, ToolboxEntry{tool, config.tool_locator(tool), ToolSource::directive});
  }
  for (const auto& [tool, locator] : config.standard_toolbox)
    entries.try_emplace(tool, ToolboxEntry{tool, locator, ToolSource::standard});
  ToolboxManifest m;
  for (auto& [tool, e] : entries) m.entries.push_back(std::move(e));
  return m;
}

DeviceBundle generate_device(const TeacherProfile& profile, const TeachingUnit& unit, const MethodDefinition& method,
                             const RuleBase& rules, const DeviceConfig& config) {
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e.what());
    }
  };

  DeviceBundle b;
  stage("validate", [&] {
    if (auto v = validate_unit(unit); !v.empty()) throw ValidationError(std::move(v));
    return 0;
  });
  FactSet facts = stage("facts", [&] {
    FactSet f = profile_to_facts(profile, config.registry);
    f.insert(unit_to_facts(unit));
    return f;
  });
  b.directives = stage("infer", [&] { return infer(facts, rules).directives; });
  b.teams = stage("teams", [&] {
    std::vector<Team> teams;
    for (std::size_t g = 0; g < unit.groups.size(); ++g) {
      if (unit.groups[g].team_count == 0) continue;
      int group_index = static_cast<int>(g + 1);
      for (auto& t : compose_teams(unit.groups[g].members, unit.groups[g].team_count, group_index)) {
        t.team_id = "g" + std::to_string(group_index) + "-" + t.team_id;
        teams.push_back(std::move(t));
      }
    }
    return teams;
  });
  b.scenario = stage("scenario", [&] { return compose_scenario(unit, method); });
  stage("blogs", [&] {
    for (const auto& t : b.teams) b.team_blogs.emplace(t.team_id, generate_team_blog(t, b.scenario, method));
    return 0;
  });
  b.esuitcase = stage("esuitcase",
                      [&] { return generate_esuitcase(b.directives, b.teams, method, unit, b.scenario, config); });
  b.toolbox = stage("toolbox", [&] { return generate_toolbox(b.directives, config); });
  return b;
}

std::string render_page(const Page& page, const std::string& theme) {
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<meta name=\"theme\" content=\"" + html_escape(theme) + "\">\n";
  out += "<title>" + html_escape(page.title) + "</title>\n</head>\n<body>\n";
  out += "<h1>" + html_escape(page.title) + "</h1>\n";
  for (const auto& s : page.sections) {
    out += "<section>\n<h2>" + html_escape(s.heading) + "</h2>\n";
    for (const auto& block : s.blocks) {
      std::visit(
          [&](const auto& b) {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, Paragraph>) {
              out += "<p>" + html_escape(b.text) + "</p>\n";
            } else if constexpr (std::is_same_v<B, Link>) {
              out += "<p><a href=\"" + html_escape(b.href) + "\">" + html_escape(b.label) + "</a></p>\n";
            } else if constexpr (std::is_same_v<B, MediaRef>) {
              const std::string src = html_escape(b.locator);
              switch (b.modality) {
                case Modality::audio: out += "<audio controls src=\"" + src + "\"></audio>\n"; break;
                case Modality::video: out += "<video controls src=\"" + src + "\"></video>\n"; break;
                case Modality::text: out += "<p class=\"text-media\" data-src=\"" + src + "\">Text: " + src + "</p>\n"; break;
              }
            } else {
              out += "<p><input type=\"checkbox\" disabled> " + html_escape(b.label) + "</p>\n";
            }
          },
          block);
    }
    out += "</section>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::map<std::string, std::string> render_bundle(const DeviceBundle& bundle, const std::string& theme) {
  std::map<std::string, std::string> files;
  for (const auto& [team_id, tree] : bundle.team_blogs)
    for (const auto& [path, page] : tree.pages) files["blogs/" + team_id + "/" + path] = render_page(page, theme);
  for (const auto& [path, page] : bundle.esuitcase.pages) files["esuitcase/" + path] = render_page(page, theme);
  files["toolbox.manifest"] = bundle.toolbox.serialize();
  return files;
}

namespace {

bool has_scheme(const std::string& href) {
  auto colon = href.find(':');
  auto slash = href.find('/');
  return colon != std::string::npos && (slash == std::string::npos || colon < slash) && colon > 0;
}

// Joins a page's directory with a relative href; empty on escape above root.
std::string resolve_path(const std::string& page_path, const std::string& href) {
  std::vector<std::string> parts;
  auto dir = page_path.substr(0, page_path.rfind('/') == std::string::npos ? 0 : page_path.rfind('/'));
  for (const auto& p : split_trimmed(dir, '/'))
    if (!p.empty()) parts.push_back(p);
  for (const auto& p : split_trimmed(href, '/')) {
    if (p.empty() || p == ".") continue;
    if (p == "..") {
      if (parts.empty()) return {};
      parts.pop_back();
    } else {
      parts.push_back(p);
    }
  }
  return join(parts, "/");
}

void check_tree(const SiteTree& tree, const std::string& prefix, const std::set<std::string>& files,
                std::vector<std::string>& broken) {
  for (const auto& [path, page] : tree.pages) {
    for (const auto& s : page.sections) {
      for (const auto& block : s.blocks) {
        const auto* link = std::get_if<Link>(&block);
        if (!link) continue;
        if (tree.external_locators.contains(link->href) || has_scheme(link->href)) continue;
        std::string target = resolve_path(prefix + path, link->href);
        if (target.empty() || !files.contains(target)) broken.push_back(prefix + path + " -> " + link->href);
      }
    }
  }
}

}  // namespace

std::vector<std::string> check_links(const DeviceBundle& bundle) {
  std::set<std::string> files;
  for (const auto& [team_id, tree] : bundle.team_blogs)
    for (const auto& [path, page] : tree.pages) files.insert("blogs/" + team_id + "/" + path);
  for (const auto& [path, page] : bundle.esuitcase.pages) files.insert("esuitcase/" + path);
  std::vector<std::string> broken;
  for (const auto& [team_id, tree] : bundle.team_blogs) check_tree(tree, "blogs/" + team_id + "/", files, broken);
  check_tree(bundle.esuitcase, "esuitcase/", files, broken);
  return broken;
}

void FilesystemPublisher::publish(const DeviceBundle& bundle, const std::string& theme) {
  fs::path staging = root_;
  staging += ".staging";
  fs::remove_all(staging);
  for (const auto& [rel, content] : render_bundle(bundle, theme)) write_atomically(staging / rel, content);
  fs::remove_all(root_);
  fs::create_directories(root_.parent_path());
  fs::rename(staging, root_);
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  if (!fs::is_directory(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    out[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return out;
}

}  // namespace at
