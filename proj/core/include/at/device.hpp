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

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "at/method.hpp"
#include "at/profile.hpp"
#include "at/rules.hpp"
#include "at/scenario.hpp"
#include "at/unit.hpp"

namespace at {

struct Paragraph {
  std::string text;
};
struct Link {
  std::string href;
  std::string label;
};
struct MediaRef {
  Modality modality = Modality::text;
  std::string locator;
};
struct CheckItem {
  std::string label;
};

using Block = std::variant<Paragraph, Link, MediaRef, CheckItem>;

struct PageSection {
  std::string heading;
  std::vector<Block> blocks;
};

struct Page {
  std::string title;
  std::vector<PageSection> sections;
};

/// Pages keyed by relative path (`index.html`, `steps/launch.html`).
/// Locators that point outside the device (resources, media) are listed in
/// `external_locators`.
struct SiteTree {
  std::string root;
  std::map<std::string, Page> pages;
  std::set<std::string> external_locators;
};

enum class Ordering { deductive, inductive };
std::string_view to_string(Ordering o);

enum class ToolSource { directive, standard };
std::string_view to_string(ToolSource s);

struct ToolboxEntry {
  std::string tool;
  std::string locator;
  ToolSource source = ToolSource::standard;
  friend bool operator==(const ToolboxEntry&, const ToolboxEntry&) = default;
};

struct ToolboxManifest {
  /// Sorted by tool id, one entry per tool.
  std::vector<ToolboxEntry> entries;

  const ToolboxEntry* find(std::string_view tool) const;
  /// One `tool | locator | source` line per entry.
  std::string serialize() const;
};

struct DeviceBundle {
  std::vector<Team> teams;
  Scenario scenario;
  std::vector<Directive> directives;
  std::map<std::string, SiteTree> team_blogs;
  SiteTree esuitcase;
  ToolboxManifest toolbox;
};

/// Repository data the generator reads from `config/`.
struct DeviceConfig {
  TopicRegistry registry;
  PresentationCatalog catalog;
  /// (tool, locator) pairs always placed in the toolbox.
  std::vector<std::pair<std::string, std::string>> standard_toolbox;
  /// Locators for tools that directives may embed.
  std::map<std::string, std::string> tool_locators;
  std::string theme = "standard";

  /// Reads topics.registry, pedagogies.presentations, standard.toolbox and
  /// tools.catalog from `dir`.
  static DeviceConfig load(const std::filesystem::path& dir);
  std::string tool_locator(const std::string& tool) const;
};

/// Stable partition: principles first for deductive, examples first for
/// inductive.
std::vector<PresentationSection> order_presentation(std::vector<PresentationSection> sections, Ordering ordering);

/// Index, progress, one page per method step and a communication page.
SiteTree generate_team_blog(const Team& team, const Scenario& scenario, const MethodDefinition& method);

/// Throws Error naming the topic when a present directive has no sections.
SiteTree generate_esuitcase(const std::vector<Directive>& directives, const std::vector<Team>& teams,
                            const MethodDefinition& method, const TeachingUnit& unit, const Scenario& scenario,
                            const DeviceConfig& config);

ToolboxManifest generate_toolbox(const std::vector<Directive>& directives, const DeviceConfig& config);

/// Whole pipeline: facts, inference, teams, scenario, blogs, e-suitcase,
/// toolbox. Throws StageError naming the failing stage.
DeviceBundle generate_device(const TeacherProfile& profile, const TeachingUnit& unit, const MethodDefinition& method,
                             const RuleBase& rules, const DeviceConfig& config);

std::string render_page(const Page& page, const std::string& theme);

/// Every output file of a bundle, keyed by path relative to the device
/// root: `blogs/<team_id>/...`, `esuitcase/...`, `toolbox.manifest`.
std::map<std::string, std::string> render_bundle(const DeviceBundle& bundle, const std::string& theme);

/// Links that resolve neither to a bundle file nor to a registered
/// external locator, as `<page path> -> <href>`.
std::vector<std::string> check_links(const DeviceBundle& bundle);

/// Where generated devices go. Only the filesystem publisher exists; a
/// blogging-platform publisher would implement the same interface.
class Publisher {
 public:
  virtual ~Publisher() = default;
  virtual void publish(const DeviceBundle& bundle, const std::string& theme) = 0;
};

/// Replaces `root` with the rendered bundle (written to a sibling
/// directory first, then renamed into place).
class FilesystemPublisher : public Publisher {
 public:
  explicit FilesystemPublisher(std::filesystem::path root) : root_(std::move(root)) {}
  void publish(const DeviceBundle& bundle, const std::string& theme) override;

 private:
  std::filesystem::path root_;
};

/// Relative path -> bytes for every regular file under `root`.
std::map<std::string, std::string> read_tree(const std::filesystem::path& root);

}  // namespace at
