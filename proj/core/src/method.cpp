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

#include "at/method.hpp"

#include <set>

#include "at/fact.hpp"
#include "at/fact_store.hpp"
#include "at/text.hpp"

namespace at {

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::audio: return "audio";
    case Modality::video: return "video";
    case Modality::text: return "text";
  }
  return "text";
}

std::string_view to_string(SectionKind k) { return k == SectionKind::principle ? "principle" : "example"; }

std::optional<Modality> modality_from_string(std::string_view s) {
  if (s == "audio") return Modality::audio;
  if (s == "video") return Modality::video;
  if (s == "text") return Modality::text;
  return std::nullopt;
}

namespace {

PresentationSection parse_section(const std::vector<std::string>& f, std::size_t offset, std::size_t line,
                                  const std::string& source) {
  PresentationSection s;
  s.section_id = f[offset];
  if (!is_identifier(s.section_id)) throw ParseError(source, line, 1, "invalid section id", {"section_id"});
  if (f[offset + 1] == "principle") s.kind = SectionKind::principle;
  else if (f[offset + 1] == "example") s.kind = SectionKind::example;
  else throw ParseError(source, line, 1, "unknown section kind '" + f[offset + 1] + "'", {"principle", "example"});
  for (const auto& entry : split_trimmed(f[offset + 2], ',')) {
    if (entry.empty()) continue;
    auto eq = entry.find('=');
    auto modality = eq == std::string::npos ? std::nullopt : modality_from_string(trim(entry.substr(0, eq)));
    if (!modality) throw ParseError(source, line, 1, "expected modality=locator", {"audio", "video", "text"});
    s.media[*modality] = trim(entry.substr(eq + 1));
  }
  return s;
}

}  // namespace

MethodDefinition parse_method(std::string_view text, const std::string& source) {
  MethodDefinition m;
  enum class Block { header, steps, presentation } block = Block::header;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string>& f) {
    const std::string& first = f[0];
    if (f.size() == 1 && first == "[steps]") {
      block = Block::steps;
      return;
    }
    if (f.size() == 1 && first == "[presentation]") {
      block = Block::presentation;
      return;
    }
    switch (block) {
      case Block::header: {
        auto sp = first.find(' ');
        std::string key = first.substr(0, sp);
        std::string value = sp == std::string::npos ? "" : trim(first.substr(sp));
        if (f.size() != 1 || value.empty()) throw ParseError(source, line, 1, "expected 'key value'", {"method", "name"});
        if (key == "method") m.method_id = value;
        else if (key == "name") m.name = value;
        else throw ParseError(source, line, 1, "unknown header key '" + key + "'", {"method", "name"});
        break;
      }
      case Block::steps: {
        if (f.size() != 4) throw ParseError(source, line, 1, "expected 'step_id | name | weight | deliveries'");
        MethodStep step;
        step.step_id = f[0];
        step.name = f[1];
        auto w = Rational::parse(f[2]);
        if (!w) throw ParseError(source, line, 1, "invalid weight '" + f[2] + "'", {"positive rational"});
        step.weight = *w;
        for (auto& d : split_trimmed(f[3], ','))
          if (!d.empty()) step.deliveries.push_back(std::move(d));
        m.steps.push_back(std::move(step));
        break;
      }
      case Block::presentation:
        if (f.size() != 3) throw ParseError(source, line, 1, "expected 'section_id | kind | media'");
        m.presentation_sections.push_back(parse_section(f, 0, line, source));
        break;
    }
  });
  validate_method(m);
  return m;
}

MethodDefinition load_method(const std::filesystem::path& path) {
  return parse_method(read_file(path), path.string());
}

void validate_method(const MethodDefinition& m) {
  std::vector<Violation> v;
  if (!is_identifier(m.method_id)) v.push_back({"method_id", "must be an identifier"});
  if (m.steps.empty()) v.push_back({"steps", "at least one step required"});
  std::set<std::string> ids;
  std::set<std::string> deliveries;
  for (const auto& s : m.steps) {
    if (!is_identifier(s.step_id)) v.push_back({"steps", "'" + s.step_id + "' is not a valid step id"});
    if (!ids.insert(s.step_id).second) v.push_back({"steps." + s.step_id, "duplicate step id"});
    if (s.weight <= Rational(0)) v.push_back({"steps." + s.step_id + ".weight", "must be positive"});
    for (const auto& d : s.deliveries)
      if (!deliveries.insert(d).second) v.push_back({"steps." + s.step_id + ".deliveries", "delivery '" + d + "' listed twice"});
  }
  std::set<std::string> sections;
  for (const auto& s : m.presentation_sections) {
    if (!sections.insert(s.section_id).second) v.push_back({"presentation." + s.section_id, "duplicate section id"});
    if (!s.media.contains(Modality::text)) v.push_back({"presentation." + s.section_id, "text fallback missing"});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

PresentationCatalog PresentationCatalog::parse(std::string_view text, const std::string& source) {
  PresentationCatalog c;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string>& f) {
    if (f.size() != 4) throw ParseError(source, line, 1, "expected 'topic | section_id | kind | media'");
    if (!is_identifier(f[0])) throw ParseError(source, line, 1, "invalid topic", {"topic"});
    auto section = parse_section(f, 1, line, source);
    if (!section.media.contains(Modality::text))
      throw ParseError(source, line, 1, "section " + section.section_id + " lacks a text fallback", {"text=..."});
    c.topics_[f[0]].push_back(std::move(section));
  });
  return c;
}

PresentationCatalog PresentationCatalog::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

void PresentationCatalog::add(const std::string& topic, std::vector<PresentationSection> sections) {
  topics_[topic] = std::move(sections);
}

const std::vector<PresentationSection>& PresentationCatalog::sections(const std::string& topic) const {
  static const std::vector<PresentationSection> empty;
  auto it = topics_.find(topic);
  return it == topics_.end() ? empty : it->second;
}

}  // namespace at
