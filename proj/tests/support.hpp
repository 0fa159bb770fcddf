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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "at/device.hpp"
#include "at/fact_store.hpp"
#include "at/method.hpp"
#include "at/profile.hpp"
#include "at/rules.hpp"
#include "at/unit.hpp"

namespace at::testing {

inline std::filesystem::path source_dir() { return AT_SOURCE_DIR; }
inline std::filesystem::path config_dir() { return source_dir() / "config"; }
inline std::filesystem::path fixture(const std::string& name) { return source_dir() / "fixtures" / name; }

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("at-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline const DeviceConfig& shipped_config() {
  static const DeviceConfig config = DeviceConfig::load(config_dir());
  return config;
}

inline const RuleBase& shipped_rules() {
  static const RuleBase rb = load_rules((config_dir() / "adaptation.rules").string());
  return rb;
}

inline const MethodDefinition& maetic() {
  static const MethodDefinition m = load_method(config_dir() / "maetic.method");
  return m;
}

/// The fixture teacher, rebound to `uid`.
inline TeacherProfile jones_profile(Uid uid = Uid{1}) {
  FactSet raw = parse_facts(read_file(fixture("jones.profile.facts")));
  FactSet facts;
  for (const auto& f : raw) facts.insert(Fact(teacher_subject(uid), f.predicate, f.object));
  return facts_to_profile(uid, facts, shipped_config().registry);
}

inline FactSet jones_facts(Uid uid = Uid{1}) { return profile_to_facts(jones_profile(uid), shipped_config().registry); }

inline TeachingUnit web_programming_unit() {
  return facts_to_unit("web_programming", parse_facts(read_file(fixture("web_programming.unit.facts"))));
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

/// Runs `command` through the shell; stdout is captured, stderr discarded.
inline CommandResult run_command(const std::string& command) {
  CommandResult r;
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace at::testing
