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
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "at/device.hpp"
#include "at/fact_store.hpp"
#include "at/ils.hpp"
#include "at/jobs.hpp"
#include "at/method.hpp"
#include "at/profile.hpp"
#include "at/rules.hpp"
#include "at/unit.hpp"

namespace at {

struct ServiceConfig {
  std::filesystem::path data_dir = "data";
  /// topics.registry, pedagogies.presentations, standard.toolbox,
  /// tools.catalog, ils-44.txt and `<method_id>.method` files.
  std::filesystem::path config_dir = "config";
  std::filesystem::path rules_path = "config/adaptation.rules";
  CredentialsStore::Options credentials;
  /// Start the generation worker. The CLI `gen` path does not need it.
  bool start_jobs = true;

  /// AT_DATA_DIR, AT_CONFIG_DIR and AT_RULES override the defaults.
  static ServiceConfig from_environment();
};

struct StoredProfile {
  TeacherProfile profile;
  /// Nothing saved yet: this is the standard profile.
  bool standard = false;
};

/// Everything both the HTTP API and the CLI do, on top of the stores and
/// the generator. Each operation runs under the caller's per-user lock.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  const ServiceConfig& config() const { return config_; }
  UserStore& users() { return users_; }
  CredentialsStore& credentials() { return credentials_; }
  const DeviceConfig& device_config() const { return device_config_; }
  const RuleBase& rules() const { return rules_; }
  const QuestionnaireDefinition& questionnaire() const { return questionnaire_; }

  StoredProfile profile(Uid uid) const;
  /// Validates, normalizes and stores. Returns the stored form.
  TeacherProfile save_profile(Uid uid, TeacherProfile profile);
  /// Scores the sheet and replaces the stored personality with the result.
  PersonalityType submit_quiz(Uid uid, const AnswerSheet& sheet, Reasoning reasoning);

  /// Throws DuplicateError when the unit id is taken.
  TeachingUnit create_unit(Uid uid, const TeachingUnit& unit);
  /// Creates or replaces.
  TeachingUnit put_unit(Uid uid, const TeachingUnit& unit);
  /// Throws NotFoundError for unknown units.
  TeachingUnit unit(Uid uid, const std::string& unit_id) const;
  std::vector<TeachingUnit> units(Uid uid) const;
  void delete_unit(Uid uid, const std::string& unit_id);

  /// Runs the pipeline on the stored profile and unit without writing.
  DeviceBundle build(Uid uid, const std::string& unit_id);
  /// Builds and publishes to `users/<uid>/device/<unit_id>/`. Failures are
  /// StageErrors naming the stage.
  std::filesystem::path generate(Uid uid, const std::string& unit_id);

  /// Queues generate(); throws NotFoundError for unknown units.
  Job submit_generation(Uid uid, const std::string& unit_id);
  /// Throws NotFoundError when the job is unknown or belongs to someone else.
  Job job(Uid uid, const std::string& job_id) const;
  std::optional<Job> wait_job(Uid uid, const std::string& job_id, std::chrono::milliseconds timeout) const;

  /// Relative paths of the generated files, sorted.
  std::vector<std::string> device_files(Uid uid, const std::string& unit_id) const;
  /// Throws NotFoundError for paths outside the device or missing files.
  std::string device_file(Uid uid, const std::string& unit_id, const std::string& relative) const;

  /// Device root locator reported by finished jobs.
  static std::string device_locator(const std::string& unit_id) { return "/api/device/" + unit_id + "/"; }

 private:
  const MethodDefinition& method(const std::string& method_id);

  ServiceConfig config_;
  UserStore users_;
  CredentialsStore credentials_;
  DeviceConfig device_config_;
  RuleBase rules_;
  QuestionnaireDefinition questionnaire_;
  std::mutex methods_mutex_;
  std::map<std::string, std::unique_ptr<MethodDefinition>> methods_;
  std::unique_ptr<JobQueue> jobs_;
};

}  // namespace at
