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

#include "at/service.hpp"

#include <cstdlib>

#include "at/error.hpp"

namespace fs = std::filesystem;

namespace at {

ServiceConfig ServiceConfig::from_environment() {
  ServiceConfig c;
  if (const char* v = std::getenv("AT_DATA_DIR"); v && *v) c.data_dir = v;
  if (const char* v = std::getenv("AT_CONFIG_DIR"); v && *v) {
    c.config_dir = v;
    c.rules_path = c.config_dir / "adaptation.rules";
  }
  if (const char* v = std::getenv("AT_RULES"); v && *v) c.rules_path = v;
  return c;
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      users_(config_.data_dir),
      credentials_(config_.data_dir, users_, config_.credentials),
      device_config_(DeviceConfig::load(config_.config_dir)),
      rules_(load_rules(config_.rules_path.string())),
      questionnaire_(QuestionnaireDefinition::load(config_.config_dir / "ils-44.txt")) {
  if (config_.start_jobs)
    jobs_ = std::make_unique<JobQueue>(config_.data_dir / "jobs", [this](const Job& job) {
      generate(job.uid, job.unit_id);
      return device_locator(job.unit_id);
    });
}

Service::~Service() {
  if (jobs_) jobs_->stop();
}

StoredProfile Service::profile(Uid uid) const {
  auto guard = users_.lock(uid);
  FactSet facts = users_.load(uid, FactKind::profile());
  if (facts.empty()) return {default_profile(uid, device_config_.registry), true};
  return {facts_to_profile(uid, facts, device_config_.registry), false};
}

TeacherProfile Service::save_profile(Uid uid, TeacherProfile profile) {
  profile.uid = uid;
  if (auto v = validate_profile(profile); !v.empty()) throw ValidationError(std::move(v));
  std::vector<Violation> unknown;
  for (const auto& k : profile.knowledge)
    if (!device_config_.registry.contains(k.topic))
      unknown.push_back({"knowledge." + k.topic, "not a registered topic"});
  if (!unknown.empty()) throw ValidationError(std::move(unknown));
  profile = normalize_profile(std::move(profile), device_config_.registry);
  auto guard = users_.lock(uid);
  users_.save(uid, FactKind::profile(), profile_to_facts(profile, device_config_.registry));
  return profile;
}

PersonalityType Service::submit_quiz(Uid uid, const AnswerSheet& sheet, Reasoning reasoning) {
  PersonalityType personality = classify(score(sheet, questionnaire_), reasoning);
  auto guard = users_.lock(uid);
  TeacherProfile p = profile(uid).profile;
  p.personality = personality;
  save_profile(uid, std::move(p));
  return personality;
}

TeachingUnit Service::create_unit(Uid uid, const TeachingUnit& unit) {
  auto guard = users_.lock(uid);
  if (users_.exists(uid, FactKind::unit(unit.unit_id)))
    throw DuplicateError("unit " + unit.unit_id + " already exists");
  return put_unit(uid, unit);
}

TeachingUnit Service::put_unit(Uid uid, const TeachingUnit& unit) {
  if (auto v = validate_unit(unit); !v.empty()) throw ValidationError(std::move(v));
  FactSet facts = unit_to_facts(unit);
  auto guard = users_.lock(uid);
  users_.save(uid, FactKind::unit(unit.unit_id), facts);
  return facts_to_unit(unit.unit_id, facts);
}

TeachingUnit Service::unit(Uid uid, const std::string& unit_id) const {
  if (!is_identifier(unit_id)) throw NotFoundError("unknown unit " + unit_id);
  auto guard = users_.lock(uid);
  FactSet facts = users_.load(uid, FactKind::unit(unit_id));
  if (facts.empty()) throw NotFoundError("unknown unit " + unit_id);
  return facts_to_unit(unit_id, facts);
}

std::vector<TeachingUnit> Service::units(Uid uid) const {
  auto guard = users_.lock(uid);
  std::vector<TeachingUnit> out;
  for (const auto& id : users_.list_units(uid)) out.push_back(unit(uid, id));
  return out;
}

void Service::delete_unit(Uid uid, const std::string& unit_id) {
  if (!is_identifier(unit_id)) throw NotFoundError("unknown unit " + unit_id);
  auto guard = users_.lock(uid);
  if (!users_.remove(uid, FactKind::unit(unit_id))) throw NotFoundError("unknown unit " + unit_id);
}

const MethodDefinition& Service::method(const std::string& method_id) {
  std::lock_guard g(methods_mutex_);
  auto& slot = methods_[method_id];
  if (!slot) {
    if (!is_identifier(method_id)) throw NotFoundError("unknown method " + method_id);
    fs::path p = config_.config_dir / (method_id + ".method");
    if (!fs::exists(p)) {
      methods_.erase(method_id);
      throw NotFoundError("unknown method " + method_id);
    }
    auto m = std::make_unique<MethodDefinition>(load_method(p));
    validate_method(*m);
    slot = std::move(m);
  }
  return *slot;
}

DeviceBundle Service::build(Uid uid, const std::string& unit_id) {
  auto guard = users_.lock(uid);
  TeacherProfile p;
  TeachingUnit u;
  const MethodDefinition* m = nullptr;
  try {
    p = profile(uid).profile;
    u = unit(uid, unit_id);
    m = &method(u.method_id);
  } catch (const std::exception& e) {
    throw StageError("load", e.what());
  }
  return generate_device(p, u, *m, rules_, device_config_);
}

fs::path Service::generate(Uid uid, const std::string& unit_id) {
  auto guard = users_.lock(uid);
  DeviceBundle bundle = build(uid, unit_id);
  fs::path root = users_.device_dir(uid, unit_id);
  try {
    FilesystemPublisher(root).publish(bundle, device_config_.theme);
  } catch (const std::exception& e) {
    throw StageError("publish", e.what());
  }
  return root;
}

Job Service::submit_generation(Uid uid, const std::string& unit_id) {
  unit(uid, unit_id);
  if (!jobs_) throw Error("job worker not started");
  return jobs_->submit(uid, unit_id);
}

Job Service::job(Uid uid, const std::string& job_id) const {
  std::optional<Job> j = jobs_ ? jobs_->find(job_id) : std::nullopt;
  if (!j || j->uid != uid) throw NotFoundError("unknown job " + job_id);
  return *j;
}

std::optional<Job> Service::wait_job(Uid uid, const std::string& job_id, std::chrono::milliseconds timeout) const {
  job(uid, job_id);
  return jobs_->wait(job_id, timeout);
}

std::vector<std::string> Service::device_files(Uid uid, const std::string& unit_id) const {
  if (!is_identifier(unit_id)) throw NotFoundError("unknown device " + unit_id);
  auto guard = users_.lock(uid);
  fs::path root = users_.device_dir(uid, unit_id);
  if (!fs::is_directory(root)) throw NotFoundError("no device generated for " + unit_id);
  std::vector<std::string> out;
  for (const auto& [path, content] : read_tree(root)) out.push_back(path);
  return out;
}

std::string Service::device_file(Uid uid, const std::string& unit_id, const std::string& relative) const {
  if (!is_identifier(unit_id)) throw NotFoundError("unknown device " + unit_id);
  fs::path rel = fs::path(relative).lexically_normal();
  if (rel.empty() || rel.is_absolute() || *rel.begin() == "..") throw NotFoundError("no such file " + relative);
  auto guard = users_.lock(uid);
  fs::path p = users_.device_dir(uid, unit_id) / rel;
  if (!fs::is_regular_file(p)) throw NotFoundError("no such file " + relative);
  return read_file(p);
}

}  // namespace at
