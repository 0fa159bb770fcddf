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

#include "at/jobs.hpp"

#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "at/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace at {

std::string_view to_string(JobState s) {
  switch (s) {
    case JobState::queued: return "queued";
    case JobState::running: return "running";
    case JobState::done: return "done";
    case JobState::failed: return "failed";
  }
  return "failed";
}

namespace {

std::optional<JobState> job_state_from_string(std::string_view s) {
  for (auto st : {JobState::queued, JobState::running, JobState::done, JobState::failed})
    if (to_string(st) == s) return st;
  return std::nullopt;
}

std::int64_t to_millis(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

std::chrono::system_clock::time_point from_millis(std::int64_t ms) {
  return std::chrono::system_clock::time_point(std::chrono::milliseconds(ms));
}

std::string fresh_job_id() {
  static std::mutex m;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard g(m);
  std::ostringstream out;
  out << std::hex << rng() << rng();
  return out.str();
}

}  // namespace

JobQueue::JobQueue(fs::path dir, Runner runner) : dir_(std::move(dir)), runner_(std::move(runner)) {
  fs::create_directories(dir_);
  load();
  worker_ = std::thread([this] { work(); });
}

JobQueue::~JobQueue() { stop(); }

void JobQueue::stop() {
  {
    std::lock_guard g(mutex_);
    stopping_ = true;
  }
  changed_.notify_all();
  if (worker_.joinable()) worker_.join();
}

void JobQueue::persist(const Job& job) const {
  json j{{"job_id", job.job_id},
         {"uid", job.uid.value},
         {"unit_id", job.unit_id},
         {"state", to_string(job.state)},
         {"result", job.result},
         {"error", job.error},
         {"created", to_millis(job.created)},
         {"updated", to_millis(job.updated)}};
  write_atomically(dir_ / (job.job_id + ".json"), j.dump(2) + "\n");
}

void JobQueue::load() {
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() != ".json") continue;
    json j;
    try {
      j = json::parse(read_file(entry.path()));
    } catch (const std::exception&) {
      continue;
    }
    Job job;
    job.job_id = j.value("job_id", "");
    job.uid = Uid{j.value("uid", std::uint64_t{0})};
    job.unit_id = j.value("unit_id", "");
    job.state = job_state_from_string(j.value("state", "failed")).value_or(JobState::failed);
    job.result = j.value("result", "");
    job.error = j.value("error", "");
    job.created = from_millis(j.value("created", std::int64_t{0}));
    job.updated = from_millis(j.value("updated", std::int64_t{0}));
    if (job.job_id.empty()) continue;
    if (job.state == JobState::queued || job.state == JobState::running) {
      job.state = JobState::failed;
      job.error = "restart: interrupted before completion";
      job.updated = std::chrono::system_clock::now();
      persist(job);
    }
    jobs_[job.job_id] = std::move(job);
  }
}

Job JobQueue::submit(Uid uid, const std::string& unit_id) {
  Job job;
  job.job_id = fresh_job_id();
  job.uid = uid;
  job.unit_id = unit_id;
  job.created = job.updated = std::chrono::system_clock::now();
  {
    std::lock_guard g(mutex_);
    if (stopping_) throw Error("job queue stopped");
    persist(job);
    jobs_[job.job_id] = job;
    pending_.push_back(job.job_id);
  }
  changed_.notify_all();
  return job;
}

std::optional<Job> JobQueue::find(const std::string& job_id) const {
  std::lock_guard g(mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second;
}

std::optional<Job> JobQueue::wait(const std::string& job_id, std::chrono::milliseconds timeout) const {
  std::unique_lock g(mutex_);
  changed_.wait_for(g, timeout, [&] {
    auto it = jobs_.find(job_id);
    return it == jobs_.end() || it->second.state == JobState::done || it->second.state == JobState::failed;
  });
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second;
}

void JobQueue::set_state(const std::string& job_id, JobState state, std::string result, std::string error) {
  {
    std::lock_guard g(mutex_);
    Job& job = jobs_.at(job_id);
    Job next = job;
    next.state = state;
    next.result = std::move(result);
    next.error = std::move(error);
    next.updated = std::chrono::system_clock::now();
    persist(next);
    job = std::move(next);
  }
  changed_.notify_all();
}

void JobQueue::work() {
  while (true) {
    Job job;
    {
      std::unique_lock g(mutex_);
      changed_.wait(g, [&] { return stopping_ || !pending_.empty(); });
      if (stopping_) return;
      job = jobs_.at(pending_.front());
      pending_.pop_front();
    }
    set_state(job.job_id, JobState::running, "", "");
    try {
      std::string locator = runner_(job);
      set_state(job.job_id, JobState::done, std::move(locator), "");
    } catch (const std::exception& e) {
      set_state(job.job_id, JobState::failed, "", e.what());
    }
  }
}

}  // namespace at
