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

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "at/fact_store.hpp"

namespace at {

enum class JobState { queued, running, done, failed };
std::string_view to_string(JobState s);

struct Job {
  std::string job_id;
  Uid uid;
  std::string unit_id;
  JobState state = JobState::queued;
  /// Device root locator once done.
  std::string result;
  /// `<stage>: <message>` once failed.
  std::string error;
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;
};

/// In-process generation queue with a single worker thread. Every state
/// change is written to `<dir>/<job_id>.json` before it becomes visible, so
/// a restart finds each job in its last observed state; jobs left queued or
/// running by a dead process are marked failed on load.
class JobQueue {
 public:
  /// Returns the result locator; an exception marks the job failed with
  /// its message.
  using Runner = std::function<std::string(const Job&)>;

  JobQueue(std::filesystem::path dir, Runner runner);
  ~JobQueue();
  JobQueue(const JobQueue&) = delete;
  JobQueue& operator=(const JobQueue&) = delete;

  Job submit(Uid uid, const std::string& unit_id);
  std::optional<Job> find(const std::string& job_id) const;
  /// Blocks until the job is done or failed, or the timeout expires.
  std::optional<Job> wait(const std::string& job_id, std::chrono::milliseconds timeout) const;

  void stop();

 private:
  void work();
  void persist(const Job& job) const;
  void load();
  void set_state(const std::string& job_id, JobState state, std::string result, std::string error);

  std::filesystem::path dir_;
  Runner runner_;
  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  std::map<std::string, Job> jobs_;
  std::deque<std::string> pending_;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace at
