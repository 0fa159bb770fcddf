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

#include <memory>
#include <string>

#include "at/service.hpp"

namespace at {

/// JSON-over-HTTP front end of a Service. Protected routes expect
/// `Authorization: Bearer <token>`.
///
///   POST /api/register            POST /api/login
///   GET|PUT /api/profile          POST /api/profile/quiz
///   POST|GET /api/units           GET|PUT|DELETE /api/units/{unit_id}
///   POST /api/units/{unit_id}/generate
///   GET /api/jobs/{job_id}
///   GET /api/device/{unit_id}     GET /api/device/{unit_id}/{path}
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it, or -1.
  int bind_any_port(const std::string& host);
  /// Serves on the port from bind_any_port(); blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace at
