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

#include "at/http.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "at/error.hpp"
#include "at/json_io.hpp"

namespace at {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, json{{"error", message}});
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::vector<Violation>{{"body", std::string("malformed JSON: ") + e.what()}});
  }
}

std::string content_type_for(const std::string& path) {
  auto ends = [&](std::string_view s) { return path.size() >= s.size() && path.ends_with(s); };
  if (ends(".html")) return "text/html; charset=utf-8";
  return "text/plain; charset=utf-8";
}

json job_to_json(const Job& job) {
  json out{{"job_id", job.job_id}, {"unit_id", job.unit_id}, {"state", to_string(job.state)}};
  if (job.state == JobState::done) out["result"] = job.result;
  if (job.state == JobState::failed) out["error"] = job.error;
  out["created_at"] = std::chrono::duration_cast<std::chrono::milliseconds>(job.created.time_since_epoch()).count();
  out["updated_at"] = std::chrono::duration_cast<std::chrono::milliseconds>(job.updated.time_since_epoch()).count();
  return out;
}

}  // namespace

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) { routes(); }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;
  using AuthedHandler = std::function<void(Uid, const httplib::Request&, httplib::Response&)>;

  Handler guarded(Handler fn) {
    return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const AuthError& e) {
        send_error(res, 401, e.what());
      } catch (const ValidationError& e) {
        send_json(res, 422, json{{"error", "validation failed"}, {"violations", violations_to_json(e.violations())}});
      } catch (const IncompleteSheetError& e) {
        send_json(res, 422, json{{"error", e.what()}, {"missing", e.missing()}});
      } catch (const DuplicateError& e) {
        send_error(res, 409, e.what());
      } catch (const NotFoundError& e) {
        send_error(res, 404, e.what());
      } catch (const ConflictError& e) {
        send_error(res, 409, e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      }
    };
  }

  Handler authed(AuthedHandler fn) {
    return guarded([this, fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
      const std::string header = req.get_header_value("Authorization");
      const std::string prefix = "Bearer ";
      if (header.rfind(prefix, 0) != 0) throw AuthError("missing bearer token");
      fn(service.credentials().resolve(header.substr(prefix.size())), req, res);
    });
  }

  void routes() {
    server.Post("/api/register", guarded([this](const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req);
      auto field = [&](const char* k) { return body.is_object() ? body.value(k, std::string()) : std::string(); };
      Uid uid = service.credentials().register_teacher(field("name"), field("surname"), field("email"),
                                                       field("password"));
      send_json(res, 201, json{{"uid", uid.value}});
    }));

    server.Post("/api/login", guarded([this](const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req);
      auto field = [&](const char* k) { return body.is_object() ? body.value(k, std::string()) : std::string(); };
      SessionToken t = service.credentials().login(field("email"), field("password"));
      auto expiry = std::chrono::duration_cast<std::chrono::seconds>(t.expiry.time_since_epoch()).count();
      send_json(res, 200, json{{"token", t.token}, {"uid", t.uid.value}, {"expires_at", expiry}});
    }));

    server.Get("/api/profile", authed([this](Uid uid, const httplib::Request&, httplib::Response& res) {
      StoredProfile p = service.profile(uid);
      json out = profile_to_json(p.profile);
      out["standard"] = p.standard;
      send_json(res, 200, out);
    }));

    server.Put("/api/profile", authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      TeacherProfile saved = service.save_profile(uid, profile_from_json(uid, parse_body(req)));
      json out = profile_to_json(saved);
      out["standard"] = false;
      send_json(res, 200, out);
    }));

    server.Post("/api/profile/quiz", authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      QuizSubmission q = quiz_from_json(parse_body(req));
      auto scores = score(q.sheet, service.questionnaire());
      PersonalityType p = service.submit_quiz(uid, q.sheet, q.reasoning);
      json sj = json::array();
      for (const auto& s : scores)
        sj.push_back({{"axis", to_string(s.axis)}, {"value", s.value}, {"strength", to_string(s.strength)}});
      send_json(res, 200, json{{"personality", personality_to_json(p)}, {"scores", sj}});
    }));

    server.Post("/api/units", authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      send_json(res, 201, unit_to_json(service.create_unit(uid, unit_from_json(parse_body(req)))));
    }));

    server.Get("/api/units", authed([this](Uid uid, const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& u : service.units(uid)) list.push_back(unit_to_json(u));
      send_json(res, 200, json{{"units", list}});
    }));

    const std::string unit_path = R"(/api/units/([A-Za-z0-9_:.\-]+))";
    server.Get(unit_path, authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, unit_to_json(service.unit(uid, req.matches[1])));
    }));

    server.Put(unit_path, authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req);
      const std::string id = req.matches[1];
      if (body.is_object() && !body.contains("unit_id")) body["unit_id"] = id;
      TeachingUnit u = unit_from_json(body);
      if (u.unit_id != id) throw ValidationError(std::vector<Violation>{{"unit_id", "must match the path"}});
      send_json(res, 200, unit_to_json(service.put_unit(uid, u)));
    }));

    server.Delete(unit_path, authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      service.delete_unit(uid, req.matches[1]);
      res.status = 204;
    }));

    server.Post(unit_path + "/generate",
                authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
                  send_json(res, 202, job_to_json(service.submit_generation(uid, req.matches[1])));
                }));

    server.Get(R"(/api/jobs/([0-9a-f]+))", authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, job_to_json(service.job(uid, req.matches[1])));
    }));

    server.Get(R"(/api/device/([A-Za-z0-9_:.\-]+)/?)",
               authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 send_json(res, 200, json{{"unit_id", id}, {"files", service.device_files(uid, id)}});
               }));

    server.Get(R"(/api/device/([A-Za-z0-9_:.\-]+)/(.+))",
               authed([this](Uid uid, const httplib::Request& req, httplib::Response& res) {
                 const std::string path = req.matches[2];
                 res.status = 200;
                 res.set_content(service.device_file(uid, req.matches[1], path), content_type_for(path));
               }));
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace at
