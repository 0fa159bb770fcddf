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

// at: command-line front end. `serve` runs the HTTP API; `gen`, `infer`,
// `register` and `import` work directly on a data directory.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iostream>

#include "at/error.hpp"
#include "at/http.hpp"
#include "at/service.hpp"

namespace {

at::HttpServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

struct Paths {
  std::string data_dir;
  std::string config_dir;
  std::string rules;
};

void add_path_options(CLI::App* cmd, Paths& p) {
  cmd->add_option("--data-dir", p.data_dir, "Data directory (AT_DATA_DIR, default ./data)");
  cmd->add_option("--config-dir", p.config_dir, "Configuration directory (AT_CONFIG_DIR, default ./config)");
  cmd->add_option("--rules", p.rules, "Rule file (AT_RULES, default config/adaptation.rules)");
}

at::ServiceConfig make_config(const Paths& p, bool start_jobs) {
  at::ServiceConfig c = at::ServiceConfig::from_environment();
  if (!p.data_dir.empty()) c.data_dir = p.data_dir;
  if (!p.config_dir.empty()) {
    c.config_dir = p.config_dir;
    if (p.rules.empty() && !std::getenv("AT_RULES")) c.rules_path = c.config_dir / "adaptation.rules";
  }
  if (!p.rules.empty()) c.rules_path = p.rules;
  c.start_jobs = start_jobs;
  return c;
}

at::Uid uid_for(at::Service& service, const std::string& email) {
  auto who = service.credentials().find_by_email(email);
  if (!who) throw at::NotFoundError("no teacher registered with email " + email);
  return who->uid;
}

// Fact files written for another uid are re-anchored on the importing teacher.
at::FactSet rebind_teacher(const at::FactSet& facts, at::Uid uid) {
  at::FactSet out;
  const std::string subject = at::teacher_subject(uid);
  for (const auto& f : facts) {
    if (f.subject.rfind("teacher:", 0) == 0) out.insert(at::Fact(subject, f.predicate, f.object));
    else out.insert(f);
  }
  return out;
}

std::string unit_id_of(const at::FactSet& facts) {
  for (const auto& f : facts)
    if (f.predicate == "title" && f.subject.rfind("unit:", 0) == 0) return f.subject.substr(5);
  throw at::Error("no unit title found in unit facts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assistance tool: teacher profiles, adaptation rules and pedagogical device generation"};
  app.require_subcommand(1);

  Paths paths;

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  add_path_options(serve, paths);
  std::string host = "0.0.0.0";
  int port = 0;
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (AT_PORT, default 8080)");

  auto* gen = app.add_subcommand("gen", "Generate a device for a stored unit");
  add_path_options(gen, paths);
  std::string email, unit_id;
  gen->add_option("--user", email, "Teacher email")->required();
  gen->add_option("--unit", unit_id, "Unit id")->required();

  auto* infer_cmd = app.add_subcommand("infer", "Print the directives a rule file derives from fact files");
  std::vector<std::string> fact_files;
  std::string rules_file;
  infer_cmd->add_option("--facts", fact_files, "Fact file (repeatable)")->required();
  infer_cmd->add_option("--rules", rules_file, "Rule file")->required();

  auto* reg = app.add_subcommand("register", "Register a teacher");
  add_path_options(reg, paths);
  std::string name, surname, password;
  reg->add_option("--name", name)->required();
  reg->add_option("--surname", surname)->required();
  reg->add_option("--email", email)->required();
  reg->add_option("--password", password)->required();

  auto* imp = app.add_subcommand("import", "Store profile or unit fact files for a teacher");
  add_path_options(imp, paths);
  std::string profile_file;
  std::vector<std::string> unit_files;
  imp->add_option("--user", email, "Teacher email")->required();
  imp->add_option("--profile", profile_file, "Profile fact file");
  imp->add_option("--unit", unit_files, "Unit fact file (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*infer_cmd) {
      at::FactSet facts;
      for (const auto& f : fact_files) facts.insert(at::parse_facts(at::read_file(f), f));
      at::RuleBase rb = at::load_rules(rules_file);
      for (const auto& line : at::format_directives(at::infer(facts, rb).directives)) std::cout << line << "\n";
      return 0;
    }
    if (*serve) {
      if (port == 0) {
        const char* env = std::getenv("AT_PORT");
        port = env && *env ? std::stoi(env) : 8080;
      }
      at::Service service(make_config(paths, true));
      at::HttpServer server(service);
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        std::cerr << "at: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
      return 0;
    }
    at::Service service(make_config(paths, false));
    if (*gen) {
      std::cout << service.generate(uid_for(service, email), unit_id).string() << "\n";
    } else if (*reg) {
      std::cout << service.credentials().register_teacher(name, surname, email, password).to_string() << "\n";
    } else if (*imp) {
      at::Uid uid = uid_for(service, email);
      if (!profile_file.empty()) {
        at::FactSet facts = rebind_teacher(at::parse_facts(at::read_file(profile_file), profile_file), uid);
        service.save_profile(uid, at::facts_to_profile(uid, facts, service.device_config().registry));
      }
      for (const auto& f : unit_files) {
        at::FactSet facts = at::parse_facts(at::read_file(f), f);
        service.put_unit(uid, at::facts_to_unit(unit_id_of(facts), facts));
      }
    }
    return 0;
  } catch (const at::ValidationError& e) {
    std::cerr << "at: " << e.what() << "\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v.field << ": " << v.rule << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "at: " << e.what() << "\n";
    return 1;
  }
}
