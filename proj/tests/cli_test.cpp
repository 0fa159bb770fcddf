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

#include <gtest/gtest.h>

#include "support.hpp"

namespace at {
namespace {

using testing::fixture;
using testing::quote;
using testing::run_command;

class Cli : public ::testing::Test {
 protected:
  std::string at(const std::string& args) const {
    return quote(AT_CLI_PATH) + " " + args + " --data-dir " + quote(dir.path()) + " --config-dir " +
           quote(testing::config_dir()) + " --rules " + quote(testing::config_dir() / "adaptation.rules");
  }

  testing::TempDir dir;
};

TEST_F(Cli, RegisterImportGen) {
  auto reg = run_command(at("register --name Tom --surname Jones --email jones@school.org --password pw"));
  ASSERT_EQ(reg.exit_code, 0);
  EXPECT_EQ(reg.out, "1\n");
  auto imp = run_command(at("import --user jones@school.org --profile " + quote(fixture("jones.profile.facts")) +
                            " --unit " + quote(fixture("web_programming.unit.facts"))));
  ASSERT_EQ(imp.exit_code, 0);
  auto gen = run_command(at("gen --user jones@school.org --unit web_programming"));
  ASSERT_EQ(gen.exit_code, 0);
  std::filesystem::path root = gen.out.substr(0, gen.out.find('\n'));
  EXPECT_EQ(root, dir.path() / "users" / "1" / "device" / "web_programming");
  EXPECT_TRUE(std::filesystem::exists(root / "esuitcase" / "index.html"));
  EXPECT_TRUE(std::filesystem::exists(root / "toolbox.manifest"));
}

TEST_F(Cli, UnknownUserFails) {
  EXPECT_NE(run_command(at("gen --user nobody@school.org --unit web_programming")).exit_code, 0);
}

TEST_F(Cli, UnknownUnitFails) {
  ASSERT_EQ(run_command(at("register --name A --surname B --email a@b.org --password pw")).exit_code, 0);
  EXPECT_NE(run_command(at("gen --user a@b.org --unit missing")).exit_code, 0);
}

TEST_F(Cli, InvalidUnitExitsWithValidationCode) {
  ASSERT_EQ(run_command(at("register --name A --surname B --email a@b.org --password pw")).exit_code, 0);
  std::string text = read_file(fixture("web_programming.unit.facts"));
  auto pos = text.find("session_duration");
  ASSERT_NE(pos, std::string::npos);
  auto end = text.find('\n', pos);
  text.replace(pos, end - pos, "session_duration 0 .");
  std::filesystem::path bad = dir.path() / "bad.unit.facts";
  write_atomically(bad, text);
  EXPECT_EQ(run_command(at("import --user a@b.org --unit " + quote(bad))).exit_code, 2);
}

TEST(CliInfer, PrintsCanonicalDirectives) {
  auto r = run_command(quote(AT_CLI_PATH) + " infer --facts " + quote(fixture("jones.profile.facts")) + " --rules " +
                       quote(testing::config_dir() / "adaptation.rules"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "embed_tool(spreadsheet)\n"
            "link_blogs()\n"
            "present(maetic,audio,deductive)\n"
            "skip(active_pedagogy)\n"
            "skip(group_pedagogy)\n"
            "skip(project_pedagogy)\n");
}

}  // namespace
}  // namespace at
