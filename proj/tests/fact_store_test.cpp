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

#include <fstream>
#include <thread>

#include "at/error.hpp"
#include "at/fact_store.hpp"
#include "support.hpp"

namespace at {
namespace {

using testing::TempDir;

CredentialsStore::Options fast_options() {
  CredentialsStore::Options o;
  o.pbkdf2_iterations = 1000;
  return o;
}

FactSet sample(const std::string& tag) {
  return FactSet{Fact("teacher:42", "has_skill", Value::id(tag)), Fact("teacher:42", "note", Value::text("x y"))};
}

TEST(UserStore, SaveThenLoadProfile) {
  TempDir dir;
  UserStore store(dir.path());
  Uid uid{42};
  store.create_user(uid);
  store.save(uid, FactKind::profile(), sample("web"));
  EXPECT_EQ(store.load(uid, FactKind::profile()), sample("web"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "users/42/profile.facts"));
}

TEST(UserStore, FreshUserHasEmptyProfile) {
  TempDir dir;
  UserStore store(dir.path());
  store.create_user(Uid{3});
  EXPECT_TRUE(store.load(Uid{3}, FactKind::profile()).empty());
  EXPECT_FALSE(store.exists(Uid{3}, FactKind::profile()));
}

TEST(UserStore, UnitsAreIndependentFiles) {
  TempDir dir;
  UserStore store(dir.path());
  Uid uid{1};
  store.create_user(uid);
  store.save(uid, FactKind::unit("web"), sample("a"));
  store.save(uid, FactKind::unit("db"), sample("b"));
  EXPECT_EQ(store.load(uid, FactKind::unit("web")), sample("a"));
  EXPECT_EQ(store.load(uid, FactKind::unit("db")), sample("b"));
  EXPECT_EQ(store.list_units(uid), (std::vector<std::string>{"db", "web"}));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "users/1/units/web.facts"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "users/1/units/db.facts"));
  EXPECT_TRUE(store.remove(uid, FactKind::unit("db")));
  EXPECT_FALSE(store.remove(uid, FactKind::unit("db")));
  EXPECT_EQ(store.list_units(uid), std::vector<std::string>{"web"});
}

TEST(UserStore, UnregisteredUidIsAnError) {
  TempDir dir;
  UserStore store(dir.path());
  EXPECT_THROW(store.load(Uid{9}, FactKind::profile()), NotFoundError);
  EXPECT_THROW(store.save(Uid{9}, FactKind::profile(), sample("x")), NotFoundError);
}

TEST(UserStore, CorruptFileNamesPath) {
  TempDir dir;
  UserStore store(dir.path());
  store.create_user(Uid{5});
  std::ofstream(dir.path() / "users/5/profile.facts") << "teacher:5 broken\n";
  try {
    store.load(Uid{5}, FactKind::profile());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.source().find("profile.facts"), std::string::npos);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(UserStore, CrashBeforeRenameKeepsPreviousFile) {
  TempDir dir;
  UserStore store(dir.path());
  Uid uid{2};
  store.create_user(uid);
  store.save(uid, FactKind::profile(), sample("old"));
  store.set_before_rename([](const std::filesystem::path&) { throw std::runtime_error("simulated crash"); });
  EXPECT_THROW(store.save(uid, FactKind::profile(), sample("new")), std::runtime_error);
  store.set_before_rename({});
  EXPECT_EQ(store.load(uid, FactKind::profile()), sample("old"));
}

TEST(UserStore, ConcurrentSavesToOneUserSerialize) {
  TempDir dir;
  UserStore store(dir.path());
  Uid uid{8};
  store.create_user(uid);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 20; ++i) store.save(uid, FactKind::profile(), sample("s" + std::to_string(t)));
    });
  for (auto& th : threads) th.join();
  FactSet final_set = store.load(uid, FactKind::profile());
  EXPECT_EQ(final_set.size(), 2u);
}

TEST(Credentials, RegisterThenLogin) {
  TempDir dir;
  UserStore users(dir.path());
  CredentialsStore creds(dir.path(), users, fast_options());
  Uid uid = creds.register_teacher("M", "Jones", "jones@example.edu", "pw-1");
  SessionToken token = creds.login("jones@example.edu", "pw-1");
  EXPECT_EQ(token.uid, uid);
  EXPECT_EQ(creds.resolve(token.token), uid);
  EXPECT_TRUE(users.is_registered(uid));
}

TEST(Credentials, FreshUidsPerTeacher) {
  TempDir dir;
  UserStore users(dir.path());
  CredentialsStore creds(dir.path(), users, fast_options());
  Uid a = creds.register_teacher("A", "One", "a@example.edu", "pw");
  Uid b = creds.register_teacher("B", "Two", "b@example.edu", "pw");
  EXPECT_NE(a, b);
}

TEST(Credentials, WrongPasswordAndUnknownEmailLookAlike) {
  TempDir dir;
  UserStore users(dir.path());
  CredentialsStore creds(dir.path(), users, fast_options());
  creds.register_teacher("M", "Jones", "jones@example.edu", "right");
  std::string wrong, unknown;
  try {
    creds.login("jones@example.edu", "wrong");
  } catch (const AuthError& e) {
    wrong = e.what();
  }
  try {
    creds.login("nobody@example.edu", "right");
  } catch (const AuthError& e) {
    unknown = e.what();
  }
  EXPECT_FALSE(wrong.empty());
  EXPECT_EQ(wrong, unknown);
}

TEST(Credentials, DuplicateEmailRejected) {
  TempDir dir;
  UserStore users(dir.path());
  CredentialsStore creds(dir.path(), users, fast_options());
  creds.register_teacher("M", "Jones", "jones@example.edu", "pw");
  EXPECT_THROW(creds.register_teacher("X", "Y", "jones@example.edu", "pw2"), DuplicateError);
}

TEST(Credentials, MalformedInputRejected) {
  TempDir dir;
  UserStore users(dir.path());
  CredentialsStore creds(dir.path(), users, fast_options());
  EXPECT_THROW(creds.register_teacher("M", "Jones", "not-an-email", "pw"), ValidationError);
  EXPECT_THROW(creds.register_teacher("M", "Jones", "a@b.c", ""), ValidationError);
}

TEST(Credentials, ExpiredTokenRejected) {
  TempDir dir;
  UserStore users(dir.path());
  auto now = std::chrono::system_clock::now();
  auto options = fast_options();
  options.token_ttl = std::chrono::seconds(60);
  options.clock = [&] { return now; };
  CredentialsStore creds(dir.path(), users, options);
  creds.register_teacher("M", "Jones", "jones@example.edu", "pw");
  SessionToken t = creds.login("jones@example.edu", "pw");
  now += std::chrono::seconds(61);
  EXPECT_THROW(creds.resolve(t.token), AuthError);
  EXPECT_THROW(creds.resolve("forged-token"), AuthError);
}

TEST(Credentials, SurviveReload) {
  TempDir dir;
  UserStore users(dir.path());
  Uid uid;
  {
    CredentialsStore creds(dir.path(), users, fast_options());
    uid = creds.register_teacher("M", "Jones", "jones@example.edu", "pw");
  }
  CredentialsStore again(dir.path(), users, fast_options());
  EXPECT_EQ(again.login("jones@example.edu", "pw").uid, uid);
  Uid next = again.register_teacher("N", "Other", "other@example.edu", "pw");
  EXPECT_NE(next, uid);
}

TEST(Credentials, NothingIdentifyingUnderUsers) {
  TempDir dir;
  UserStore users(dir.path());
  CredentialsStore creds(dir.path(), users, fast_options());
  const std::string email = "sentinel-7f3a@example.edu";
  const std::string name = "Sentinelname";
  const std::string surname = "Sentinelsurname";
  const std::string password = "sentinel-password-91c";
  Uid uid = creds.register_teacher(name, surname, email, password);
  users.save(uid, FactKind::profile(), sample("web"));
  for (const auto& e : std::filesystem::recursive_directory_iterator(users.users_dir())) {
    if (!e.is_regular_file()) continue;
    std::string content = read_file(e.path());
    for (const auto& s : {email, name, surname, password})
      EXPECT_EQ(content.find(s), std::string::npos) << e.path() << " contains " << s;
  }
  std::string cred_file = read_file(creds.file());
  EXPECT_EQ(cred_file.find(password), std::string::npos);
}

TEST(PasswordHash, SaltedAndVerifiable) {
  std::string a = hash_password("secret", 1000);
  std::string b = hash_password("secret", 1000);
  EXPECT_NE(a, b);
  EXPECT_TRUE(verify_password("secret", a));
  EXPECT_FALSE(verify_password("Secret", a));
  EXPECT_FALSE(verify_password("secret", "garbage"));
}

}  // namespace
}  // namespace at
