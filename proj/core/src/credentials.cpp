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

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <nlohmann/json.hpp>

#include "at/error.hpp"
#include "at/fact_store.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace at {

namespace {

std::string to_hex(const unsigned char* data, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xF]);
  }
  return out;
}

std::vector<unsigned char> from_hex(const std::string& hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::vector<unsigned char> out;
  if (hex.size() % 2) return out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return {};
    out.push_back(static_cast<unsigned char>(hi << 4 | lo));
  }
  return out;
}

std::vector<unsigned char> random_bytes(std::size_t n) {
  std::vector<unsigned char> out(n);
  if (RAND_bytes(out.data(), static_cast<int>(n)) != 1) throw Error("system random source failed");
  return out;
}

std::vector<unsigned char> pbkdf2(const std::string& password, const std::vector<unsigned char>& salt,
                                  int iterations) {
  std::vector<unsigned char> out(32);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()), iterations, EVP_sha256(),
                        static_cast<int>(out.size()), out.data()) != 1)
    throw Error("password hashing failed");
  return out;
}

bool valid_email(const std::string& email) {
  auto at = email.find('@');
  return !email.empty() && at != std::string::npos && at > 0 && at + 1 < email.size();
}

}  // namespace

std::string hash_password(const std::string& password, int iterations) {
  auto salt = random_bytes(16);
  auto digest = pbkdf2(password, salt, iterations);
  return "pbkdf2-sha256$" + std::to_string(iterations) + "$" + to_hex(salt.data(), salt.size()) + "$" +
         to_hex(digest.data(), digest.size());
}

bool verify_password(const std::string& password, const std::string& encoded) {
  auto p1 = encoded.find('$');
  auto p2 = encoded.find('$', p1 + 1);
  auto p3 = encoded.find('$', p2 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos || p3 == std::string::npos) return false;
  if (encoded.substr(0, p1) != "pbkdf2-sha256") return false;
  int iterations = 0;
  try {
    iterations = std::stoi(encoded.substr(p1 + 1, p2 - p1 - 1));
  } catch (const std::exception&) {
    return false;
  }
  auto salt = from_hex(encoded.substr(p2 + 1, p3 - p2 - 1));
  auto expected = from_hex(encoded.substr(p3 + 1));
  if (salt.empty() || expected.size() != 32 || iterations <= 0) return false;
  auto digest = pbkdf2(password, salt, iterations);
  return CRYPTO_memcmp(digest.data(), expected.data(), digest.size()) == 0;
}

CredentialsStore::CredentialsStore(fs::path root, UserStore& users)
    : CredentialsStore(std::move(root), users, Options{}) {}

CredentialsStore::CredentialsStore(fs::path root, UserStore& users, Options options)
    : root_(std::move(root)), users_(users), options_(std::move(options)) {
  fs::create_directories(root_);
  load();
}

std::chrono::system_clock::time_point CredentialsStore::now() const {
  return options_.clock ? options_.clock() : std::chrono::system_clock::now();
}

void CredentialsStore::load() {
  if (!fs::exists(file())) return;
  json doc;
  try {
    doc = json::parse(read_file(file()));
  } catch (const json::exception& e) {
    throw Error("corrupt credentials store " + file().string() + ": " + e.what());
  }
  next_uid_ = doc.value("next_uid", std::uint64_t{1});
  for (const auto& r : doc.value("teachers", json::array())) {
    TeacherIdentity t;
    t.uid = Uid{r.at("uid").get<std::uint64_t>()};
    t.name = r.at("name").get<std::string>();
    t.surname = r.at("surname").get<std::string>();
    t.email = r.at("email").get<std::string>();
    t.password_hash = r.at("password_hash").get<std::string>();
    records_.emplace(t.uid, std::move(t));
  }
}

void CredentialsStore::persist() const {
  json teachers = json::array();
  for (const auto& [uid, t] : records_) {
    teachers.push_back({{"uid", uid.value},
                        {"name", t.name},
                        {"surname", t.surname},
                        {"email", t.email},
                        {"password_hash", t.password_hash}});
  }
  json doc = {{"next_uid", next_uid_}, {"teachers", teachers}};
  write_atomically(file(), doc.dump(2) + "\n");
}

Uid CredentialsStore::register_teacher(const std::string& name, const std::string& surname,
                                       const std::string& email, const std::string& password) {
  std::vector<Violation> violations;
  if (!valid_email(email)) violations.push_back({"email", "must be non-empty and contain '@'"});
  if (password.empty()) violations.push_back({"password", "must not be empty"});
  if (!violations.empty()) throw ValidationError(std::move(violations));

  std::string hashed = hash_password(password, options_.pbkdf2_iterations);
  std::lock_guard g(mutex_);
  for (const auto& [uid, t] : records_)
    if (t.email == email) throw DuplicateError("email already registered");
  Uid uid{next_uid_++};
  records_.emplace(uid, TeacherIdentity{uid, name, surname, email, std::move(hashed)});
  persist();
  users_.create_user(uid);
  return uid;
}

SessionToken CredentialsStore::login(const std::string& email, const std::string& password) {
  std::optional<TeacherIdentity> who = find_by_email(email);
  // Unknown emails still pay for one hash so both failures look alike.
  bool ok = who ? verify_password(password, who->password_hash)
                : (verify_password(password, hash_password("", options_.pbkdf2_iterations)), false);
  if (!ok) throw AuthError("invalid email or password");
  auto bytes = random_bytes(32);
  SessionToken token{to_hex(bytes.data(), bytes.size()), who->uid, now() + options_.token_ttl};
  std::lock_guard g(mutex_);
  sessions_[token.token] = token;
  return token;
}

Uid CredentialsStore::resolve(const std::string& token) {
  std::lock_guard g(mutex_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) throw AuthError("unknown session token");
  if (now() >= it->second.expiry) {
    sessions_.erase(it);
    throw AuthError("session token expired");
  }
  return it->second.uid;
}

std::optional<TeacherIdentity> CredentialsStore::find_by_email(const std::string& email) const {
  std::lock_guard g(mutex_);
  for (const auto& [uid, t] : records_)
    if (t.email == email) return t;
  return std::nullopt;
}

std::optional<TeacherIdentity> CredentialsStore::find(Uid uid) const {
  std::lock_guard g(mutex_);
  auto it = records_.find(uid);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<TeacherIdentity> CredentialsStore::all() const {
  std::lock_guard g(mutex_);
  std::vector<TeacherIdentity> out;
  for (const auto& [uid, t] : records_) out.push_back(t);
  return out;
}

}  // namespace at
