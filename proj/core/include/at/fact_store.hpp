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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "at/fact.hpp"

namespace at {

/// Opaque numeric teacher identifier. Fact files only ever see this.
struct Uid {
  std::uint64_t value = 0;
  friend auto operator<=>(const Uid&, const Uid&) = default;
  std::string to_string() const { return std::to_string(value); }
};

/// Which per-user fact file to address.
class FactKind {
 public:
  static FactKind profile() { return FactKind(std::nullopt); }
  static FactKind unit(std::string unit_id);

  bool is_profile() const { return !unit_id_; }
  const std::string& unit_id() const { return *unit_id_; }

 private:
  explicit FactKind(std::optional<std::string> unit_id) : unit_id_(std::move(unit_id)) {}
  std::optional<std::string> unit_id_;
};

/// Writes `content` to `target` through a sibling temporary file and a rename.
/// `before_rename` runs between the two steps (test fault injection).
void write_atomically(const std::filesystem::path& target, const std::string& content,
                      const std::function<void(const std::filesystem::path&)>& before_rename = {});

std::string read_file(const std::filesystem::path& path);

/// Per-user fact files under `<root>/users/<uid>/`:
///
///   profile.facts
///   units/<unit_id>.facts
///   device/<unit_id>/...
///
/// A uid counts as registered once its directory exists. Saves and loads
/// for one uid are serialized by a per-user lock; distinct users proceed
/// concurrently.
class UserStore {
 public:
  explicit UserStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path users_dir() const { return root_ / "users"; }
  std::filesystem::path user_dir(Uid uid) const;
  std::filesystem::path device_dir(Uid uid, const std::string& unit_id) const;

  void create_user(Uid uid);
  bool is_registered(Uid uid) const;

  /// Empty set when the file was never saved. Throws NotFoundError for
  /// unregistered uids and ParseError (naming the path) on corrupt files.
  FactSet load(Uid uid, const FactKind& kind) const;
  void save(Uid uid, const FactKind& kind, const FactSet& facts);
  bool exists(Uid uid, const FactKind& kind) const;
  /// Returns false when nothing was stored.
  bool remove(Uid uid, const FactKind& kind);
  std::vector<std::string> list_units(Uid uid) const;

  /// Lock held by compound operations; re-entrant for the owning thread.
  std::unique_lock<std::recursive_mutex> lock(Uid uid) const;

  /// Test hook run between temp-file write and rename.
  void set_before_rename(std::function<void(const std::filesystem::path&)> hook) {
    before_rename_ = std::move(hook);
  }

 private:
  std::filesystem::path path_for(Uid uid, const FactKind& kind) const;
  void require_registered(Uid uid) const;

  std::filesystem::path root_;
  std::function<void(const std::filesystem::path&)> before_rename_;
  mutable std::mutex locks_mutex_;
  mutable std::map<Uid, std::unique_ptr<std::recursive_mutex>> locks_;
};

struct TeacherIdentity {
  Uid uid;
  std::string name;
  std::string surname;
  std::string email;
  std::string password_hash;
};

struct SessionToken {
  std::string token;
  Uid uid;
  std::chrono::system_clock::time_point expiry;
};

/// Login data kept apart from the fact files, in `<root>/credentials.json`.
///
/// Passwords are stored as salted PBKDF2-HMAC-SHA256 hashes. Session tokens
/// are 256-bit random strings held in memory only.
class CredentialsStore {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  struct Options {
    std::chrono::seconds token_ttl{std::chrono::hours(12)};
    int pbkdf2_iterations = 100000;
    Clock clock;
  };

  CredentialsStore(std::filesystem::path root, UserStore& users);
  CredentialsStore(std::filesystem::path root, UserStore& users, Options options);

  std::filesystem::path file() const { return root_ / "credentials.json"; }

  /// Throws DuplicateError when the email is taken, ValidationError on a
  /// malformed email or empty password.
  Uid register_teacher(const std::string& name, const std::string& surname, const std::string& email,
                       const std::string& password);
  /// Throws AuthError for unknown email and wrong password alike.
  SessionToken login(const std::string& email, const std::string& password);
  /// Throws AuthError for unknown or expired tokens.
  Uid resolve(const std::string& token);

  std::optional<TeacherIdentity> find_by_email(const std::string& email) const;
  std::optional<TeacherIdentity> find(Uid uid) const;
  std::vector<TeacherIdentity> all() const;

 private:
  void load();
  void persist() const;
  std::chrono::system_clock::time_point now() const;

  std::filesystem::path root_;
  UserStore& users_;
  Options options_;
  mutable std::mutex mutex_;
  std::uint64_t next_uid_ = 1;
  std::map<Uid, TeacherIdentity> records_;
  std::map<std::string, SessionToken> sessions_;
};

/// `pbkdf2-sha256$<iterations>$<salt hex>$<hash hex>`.
std::string hash_password(const std::string& password, int iterations);
bool verify_password(const std::string& password, const std::string& encoded);

}  // namespace at
