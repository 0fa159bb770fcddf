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

#include "at/fact_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "at/error.hpp"

namespace fs = std::filesystem;

namespace at {

FactKind FactKind::unit(std::string unit_id) {
  if (!is_identifier(unit_id)) throw Error("invalid unit id '" + unit_id + "'");
  return FactKind(std::move(unit_id));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomically(const fs::path& target, const std::string& content,
                      const std::function<void(const fs::path&)>& before_rename) {
  fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  if (before_rename) before_rename(tmp);
  fs::rename(tmp, target);
}

UserStore::UserStore(fs::path root) : root_(std::move(root)) { fs::create_directories(users_dir()); }

fs::path UserStore::user_dir(Uid uid) const { return users_dir() / uid.to_string(); }

fs::path UserStore::device_dir(Uid uid, const std::string& unit_id) const {
  return user_dir(uid) / "device" / unit_id;
}

void UserStore::create_user(Uid uid) { fs::create_directories(user_dir(uid)); }

bool UserStore::is_registered(Uid uid) const { return fs::is_directory(user_dir(uid)); }

void UserStore::require_registered(Uid uid) const {
  if (!is_registered(uid)) throw NotFoundError("unregistered uid " + uid.to_string());
}

fs::path UserStore::path_for(Uid uid, const FactKind& kind) const {
  if (kind.is_profile()) return user_dir(uid) / "profile.facts";
  return user_dir(uid) / "units" / (kind.unit_id() + ".facts");
}

std::unique_lock<std::recursive_mutex> UserStore::lock(Uid uid) const {
  std::recursive_mutex* m;
  {
    std::lock_guard g(locks_mutex_);
    auto& slot = locks_[uid];
    if (!slot) slot = std::make_unique<std::recursive_mutex>();
    m = slot.get();
  }
  return std::unique_lock(*m);
}

FactSet UserStore::load(Uid uid, const FactKind& kind) const {
  auto guard = lock(uid);
  require_registered(uid);
  fs::path p = path_for(uid, kind);
  if (!fs::exists(p)) return {};
  return parse_facts(read_file(p), p.string());
}

void UserStore::save(Uid uid, const FactKind& kind, const FactSet& facts) {
  auto guard = lock(uid);
  require_registered(uid);
  write_atomically(path_for(uid, kind), serialize_facts(facts), before_rename_);
}

bool UserStore::exists(Uid uid, const FactKind& kind) const {
  auto guard = lock(uid);
  require_registered(uid);
  return fs::exists(path_for(uid, kind));
}

bool UserStore::remove(Uid uid, const FactKind& kind) {
  auto guard = lock(uid);
  require_registered(uid);
  bool removed = fs::remove(path_for(uid, kind));
  if (!kind.is_profile()) fs::remove_all(device_dir(uid, kind.unit_id()));
  return removed;
}

std::vector<std::string> UserStore::list_units(Uid uid) const {
  auto guard = lock(uid);
  require_registered(uid);
  std::vector<std::string> out;
  fs::path dir = user_dir(uid) / "units";
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".facts") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace at
