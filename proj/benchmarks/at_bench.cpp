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

#include <benchmark/benchmark.h>

#include <random>

#include "at/device.hpp"
#include "at/fact.hpp"
#include "at/rules.hpp"
#include "at/scenario.hpp"

namespace {

const std::filesystem::path kConfig = std::filesystem::path(AT_SOURCE_DIR) / "config";
const std::filesystem::path kFixtures = std::filesystem::path(AT_SOURCE_DIR) / "fixtures";

const at::DeviceConfig& config() {
  static const at::DeviceConfig c = at::DeviceConfig::load(kConfig);
  return c;
}

const at::RuleBase& rules() {
  static const at::RuleBase rb = at::load_rules((kConfig / "adaptation.rules").string());
  return rb;
}

at::TeacherProfile jones() {
  at::FactSet raw = at::parse_facts(at::read_file(kFixtures / "jones.profile.facts"));
  at::FactSet facts;
  for (const auto& f : raw) facts.insert(at::Fact(at::teacher_subject(at::Uid{1}), f.predicate, f.object));
  return at::facts_to_profile(at::Uid{1}, facts, config().registry);
}

at::TeachingUnit web_programming() {
  return at::facts_to_unit("web_programming",
                           at::parse_facts(at::read_file(kFixtures / "web_programming.unit.facts")));
}

at::FactSet synthetic_facts(std::size_t n) {
  std::mt19937_64 rng(42);
  at::FactSet fs;
  while (fs.size() < n)
    fs.insert(at::Fact("s" + std::to_string(rng() % 97), "p" + std::to_string(rng() % 13),
                       at::Value::integer(static_cast<std::int64_t>(rng() % 1000))));
  return fs;
}

void BM_InferJones(benchmark::State& state) {
  at::FactSet facts = at::profile_to_facts(jones(), config().registry);
  for (auto _ : state) benchmark::DoNotOptimize(at::infer(facts, rules()));
}
BENCHMARK(BM_InferJones);

void BM_SerializeFacts(benchmark::State& state) {
  at::FactSet fs = synthetic_facts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(at::serialize_facts(fs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SerializeFacts)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ParseFacts(benchmark::State& state) {
  std::string text = at::serialize_facts(synthetic_facts(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(at::parse_facts(text));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseFacts)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Apportion(benchmark::State& state) {
  std::vector<at::Rational> weights;
  for (int i = 1; i <= 12; ++i) weights.emplace_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(at::apportion(200, weights));
}
BENCHMARK(BM_Apportion);

void BM_GenerateDevice(benchmark::State& state) {
  at::TeacherProfile profile = jones();
  at::TeachingUnit unit = web_programming();
  at::MethodDefinition method = at::load_method(kConfig / "maetic.method");
  for (auto _ : state) {
    at::DeviceBundle b = at::generate_device(profile, unit, method, rules(), config());
    benchmark::DoNotOptimize(at::render_bundle(b, config().theme));
  }
}
BENCHMARK(BM_GenerateDevice);

}  // namespace

BENCHMARK_MAIN();
