// Copyright 2026 The nerboot Authors.
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

#include <string>
#include <vector>

#include "nerboot/bootstrap.h"
#include "nerboot/pattern.h"
#include "nerboot/scoring.h"
#include "nerboot/synthgen.h"

namespace {

using namespace nerboot;

GenSlot Slot(const std::string &pos, const std::string &sc = "None") {
  GenSlot slot;
  slot.pos = pos;
  slot.sc = {sc};
  return slot;
}

// A corpus of roughly `sentences` * 7 tokens with one person plant per eight
// sentences.
GenResult MakeCorpus(size_t sentences) {
  GenSpec spec;
  spec.rng_seed = 11;
  spec.sentences = sentences;
  spec.vocab = {{"DT", {"the", "a", "an"}},
                {"NN", {"house", "road", "tree", "book"}},
                {"VBD", {"saw", "met", "left"}},
                {"IN", {"in", "on", "at"}},
                {"JJ", {"old", "new"}}};
  spec.min_length = 4;
  spec.max_length = 10;
  GenPlant plant;
  plant.ne_type = NEType::kPerson;
  plant.center = Slot("NNP", "iof>person");
  plant.center.surfaces = {"Raja", "Kumar", "Devi"};
  GenContext context;
  context.left = {Slot("VBD"), Slot("IN")};
  context.right = {Slot("VBD"), Slot("DT")};
  plant.contexts = {context};
  plant.occurrences = sentences / 8 + 1;
  spec.planted = {plant};
  return Generate(spec);
}

void BM_Generate(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(MakeCorpus(state.range(0)));
}
BENCHMARK(BM_Generate)->Arg(100)->Arg(1000);

void BM_BuildFrequencyTable(benchmark::State &state) {
  const GenResult gen = MakeCorpus(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildFrequencyTable(gen.corpus, {}));
  }
  state.SetItemsProcessed(state.iterations() * gen.corpus.TokenCount());
}
BENCHMARK(BM_BuildFrequencyTable)->Arg(100)->Arg(1000)->Arg(10000);

void BM_MatchExact(benchmark::State &state) {
  const GenResult gen = MakeCorpus(state.range(0));
  auto seeds = ExtractSeedPatterns(gen.corpus, 1);
  const Pattern &pattern = seeds.at(NEType::kPerson).front().pattern;
  for (auto _ : state) {
    benchmark::DoNotOptimize(MatchExact(pattern, gen.corpus, MatchScope::kFullWindow));
  }
  state.SetItemsProcessed(state.iterations() * gen.corpus.TokenCount());
}
BENCHMARK(BM_MatchExact)->Arg(1000)->Arg(10000);

void BM_RunBootstrap(benchmark::State &state) {
  const GenResult gen = MakeCorpus(state.range(0));
  PatternPool seeds = SeedPool(ExtractSeedPatterns(gen.corpus, 2), gen.corpus.profile, 2);
  BootstrapConfig config;
  config.max_iterations = 10;
  config.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(RunBootstrap(seeds, gen.corpus, config));
}
BENCHMARK(BM_RunBootstrap)->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
