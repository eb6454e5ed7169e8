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

// Generated corpora shared by the unit and acceptance tests.

#ifndef NERBOOT_TESTS_FIXTURES_H_
#define NERBOOT_TESTS_FIXTURES_H_

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nerboot/bootstrap.h"
#include "nerboot/corpus.h"
#include "nerboot/pattern.h"
#include "nerboot/synthgen.h"

namespace nerboot::fixtures {

inline GenSlot Slot(const std::string &pos, const std::string &sc = "None",
                    std::vector<std::string> surfaces = {}) {
  GenSlot slot;
  slot.pos = pos;
  slot.sc = {sc};
  slot.surfaces = std::move(surfaces);
  return slot;
}

inline GenSlot Entity(const std::string &pos, const std::string &sc, NEType type,
                      std::vector<std::string> surfaces) {
  GenSlot slot = Slot(pos, sc, std::move(surfaces));
  slot.ne_type = type;
  return slot;
}

// Distractor vocabulary without proper nouns. DT has the most surfaces and IN
// the second most, so they are the two most frequent POS values.
inline std::map<std::string, std::vector<std::string>> DistractorVocab() {
  return {{"DT", {"the", "a", "an", "this", "that", "these"}},
          {"IN", {"in", "on", "at", "of"}},
          {"NN", {"house", "road", "tree"}},
          {"VBD", {"saw", "left"}},
          {"JJ", {"old"}}};
}

// Per-type tags that only occur around that type's plants.
struct TypeTags {
  NEType type;
  std::string b, x, y;      // rare context POS values
  std::string s_sc, t_sc;   // SC of the seed center S and its right neighbour T
};

inline std::vector<TypeTags> RecoveryTypes(size_t count) {
  std::vector<TypeTags> all = {
      {NEType::kPerson, "VBG", "VBZ", "RB", "iof>person", "icl>person"},
      {NEType::kLocation, "TO", "WDT", "RBR", "iof>place", "icl>place"},
      {NEType::kOrganization, "MD", "WP", "RBS", "iof>organization", "icl>organization"},
      {NEType::kDate, "PDT", "WRB", "UH", "iof>date", "icl>date"},
  };
  all.resize(count);
  return all;
}

// Each plant sentence reads "<a> b S T x y" where <a> is a DT (seed context)
// or an IN (reached by replacing the weakest POS, the frequent DT). S and T
// are both entities of the type; T is reached by shifting the window one
// token right. `with_dt` / `with_in` give the per-type sentence counts.
struct Recovery {
  GenSpec test;
  GenSpec train;
};

inline Recovery RecoverySpecs(size_t types, const std::vector<size_t> &with_dt,
                              const std::vector<size_t> &with_in, size_t fillers,
                              uint64_t seed) {
  Recovery out;
  for (GenSpec *spec : {&out.test, &out.train}) {
    spec->rng_seed = seed;
    spec->vocab = DistractorVocab();
    spec->min_length = 4;
    spec->max_length = 8;
  }
  size_t plants = 0;
  const std::vector<TypeTags> tags = RecoveryTypes(types);
  for (size_t t = 0; t < tags.size(); ++t) {
    const TypeTags &tag = tags[t];
    const std::string name(NETypeName(tag.type));
    GenSlot s = Slot("NNP", tag.s_sc, {name + "S1", name + "S2", name + "S3"});
    GenSlot t_entity = Entity("NNP", tag.t_sc, tag.type, {name + "T1", name + "T2"});
    GenSlot t_plain = Slot("NNP", tag.t_sc, {name + "T1", name + "T2"});

    GenPlant plant;
    plant.ne_type = tag.type;
    plant.center = s;
    if (with_dt[t] > 0) {
      plant.contexts.push_back({static_cast<double>(with_dt[t]),
                                {Slot("DT"), Slot(tag.b)},
                                {t_entity, Slot(tag.x), Slot(tag.y)}});
    }
    if (with_in[t] > 0) {
      plant.contexts.push_back({static_cast<double>(with_in[t]),
                                {Slot("IN"), Slot(tag.b)},
                                {t_entity, Slot(tag.x), Slot(tag.y)}});
    }
    plant.occurrences = with_dt[t] + with_in[t];
    plants += plant.occurrences;
    out.test.planted.push_back(plant);

    // Training: the seed window three times (T unlabelled, so it yields no
    // seed of its own) and a second center that never occurs in test.
    GenPlant seed1;
    seed1.ne_type = tag.type;
    seed1.center = s;
    seed1.contexts = {{1.0, {Slot("DT"), Slot(tag.b)}, {t_plain, Slot(tag.x), Slot(tag.y)}}};
    seed1.occurrences = 3;
    GenPlant seed2;
    seed2.ne_type = tag.type;
    seed2.center = Slot("NNP", tag.s_sc + "-alt", {name + "Alt"});
    seed2.contexts = {{1.0, {Slot("JJ"), Slot("NN")}, {Slot("VBD"), Slot("JJ")}}};
    seed2.occurrences = 2;
    out.train.planted.push_back(seed1);
    out.train.planted.push_back(seed2);
  }
  out.test.sentences = plants + fillers;
  out.train.sentences = tags.size() * 5;
  return out;
}

// 40 entities over four types: 10 seed-reachable, 10 replacement-reachable,
// 20 shift-reachable.
inline Recovery PlantedRecovery(uint64_t seed = 20260415) {
  return RecoverySpecs(4, {3, 2, 3, 2}, {2, 3, 2, 3}, 100, seed);
}

// Two-token entities "first second" with equal SC lists. With `ms` set, the
// first token carries that suffix (three-tuple only).
inline GenSpec ChunkSpec(size_t plants, Profile profile, std::optional<std::string> ms,
                         uint64_t seed) {
  GenSpec spec;
  spec.rng_seed = seed;
  spec.profile = profile;
  spec.vocab = DistractorVocab();
  spec.sentences = plants + 40;
  spec.chunk_plants = plants;
  GenChunk chunk;
  chunk.ne_type = NEType::kPerson;
  chunk.first = Slot("NNP", "iof>person", {"Raja", "Anbu", "Kavi"});
  chunk.first.ms = std::move(ms);
  chunk.second = Slot("NNPS", "iof>person", {"Kumar", "Selvan"});
  chunk.contexts = {{1.0, {Slot("VBD"), Slot("IN")}, {Slot("VBZ"), Slot("DT")}}};
  spec.chunk = chunk;
  return spec;
}

inline std::string Lowercase(std::string text) {
  for (char &c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return text;
}

// Random vocabulary, plants and sentence counts; roughly 100-2000 tokens.
inline GenSpec RandomSpec(std::mt19937_64 &rng, Profile profile) {
  auto pick = [&rng](size_t lo, size_t hi) {
    return lo + static_cast<size_t>(rng() % (hi - lo + 1));
  };
  static const std::vector<std::string> kPos = {"DT", "IN", "NN", "VBD", "JJ", "RB", "CC", "VBZ"};
  static const std::vector<std::string> kCenterPos = {"NNP", "NNPS", "CD"};
  static const std::vector<std::string> kSc = {"iof>person", "iof>place", "icl>thing",
                                               "icl>date", "aoj>thing"};
  GenSpec spec;
  spec.rng_seed = rng();
  spec.profile = profile;
  const size_t vocab_size = pick(2, kPos.size());
  for (size_t i = 0; i < vocab_size; ++i) {
    auto &surfaces = spec.vocab[kPos[i]];
    const size_t n = pick(1, 4);
    for (size_t j = 0; j < n; ++j) surfaces.push_back(Lowercase(kPos[i]) + std::to_string(j));
  }
  spec.min_length = pick(1, 4);
  spec.max_length = spec.min_length + pick(0, 8);
  const size_t plants = pick(0, 5);
  size_t planted_sentences = 0;
  for (size_t p = 0; p < plants; ++p) {
    GenPlant plant;
    plant.ne_type = kAllNETypes[pick(0, kAllNETypes.size() - 1)];
    plant.center = Slot(kCenterPos[pick(0, kCenterPos.size() - 1)], kSc[p % kSc.size()],
                        {"E" + std::to_string(p) + "a", "E" + std::to_string(p) + "b"});
    if (profile == Profile::kThreeTuple && pick(0, 1)) plant.center.ms = "ms" + std::to_string(p);
    const size_t contexts = pick(1, 3);
    for (size_t c = 0; c < contexts; ++c) {
      GenContext context;
      context.weight = static_cast<double>(pick(1, 4));
      const size_t left = pick(0, 2), right = pick(0, 2);
      for (size_t i = 0; i < left; ++i) context.left.push_back(Slot(kPos[pick(0, vocab_size - 1)]));
      for (size_t i = 0; i < right; ++i) context.right.push_back(Slot(kPos[pick(0, vocab_size - 1)]));
      plant.contexts.push_back(std::move(context));
    }
    plant.occurrences = pick(1, 12);
    planted_sentences += plant.occurrences;
    spec.planted.push_back(std::move(plant));
  }
  // Centers are unique per type by construction: SC differs per plant index.
  spec.sentences = planted_sentences + pick(5, 150);
  return spec;
}

// Everything a run writes, serialized.
struct RunOutputs {
  std::string labels;
  std::string pool;
  std::string trace;
  std::string induction;
  std::string scores;

  bool operator==(const RunOutputs &) const = default;
};

inline RunOutputs Serialize(const BootstrapResult &result, const Corpus &test) {
  RunOutputs out;
  std::ostringstream labels, pool, trace, induction, scores;
  WriteCorpus(LabelledCorpus(test, result.labels), labels);
  WritePatternPool(result.pool, pool);
  WriteTrace(result.trace, trace);
  WriteInductionLog(result.induction, induction);
  WriteScoreLog(result.scores, scores);
  out.labels = labels.str();
  out.pool = pool.str();
  out.trace = trace.str();
  out.induction = induction.str();
  out.scores = scores.str();
  return out;
}

}  // namespace nerboot::fixtures

#endif  // NERBOOT_TESTS_FIXTURES_H_
