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

// Deterministic synthetic corpora with planted entities and a manifest of
// their spans.
//
// Every planted occurrence is its own sentence: optional distractor padding,
// the left context, the center, the right context, more padding. Context
// distributions are realized exactly (largest remainder over the weights)
// and then shuffled. Filler sentences draw uniformly from the distractor
// vocabulary, so a POS with more surfaces is proportionally more frequent.

#ifndef NERBOOT_SYNTHGEN_H_
#define NERBOOT_SYNTHGEN_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerboot/corpus.h"
#include "nerboot/types.h"

namespace nerboot {

// One generated token. `surfaces` defaults to the vocabulary entry of `pos`,
// or to the lower-cased POS. A set `ne_type` makes it a gold entity.
struct GenSlot {
  std::string pos;
  std::vector<std::string> sc = {"None"};
  std::optional<std::string> ms;
  std::vector<std::string> surfaces;
  std::optional<NEType> ne_type;
};

struct GenContext {
  double weight = 1.0;
  std::vector<GenSlot> left;   // tokens before the center, in order
  std::vector<GenSlot> right;  // tokens after the center, in order
};

struct GenPlant {
  NEType ne_type = NEType::kPerson;
  GenSlot center;  // surfaces required
  std::vector<GenContext> contexts;
  size_t occurrences = 1;
};

// Two adjacent tokens sharing one SC list, planted as one two-token entity.
struct GenChunk {
  NEType ne_type = NEType::kPerson;
  GenSlot first;
  GenSlot second;
  std::vector<GenContext> contexts;
};

struct GenSpec {
  uint64_t rng_seed = 0;
  size_t sentences = 0;  // total, planted sentences included
  Profile profile = Profile::kTwoTuple;
  std::map<std::string, std::vector<std::string>> vocab;  // distractor POS -> surfaces
  std::vector<std::string> distractor_sc = {"None"};
  size_t min_length = 3;  // filler sentence length range
  size_t max_length = 8;
  size_t min_padding = 0;  // distractor tokens on each side of a plant
  size_t max_padding = 0;
  std::vector<GenPlant> planted;
  size_t chunk_plants = 0;
  std::optional<GenChunk> chunk;
};

struct ManifestEntry {
  std::string sentence_id;
  size_t sentence = 0;
  Span span;  // 0-based, inclusive
  NEType ne_type = NEType::kPerson;

  auto operator<=>(const ManifestEntry &) const = default;
};

struct GenResult {
  Corpus corpus;
  std::vector<ManifestEntry> manifest;
};

// Throws GenerationError for an unsatisfiable or inconsistent spec.
GenResult Generate(const GenSpec &spec);

// JSON spec; see docs/synthgen.md. Throws ParseError on malformed JSON and
// GenerationError on invalid fields.
GenSpec ParseGenSpec(std::istream &in);
GenSpec LoadGenSpec(const std::string &path);

// One line per entity: "<sentence id>\t<first>-<last>\t<type>", 1-based.
void WriteManifest(const std::vector<ManifestEntry> &manifest, std::ostream &out);
std::vector<ManifestEntry> ReadManifest(std::istream &in, const Corpus &corpus);

}  // namespace nerboot

#endif  // NERBOOT_SYNTHGEN_H_
