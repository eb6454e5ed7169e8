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

// New-pattern generation: POS replacement, window shifting and chunking.
//
// All operations are deterministic. Ties are broken by the leftmost context
// position (replacement), by shifting right (window shift), and by ascending
// notation text everywhere else.

#ifndef NERBOOT_INDUCTION_H_
#define NERBOOT_INDUCTION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nerboot/corpus.h"
#include "nerboot/pattern.h"
#include "nerboot/scoring.h"

namespace nerboot {

enum class PairDirection { kRightOfCenter, kLeftOfCenter };

// POS(W) and POS(X) of a center token W and its neighbour X. For
// kLeftOfCenter the corpus adjacency is (X, W).
struct PosPair {
  std::string left;
  std::string right;
  PairDirection direction = PairDirection::kRightOfCenter;
};

// POS-pair score of the pair, reading adjacency in corpus order.
double PairScore(const FrequencyTable &table, const PosPair &pair);

struct ScoredPattern {
  const Pattern *pattern = nullptr;
  double ps = 0.0;
  size_t F = 0;  // when n > 0, ranking uses PatternRankKey(F, n) instead of ps
  size_t n = 0;
};

// Highest-Ps pattern of `type`, ties by ascending notation. Returns nullptr
// when `type` has no scored pattern.
const Pattern *SelectPatternForModification(std::span<const ScoredPattern> scores,
                                            NEType type);

struct ReplacementResult {
  Pattern pattern;
  int position = 0;            // context offset that was replaced
  std::string old_pos;
  std::string new_pos;
  std::optional<double> masked_score;  // empty if the replaced value had no co-occurrence
  size_t new_pos_count = 0;    // corpus frequency of new_pos at the position
};

// Masks the context POS with the lowest tuple-value score and fills it with
// the most frequent other POS at that position in the corpus; SC/MS come from
// the most frequent full tuple with that POS there. Sentinel POS values are
// never chosen. Returns nullopt when no score is computable or no
// alternative POS exists.
std::optional<ReplacementResult> ReplacePos(const Pattern &pattern,
                                            const FrequencyTable &table,
                                            double log_base, int iteration = 0);

enum class ShiftDirection { kRight, kLeft };

struct ShiftResult {
  Pattern pattern;
  ShiftDirection direction = ShiftDirection::kRight;
  double s_right = 0.0;
  double s_left = 0.0;
  size_t support = 0;  // match windows the new pattern was instantiated from
};

// Moves the window one token right (new center = old w+1) when the right
// POS-pair score is at least the left one, otherwise left. The new slots are
// the most frequent tuple at each new position over `matches`, the pattern's
// current extractions. Matches whose new center would fall outside the
// sentence are skipped. Returns nullopt when nothing is left to instantiate.
std::optional<ShiftResult> ShiftWindow(const Pattern &pattern,
                                       const FrequencyTable &table,
                                       const Corpus &corpus,
                                       std::span<const Extraction> matches,
                                       int iteration = 0);

// Two adjacent tokens to be joined into one entity unit.
struct ChunkDecision {
  std::string sentence_id;
  size_t sentence = 0;
  Span span;                       // exactly two tokens
  std::vector<std::string> shared_sc;
  double pair_score = 0.0;
  NEType ne_type = NEType::kPerson;
  std::string pattern_id;
  size_t center = 0;               // token index of W
  PairDirection direction = PairDirection::kRightOfCenter;
};

// For every extraction and each outside neighbour X of its unit, emits a
// decision when the pair score reaches `threshold`, both tokens carry the
// same SC list and, for three-tuple corpora, the pair's left token has no
// morphological suffix. One decision per (sentence, span), corpus order.
std::vector<ChunkDecision> ChunkCandidates(const Corpus &corpus,
                                           const FrequencyTable &table,
                                           std::span<const Extraction> extractions,
                                           double threshold, Profile profile);

void ValidateChunkThreshold(double threshold);

// Pattern for chunked units of one entity type: the most frequent tuple per
// slot over the units' windows, with W as the center. `layout` must already
// contain the merged units.
std::optional<Pattern> BuildChunkPattern(std::span<const ChunkDecision> decisions,
                                         const Corpus &corpus,
                                         const ChunkLayout &layout, int iteration);

// Candidates whose id is absent from `pool`, first occurrence only, stamped
// with `iteration`.
std::vector<Pattern> DedupAndAdmit(const PatternPool &pool,
                                   std::vector<Pattern> candidates, int iteration);

}  // namespace nerboot

#endif  // NERBOOT_INDUCTION_H_
