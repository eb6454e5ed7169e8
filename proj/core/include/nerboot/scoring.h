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

// Corpus/extraction counts and the three scores that drive induction:
//
//   pattern score     Ps = (F / n) * log(F)
//   tuple-value score     log(f(v at k, P)) / (f(P) * f(v at k))
//   POS-pair score        f(POS(W), POS(X)) / f(POS(W))

#ifndef NERBOOT_SCORING_H_
#define NERBOOT_SCORING_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nerboot/corpus.h"
#include "nerboot/pattern.h"

namespace nerboot {

// How n in the pattern score is read: total extractions of the pattern
// (kBasilisk) or the number of patterns in the active pool (kLiteral).
enum class NjSemantics { kBasilisk, kLiteral };

std::string_view NjSemanticsName(NjSemantics nj);
std::optional<NjSemantics> ParseNjSemanticsName(std::string_view name);

struct PatternCounts {
  size_t F = 0;  // extractions confirmed as the pattern's entity type
  size_t n = 0;  // all extractions by the pattern

  bool operator==(const PatternCounts &) const = default;
};

// A full slot tuple observed at a context offset.
struct SlotTupleKey {
  int offset = 0;
  std::string pos;
  std::optional<std::string> ms;
  std::vector<std::string> sc;

  auto operator<=>(const SlotTupleKey &) const = default;
};

struct FrequencyTable {
  std::map<std::string, PatternCounts> per_pattern_extractions;
  // (offset, POS) over every token window of the corpus.
  std::map<std::pair<int, std::string>, size_t> tuple_value_at_position;
  // (pattern id, offset, POS) over the pattern's extraction windows.
  std::map<std::tuple<std::string, int, std::string>, size_t> tuple_value_with_pattern;
  // Ordered adjacency of POS tags within sentences.
  std::map<std::pair<std::string, std::string>, size_t> pos_pair;
  std::map<std::string, size_t> pos_unigram;
  // Full tuples per context offset; used to fill a replaced slot.
  std::map<SlotTupleKey, size_t> slot_at_position;

  PatternCounts Counts(const std::string &pattern_id) const;
  size_t TupleAt(int offset, const std::string &pos) const;
  size_t TupleWithPattern(const std::string &pattern_id, int offset,
                          const std::string &pos) const;
  size_t PosPair(const std::string &left, const std::string &right) const;
  size_t PosUnigram(const std::string &pos) const;

  // Adds every count of `other` into this table.
  void Merge(const FrequencyTable &other);

  bool operator==(const FrequencyTable &) const = default;
};

// Predicate deciding whether an extraction counts toward F. When empty,
// every extraction counts.
using ConfirmFn = std::function<bool(const Extraction &)>;

// Throws IntegrityError for an extraction that does not reference a valid
// sentence/span of `corpus`.
FrequencyTable BuildFrequencyTable(const Corpus &corpus,
                                   std::span<const Extraction> extractions,
                                   const ConfirmFn &confirmed = {});

// log_base(x). The base must exceed 1 so that rankings do not flip.
double LogBase(double x, double base);
void ValidateLogBase(double base);

// (F / n) * log_base(F). Throws ScoreUndefinedError if F == 0 and
// IntegrityError if n == 0.
double ScorePattern(size_t F, size_t n, double log_base);

// log_base(f_tv_p) / (f_p * f_tv). Throws ScoreUndefinedError if
// f_tv_p == 0, IntegrityError if f_p * f_tv == 0 or f_tv < f_tv_p.
double ScoreTupleValue(size_t f_tv_p, size_t f_p, size_t f_tv, double log_base);

// Orderings of the two scores that do not depend on the log base: both
// scores are a positive multiple of these keys for every valid base, so
// argmax/argmin over the keys equal those over the scores, without ties that
// one base resolves differently through rounding.
double PatternRankKey(size_t F, size_t n);
double TupleRankKey(size_t f_tv_p, size_t f_p, size_t f_tv);

// f_pair / f_left_pos, in [0, 1]. Throws IntegrityError if f_left_pos == 0
// or f_pair > f_left_pos.
double PosPairFrequencyScore(size_t f_pair, size_t f_left_pos);

struct PatternScore {
  std::string pattern_id;
  double ps = 0.0;
  size_t F = 0;
  size_t n = 0;
};

struct TupleValueScore {
  std::string pattern_id;
  int position = 0;
  std::string pos_value;
  std::optional<double> score;  // empty when f(v at k, P) == 0
};

struct PatternScoring {
  std::vector<PatternScore> scores;    // patterns with F >= 1, input order
  std::vector<std::string> dropped;    // patterns with F == 0
};

PatternScoring ScorePatterns(const FrequencyTable &table,
                             std::span<const Pattern *const> patterns,
                             NjSemantics nj, double log_base);

// Tuple-value scores of the pattern's POS at the four context offsets, in
// slot order.
std::vector<TupleValueScore> ScoreTupleValues(const Pattern &pattern,
                                              const FrequencyTable &table,
                                              double log_base);

}  // namespace nerboot

#endif  // NERBOOT_SCORING_H_
