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

#include "nerboot/induction.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "nerboot/errors.h"

namespace nerboot {
namespace {

// Per-slot tally of observed tuples keyed by their notation.
class SlotTally {
 public:
  explicit SlotTally(Profile profile) : profile_(profile) {}

  void Add(int slot, const Token &token) {
    SlotValue value = SlotValue::FromToken(token, profile_);
    auto &entry = counts_[slot][SerializeSlot(value, profile_)];
    entry.first = std::move(value);
    ++entry.second;
  }

  // Most frequent value per slot; ties go to the least notation.
  Slots Modes() const {
    Slots slots;
    for (int slot = 0; slot < kWindowSize; ++slot) {
      size_t best = 0;
      for (const auto &[text, entry] : counts_[slot]) {
        if (entry.second > best) {
          best = entry.second;
          slots[slot] = entry.first;
        }
      }
    }
    return slots;
  }

 private:
  Profile profile_;
  std::array<std::map<std::string, std::pair<SlotValue, size_t>>, kWindowSize> counts_;
};

bool IsSentinelPos(const std::string &pos) { return pos == kBosPos || pos == kEosPos; }

}  // namespace

double PairScore(const FrequencyTable &table, const PosPair &pair) {
  // Denominator is always the unigram count of W's POS.
  if (pair.direction == PairDirection::kRightOfCenter) {
    return PosPairFrequencyScore(table.PosPair(pair.left, pair.right),
                                 table.PosUnigram(pair.left));
  }
  return PosPairFrequencyScore(table.PosPair(pair.right, pair.left),
                               table.PosUnigram(pair.left));
}

const Pattern *SelectPatternForModification(std::span<const ScoredPattern> scores,
                                            NEType type) {
  const Pattern *best = nullptr;
  double best_key = 0.0;
  std::string best_text;
  for (const ScoredPattern &scored : scores) {
    if (scored.pattern == nullptr || scored.pattern->ne_type != type) continue;
    const double key = scored.n > 0 ? PatternRankKey(scored.F, scored.n) : scored.ps;
    std::string text = SerializePattern(*scored.pattern);
    if (best == nullptr || key > best_key || (key == best_key && text < best_text)) {
      best = scored.pattern;
      best_key = key;
      best_text = std::move(text);
    }
  }
  return best;
}

std::optional<ReplacementResult> ReplacePos(const Pattern &pattern,
                                            const FrequencyTable &table,
                                            double log_base, int iteration) {
  std::vector<TupleValueScore> scores = ScoreTupleValues(pattern, table, log_base);
  bool any_defined = std::any_of(scores.begin(), scores.end(),
                                 [](const TupleValueScore &s) { return s.score.has_value(); });
  if (!any_defined) return std::nullopt;

  // An undefined score (value never seen with the pattern) ranks lowest.
  const size_t f_p = table.Counts(pattern.id).n;
  const TupleValueScore *weakest = nullptr;
  double weakest_key = 0.0;
  for (const TupleValueScore &entry : scores) {
    if (!entry.score) {
      weakest = &entry;
      break;
    }
    const double key =
        TupleRankKey(table.TupleWithPattern(pattern.id, entry.position, entry.pos_value), f_p,
                     table.TupleAt(entry.position, entry.pos_value));
    if (weakest == nullptr || key < weakest_key) {
      weakest = &entry;
      weakest_key = key;
    }
  }
  const int offset = weakest->position;
  const std::string &old_pos = weakest->pos_value;

  std::string new_pos;
  size_t new_count = 0;
  for (const auto &[key, count] : table.tuple_value_at_position) {
    if (key.first != offset || key.second == old_pos || IsSentinelPos(key.second)) continue;
    if (count > new_count) {  // map order gives the least POS on ties
      new_count = count;
      new_pos = key.second;
    }
  }
  if (new_count == 0) return std::nullopt;

  SlotValue filled{new_pos, std::nullopt, {std::string(kNoneSc)}, MaskedField::kNone};
  size_t best_tuple = 0;
  for (const auto &[key, count] : table.slot_at_position) {
    if (key.offset != offset || key.pos != new_pos) continue;
    if (count > best_tuple) {
      best_tuple = count;
      filled.ms = key.ms;
      filled.sc = key.sc;
    }
  }
  if (pattern.profile == Profile::kTwoTuple) filled.ms.reset();

  Slots slots = pattern.slots;
  slots[SlotIndex(offset)] = std::move(filled);
  ReplacementResult result{
      MakePattern(std::move(slots), pattern.ne_type, pattern.profile,
                  Origin::kPosReplacement, iteration),
      offset, old_pos, new_pos, weakest->score, new_count};
  return result;
}

std::optional<ShiftResult> ShiftWindow(const Pattern &pattern,
                                       const FrequencyTable &table,
                                       const Corpus &corpus,
                                       std::span<const Extraction> matches,
                                       int iteration) {
  if (matches.empty()) return std::nullopt;
  const std::string &center_pos = pattern.center().pos;
  if (table.PosUnigram(center_pos) == 0) return std::nullopt;

  const double s_right =
      PairScore(table, {center_pos, pattern.at_offset(1).pos, PairDirection::kRightOfCenter});
  const double s_left =
      PairScore(table, {center_pos, pattern.at_offset(-1).pos, PairDirection::kLeftOfCenter});
  const ShiftDirection direction =
      s_right >= s_left ? ShiftDirection::kRight : ShiftDirection::kLeft;

  SlotTally tally(pattern.profile);
  size_t support = 0;
  for (const Extraction &match : matches) {
    if (match.sentence >= corpus.sentences.size()) {
      throw IntegrityError("extraction references unknown sentence '" + match.sentence_id + "'");
    }
    const Sentence &sentence = corpus.sentences[match.sentence];
    size_t center;
    if (direction == ShiftDirection::kRight) {
      if (match.span.last + 1 >= sentence.size()) continue;
      center = match.span.last + 1;
    } else {
      if (match.span.first == 0) continue;
      center = match.span.first - 1;
    }
    Window window = ContextWindow(sentence, center);
    for (int slot = 0; slot < kWindowSize; ++slot) tally.Add(slot, window[slot]);
    ++support;
  }
  if (support == 0) return std::nullopt;

  ShiftResult result{MakePattern(tally.Modes(), pattern.ne_type, pattern.profile,
                                 Origin::kWindowShift, iteration),
                     direction, s_right, s_left, support};
  return result;
}

void ValidateChunkThreshold(double threshold) {
  if (!std::isfinite(threshold) || threshold <= 0.0 || threshold > 1.0) {
    throw ConfigError("chunk threshold must be in (0, 1], got " + std::to_string(threshold));
  }
}

std::vector<ChunkDecision> ChunkCandidates(const Corpus &corpus,
                                           const FrequencyTable &table,
                                           std::span<const Extraction> extractions,
                                           double threshold, Profile profile) {
  ValidateChunkThreshold(threshold);
  std::vector<ChunkDecision> out;
  std::set<std::tuple<size_t, size_t, size_t>> seen;

  auto consider = [&](const Extraction &extraction, const Sentence &sentence,
                      size_t w, size_t x, PairDirection direction) {
    const Token &wt = sentence.tokens[w];
    const Token &xt = sentence.tokens[x];
    if (table.PosUnigram(wt.pos) == 0) return;
    const double score = PairScore(table, {wt.pos, xt.pos, direction});
    if (score < threshold || wt.sc != xt.sc) return;
    const size_t first = std::min(w, x);
    const size_t last = std::max(w, x);
    // A suffix on the left token marks a case boundary between the two.
    if (profile == Profile::kThreeTuple && sentence.tokens[first].ms) return;
    if (!seen.insert({extraction.sentence, first, last}).second) return;
    out.push_back({extraction.sentence_id, extraction.sentence, Span{first, last}, wt.sc,
                   score, extraction.ne_type, extraction.pattern_id, w, direction});
  };

  for (const Extraction &extraction : extractions) {
    if (extraction.sentence >= corpus.sentences.size()) {
      throw IntegrityError("extraction references unknown sentence '" +
                           extraction.sentence_id + "'");
    }
    const Sentence &sentence = corpus.sentences[extraction.sentence];
    if (extraction.span.last >= sentence.size()) {
      throw IntegrityError("extraction span outside sentence '" + extraction.sentence_id + "'");
    }
    if (extraction.span.last + 1 < sentence.size()) {
      consider(extraction, sentence, extraction.span.last, extraction.span.last + 1,
               PairDirection::kRightOfCenter);
    }
    if (extraction.span.first > 0) {
      consider(extraction, sentence, extraction.span.first, extraction.span.first - 1,
               PairDirection::kLeftOfCenter);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ChunkDecision &a, const ChunkDecision &b) {
    return std::tie(a.sentence, a.span) < std::tie(b.sentence, b.span);
  });
  return out;
}

std::optional<Pattern> BuildChunkPattern(std::span<const ChunkDecision> decisions,
                                         const Corpus &corpus,
                                         const ChunkLayout &layout, int iteration) {
  if (decisions.empty()) return std::nullopt;
  SlotTally tally(corpus.profile);
  for (const ChunkDecision &decision : decisions) {
    const Sentence &sentence = corpus.sentences.at(decision.sentence);
    Span unit = layout.UnitOf(decision.sentence, decision.center);
    Window window = SpanWindow(sentence, unit);
    for (int slot = 0; slot < kWindowSize; ++slot) {
      tally.Add(slot, slot == kCenterSlot ? sentence.tokens[decision.center] : window[slot]);
    }
  }
  return MakePattern(tally.Modes(), decisions.front().ne_type, corpus.profile,
                     Origin::kChunk, iteration);
}

std::vector<Pattern> DedupAndAdmit(const PatternPool &pool,
                                   std::vector<Pattern> candidates, int iteration) {
  std::vector<Pattern> admitted;
  std::set<std::string> seen;
  for (Pattern &candidate : candidates) {
    if (pool.Contains(candidate.id) || !seen.insert(candidate.id).second) continue;
    candidate.iteration_born = iteration;
    admitted.push_back(std::move(candidate));
  }
  return admitted;
}

}  // namespace nerboot
