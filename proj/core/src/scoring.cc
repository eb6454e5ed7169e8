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

#include "nerboot/scoring.h"

#include <cmath>
#include <numbers>

#include "nerboot/errors.h"

namespace nerboot {
namespace {

template <typename Map, typename Key>
size_t Lookup(const Map &map, const Key &key) {
  auto it = map.find(key);
  return it == map.end() ? 0 : it->second;
}

template <typename Map>
void AddAll(Map &into, const Map &from) {
  for (const auto &[key, count] : from) into[key] += count;
}

}  // namespace

std::string_view NjSemanticsName(NjSemantics nj) {
  return nj == NjSemantics::kBasilisk ? "basilisk" : "literal";
}

std::optional<NjSemantics> ParseNjSemanticsName(std::string_view name) {
  if (name == "basilisk") return NjSemantics::kBasilisk;
  if (name == "literal") return NjSemantics::kLiteral;
  return std::nullopt;
}

PatternCounts FrequencyTable::Counts(const std::string &pattern_id) const {
  auto it = per_pattern_extractions.find(pattern_id);
  return it == per_pattern_extractions.end() ? PatternCounts{} : it->second;
}

size_t FrequencyTable::TupleAt(int offset, const std::string &pos) const {
  return Lookup(tuple_value_at_position, std::make_pair(offset, pos));
}

size_t FrequencyTable::TupleWithPattern(const std::string &pattern_id, int offset,
                                        const std::string &pos) const {
  return Lookup(tuple_value_with_pattern, std::make_tuple(pattern_id, offset, pos));
}

size_t FrequencyTable::PosPair(const std::string &left, const std::string &right) const {
  return Lookup(pos_pair, std::make_pair(left, right));
}

size_t FrequencyTable::PosUnigram(const std::string &pos) const {
  return Lookup(pos_unigram, pos);
}

void FrequencyTable::Merge(const FrequencyTable &other) {
  for (const auto &[id, counts] : other.per_pattern_extractions) {
    auto &mine = per_pattern_extractions[id];
    mine.F += counts.F;
    mine.n += counts.n;
  }
  AddAll(tuple_value_at_position, other.tuple_value_at_position);
  AddAll(tuple_value_with_pattern, other.tuple_value_with_pattern);
  AddAll(pos_pair, other.pos_pair);
  AddAll(pos_unigram, other.pos_unigram);
  AddAll(slot_at_position, other.slot_at_position);
}

FrequencyTable BuildFrequencyTable(const Corpus &corpus,
                                   std::span<const Extraction> extractions,
                                   const ConfirmFn &confirmed) {
  FrequencyTable table;
  for (const Sentence &sentence : corpus.sentences) {
    for (size_t i = 0; i < sentence.size(); ++i) {
      const Token &token = sentence.tokens[i];
      ++table.pos_unigram[token.pos];
      if (i + 1 < sentence.size()) {
        ++table.pos_pair[{token.pos, sentence.tokens[i + 1].pos}];
      }
      Window window = ContextWindow(sentence, i);
      for (int offset : kContextOffsets) {
        const Token &slot = window.at_offset(offset);
        ++table.tuple_value_at_position[{offset, slot.pos}];
        SlotTupleKey key{offset, slot.pos, std::nullopt, slot.sc};
        if (corpus.profile == Profile::kThreeTuple) key.ms = slot.ms;
        ++table.slot_at_position[std::move(key)];
      }
    }
  }

  for (const Extraction &extraction : extractions) {
    if (extraction.sentence >= corpus.sentences.size() ||
        corpus.sentences[extraction.sentence].id != extraction.sentence_id) {
      throw IntegrityError("extraction references unknown sentence '" +
                           extraction.sentence_id + "'");
    }
    const Sentence &sentence = corpus.sentences[extraction.sentence];
    if (extraction.span.first > extraction.span.last ||
        extraction.span.last >= sentence.size()) {
      throw IntegrityError("extraction span outside sentence '" +
                           extraction.sentence_id + "'");
    }
    auto &counts = table.per_pattern_extractions[extraction.pattern_id];
    ++counts.n;
    if (!confirmed || confirmed(extraction)) ++counts.F;
    Window window = SpanWindow(sentence, extraction.span);
    for (int offset : kContextOffsets) {
      ++table.tuple_value_with_pattern[{extraction.pattern_id, offset,
                                        window.at_offset(offset).pos}];
    }
  }
  return table;
}

void ValidateLogBase(double base) {
  if (!std::isfinite(base) || base <= 1.0) {
    throw ConfigError("log base must be greater than 1, got " + std::to_string(base));
  }
}

double LogBase(double x, double base) {
  ValidateLogBase(base);
  if (base == 2.0) return std::log2(x);
  if (base == 10.0) return std::log10(x);
  if (base == std::numbers::e) return std::log(x);
  return std::log(x) / std::log(base);
}

double ScorePattern(size_t F, size_t n, double log_base) {
  if (F == 0) throw ScoreUndefinedError("pattern score undefined for F = 0");
  if (n == 0) throw IntegrityError("pattern score with n = 0");
  return static_cast<double>(F) / static_cast<double>(n) *
         LogBase(static_cast<double>(F), log_base);
}

double ScoreTupleValue(size_t f_tv_p, size_t f_p, size_t f_tv, double log_base) {
  if (f_tv_p == 0) throw ScoreUndefinedError("tuple-value score undefined for f(v, P) = 0");
  if (f_p == 0 || f_tv == 0) throw IntegrityError("tuple-value score with zero denominator");
  if (f_tv < f_tv_p) throw IntegrityError("tuple-value count exceeds its corpus count");
  return LogBase(static_cast<double>(f_tv_p), log_base) /
         (static_cast<double>(f_p) * static_cast<double>(f_tv));
}

double PatternRankKey(size_t F, size_t n) {
  return ScorePattern(F, n, std::numbers::e);
}

double TupleRankKey(size_t f_tv_p, size_t f_p, size_t f_tv) {
  return ScoreTupleValue(f_tv_p, f_p, f_tv, std::numbers::e);
}

double PosPairFrequencyScore(size_t f_pair, size_t f_left_pos) {
  if (f_left_pos == 0) throw IntegrityError("POS-pair score with zero unigram count");
  if (f_pair > f_left_pos) throw IntegrityError("POS-pair count exceeds unigram count");
  return static_cast<double>(f_pair) / static_cast<double>(f_left_pos);
}

PatternScoring ScorePatterns(const FrequencyTable &table,
                             std::span<const Pattern *const> patterns,
                             NjSemantics nj, double log_base) {
  PatternScoring out;
  for (const Pattern *pattern : patterns) {
    PatternCounts counts = table.Counts(pattern->id);
    if (counts.F == 0) {
      out.dropped.push_back(pattern->id);
      continue;
    }
    size_t n = counts.n;
    if (nj == NjSemantics::kLiteral) {
      n = patterns.size();
    } else if (counts.n < counts.F) {
      throw IntegrityError("pattern " + pattern->id + " has F > n");
    }
    out.scores.push_back(
        {pattern->id, ScorePattern(counts.F, n, log_base), counts.F, n});
  }
  return out;
}

std::vector<TupleValueScore> ScoreTupleValues(const Pattern &pattern,
                                              const FrequencyTable &table,
                                              double log_base) {
  std::vector<TupleValueScore> out;
  const size_t f_p = table.Counts(pattern.id).n;
  for (int offset : kContextOffsets) {
    const SlotValue &slot = pattern.at_offset(offset);
    TupleValueScore entry{pattern.id, offset, slot.pos, std::nullopt};
    if (slot.mask != MaskedField::kPos) {
      const size_t f_tv_p = table.TupleWithPattern(pattern.id, offset, slot.pos);
      if (f_tv_p > 0) {
        entry.score = ScoreTupleValue(f_tv_p, f_p, table.TupleAt(offset, slot.pos),
                                      log_base);
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace nerboot
