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

#include "nerboot/bootstrap.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <istream>
#include <ostream>
#include <set>
#include <thread>

#include "json.hpp"

#include "nerboot/errors.h"

namespace nerboot {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kPosReplacementName = "pos-replacement";
constexpr std::string_view kWindowShiftName = "window-shift";
constexpr std::string_view kChunkingName = "chunking";

std::string_view Trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

// Matches every pattern, spreading patterns over up to `threads` workers.
// Results are indexed by pattern, so the output does not depend on timing.
std::vector<std::vector<Extraction>> MatchAll(const std::vector<const Pattern *> &patterns,
                                              const Corpus &corpus, MatchScope scope,
                                              const ChunkLayout &layout, int iteration,
                                              int threads) {
  std::vector<std::vector<Extraction>> out(patterns.size());
  const size_t workers =
      std::min(static_cast<size_t>(std::max(threads, 1)), patterns.size());
  if (workers <= 1) {
    for (size_t i = 0; i < patterns.size(); ++i) {
      out[i] = MatchExact(*patterns[i], corpus, scope, &layout, iteration);
    }
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = next++; i < patterns.size(); i = next++) {
          out[i] = MatchExact(*patterns[i], corpus, scope, &layout, iteration);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread &t : pool) t.join();
  for (const std::exception_ptr &error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return out;
}

// Ps used for conflict resolution before F is known: every extraction of the
// pattern is taken as confirmed.
double ProvisionalPs(size_t extractions, size_t active, NjSemantics nj, double base) {
  const size_t n = nj == NjSemantics::kLiteral ? active : extractions;
  return ScorePattern(extractions, n, base);
}

bool Confirmed(const LabelStore &store, const Extraction &extraction) {
  const Label *label = store.Covering(extraction.sentence, extraction.span);
  return label != nullptr && label->type == extraction.ne_type;
}

// Extends W's label over the chunked pair. Returns false when the decision is
// skipped: W is unlabelled, already joined with X, or a different-type label
// on X is at least as strong.
bool ApplyChunk(const ChunkDecision &decision, const Corpus &corpus, LabelStore &store,
                ChunkLayout &layout, int iteration) {
  const size_t x = decision.span.first == decision.center ? decision.span.last
                                                          : decision.span.first;
  const Span w_unit = layout.UnitOf(decision.sentence, decision.center);
  const Span x_unit = layout.UnitOf(decision.sentence, x);
  if (w_unit == x_unit) return false;
  const Label *w_label = store.Find(decision.sentence, w_unit);
  if (w_label == nullptr || w_label->type != decision.ne_type) return false;
  const Label extended = *w_label;

  const Span merged{std::min(w_unit.first, x_unit.first), std::max(w_unit.last, x_unit.last)};
  std::vector<LabelStore::Key> absorbed;
  for (const LabelStore::Key &key : store.Overlapping(decision.sentence, merged)) {
    if (key.second == w_unit) continue;
    const Label &other = store.labels().at(key);
    if (other.type != extended.type && other.ps >= extended.ps) return false;
    absorbed.push_back(key);
  }
  for (const LabelStore::Key &key : absorbed) store.Erase(key.first, key.second);
  store.Erase(decision.sentence, w_unit);
  const Span unit = layout.Merge(decision.sentence, merged);
  Label label = extended;
  label.sentence_id = corpus.sentences[decision.sentence].id;
  label.iteration = iteration;
  store.Insert(decision.sentence, unit, std::move(label));
  return true;
}

Json TraceToJson(const IterationTrace &record) {
  Json active = Json::object();
  for (NEType type : kAllNETypes) {
    auto it = record.patterns_active.find(type);
    active[std::string(NETypeName(type))] = it == record.patterns_active.end() ? 0 : it->second;
  }
  Json fresh = Json::array();
  for (const NewPattern &entry : record.new_patterns) {
    fresh.push_back({{"method", std::string(OriginName(entry.method))},
                     {"pattern_id", entry.pattern_id},
                     {"ne_type", std::string(NETypeName(entry.ne_type))}});
  }
  Json out = {{"iteration", record.iteration},
              {"patterns_active", std::move(active)},
              {"new_patterns", std::move(fresh)},
              {"new_labels", record.new_labels},
              {"labelled_tokens", record.labelled_tokens}};
  out["terminated_reason"] = record.terminated_reason
                                 ? Json(std::string(TerminationReasonName(*record.terminated_reason)))
                                 : Json(nullptr);
  return out;
}

template <typename T, typename Parse>
T ParseNamed(const Json &value, Parse parse, const char *what, size_t line) {
  auto parsed = parse(value.get<std::string>());
  if (!parsed) {
    throw ParseError("trace line " + std::to_string(line) + ": unknown " + what + " '" +
                         value.get<std::string>() + "'",
                     line);
  }
  return *parsed;
}

}  // namespace

MethodSet ParseMethodSet(std::string_view text) {
  text = Trim(text);
  if (text == "all") return MethodSet{};
  MethodSet methods{false, false, false};
  if (text == "none" || text.empty()) return methods;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view name = Trim(text.substr(start, comma - start));
    if (name == kPosReplacementName) {
      methods.pos_replacement = true;
    } else if (name == kWindowShiftName) {
      methods.window_shift = true;
    } else if (name == kChunkingName) {
      methods.chunking = true;
    } else {
      throw ConfigError("unknown induction method '" + std::string(name) +
                        "' (expected pos-replacement, window-shift, chunking, all or none)");
    }
    start = comma + 1;
  }
  return methods;
}

std::string MethodSetName(const MethodSet &methods) {
  std::vector<std::string_view> names;
  if (methods.pos_replacement) names.push_back(kPosReplacementName);
  if (methods.window_shift) names.push_back(kWindowShiftName);
  if (methods.chunking) names.push_back(kChunkingName);
  if (names.empty()) return "none";
  std::string out;
  for (std::string_view name : names) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

const Label *LabelStore::Find(size_t sentence, const Span &span) const {
  auto it = labels_.find({sentence, span});
  return it == labels_.end() ? nullptr : &it->second;
}

const Label *LabelStore::Covering(size_t sentence, const Span &span) const {
  for (const Key &key : Overlapping(sentence, span)) {
    if (key.second.Contains(span)) return &labels_.at(key);
  }
  return nullptr;
}

std::vector<LabelStore::Key> LabelStore::Overlapping(size_t sentence, const Span &span) const {
  std::vector<Key> out;
  for (auto it = labels_.lower_bound({sentence, Span{0, 0}});
       it != labels_.end() && it->first.first == sentence; ++it) {
    if (it->first.second.first > span.last) break;
    if (it->first.second.Overlaps(span)) out.push_back(it->first);
  }
  return out;
}

void LabelStore::Insert(size_t sentence, const Span &span, Label label) {
  if (!Overlapping(sentence, span).empty()) {
    throw IntegrityError("label overlaps an existing label in sentence '" +
                         label.sentence_id + "'");
  }
  labels_.emplace(Key{sentence, span}, std::move(label));
  labelled_tokens_ += span.size();
}

void LabelStore::Erase(size_t sentence, const Span &span) {
  if (labels_.erase({sentence, span}) > 0) labelled_tokens_ -= span.size();
}

std::vector<SpanLabel> LabelStore::ToSpanLabels() const {
  std::vector<SpanLabel> out;
  out.reserve(labels_.size());
  for (const auto &[key, label] : labels_) out.push_back({key.first, key.second, label.type});
  return out;
}

ResolveStats ResolveConflicts(std::vector<LabelCandidate> candidates, LabelStore &store,
                              int iteration) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const LabelCandidate &a, const LabelCandidate &b) {
                     if (a.ps != b.ps) return a.ps > b.ps;
                     return std::tie(a.extraction.pattern_id, a.extraction.sentence,
                                     a.extraction.span) <
                            std::tie(b.extraction.pattern_id, b.extraction.sentence,
                                     b.extraction.span);
                   });
  ResolveStats stats;
  for (const LabelCandidate &candidate : candidates) {
    const Extraction &e = candidate.extraction;
    Label label{e.sentence_id, e.ne_type, e.pattern_id, iteration, candidate.ps};
    std::vector<LabelStore::Key> overlapped = store.Overlapping(e.sentence, e.span);
    if (overlapped.empty()) {
      store.Insert(e.sentence, e.span, std::move(label));
      ++stats.inserted;
      continue;
    }
    double strongest = 0.0;
    bool covers = true;
    for (const LabelStore::Key &key : overlapped) {
      strongest = std::max(strongest, store.labels().at(key).ps);
      covers = covers && e.span.Contains(key.second);
    }
    if (candidate.ps > strongest && covers) {
      for (const LabelStore::Key &key : overlapped) store.Erase(key.first, key.second);
      store.Insert(e.sentence, e.span, std::move(label));
      ++stats.inserted;
    } else {
      ++stats.rejected;
    }
  }
  return stats;
}

void BootstrapConfig::Validate() const {
  if (seeds_per_class < 1) throw ConfigError("seeds-per-class must be at least 1");
  if (max_iterations < 1) throw ConfigError("max-iterations must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  ValidateChunkThreshold(chunk_threshold);
  ValidateLogBase(log_base);
}

std::string_view TerminationReasonName(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kFixpoint: return "fixpoint";
    case TerminationReason::kFullyLabelled: return "fully-labelled";
    case TerminationReason::kMaxIterations: return "max-iterations";
  }
  return "fixpoint";
}

std::optional<TerminationReason> ParseTerminationReasonName(std::string_view name) {
  if (name == "fixpoint") return TerminationReason::kFixpoint;
  if (name == "fully-labelled") return TerminationReason::kFullyLabelled;
  if (name == "max-iterations") return TerminationReason::kMaxIterations;
  return std::nullopt;
}

PatternPool SeedPool(const std::map<NEType, std::vector<SeedPattern>> &seeds,
                     Profile profile, size_t per_class) {
  PatternPool pool(profile);
  for (const auto &[type, list] : seeds) {
    for (size_t i = 0; i < list.size() && i < per_class; ++i) pool.Add(list[i].pattern);
  }
  return pool;
}

BootstrapResult RunBootstrap(const PatternPool &seeds, const Corpus &test,
                             const BootstrapConfig &config) {
  config.Validate();
  if (seeds.size() == 0) throw ConfigError("seed pattern set is empty");
  if (seeds.profile() != test.profile) {
    throw ProfileError("seed patterns are " + std::string(ProfileName(seeds.profile())) +
                       " but the corpus is " + std::string(ProfileName(test.profile)));
  }

  BootstrapResult result;
  result.pool = seeds;
  result.seed_count = seeds.size();
  const size_t total_tokens = test.TokenCount();

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    IterationTrace record;
    record.iteration = iteration;
    const std::vector<const Pattern *> active = result.pool.Active();
    for (NEType type : kAllNETypes) record.patterns_active[type] = 0;
    for (const Pattern *pattern : active) ++record.patterns_active[pattern->ne_type];

    // (1) match
    std::vector<std::vector<Extraction>> matches =
        MatchAll(active, test, config.scope, result.chunks, iteration, config.threads);

    // (2) resolve
    std::vector<LabelCandidate> candidates;
    for (size_t i = 0; i < active.size(); ++i) {
      if (matches[i].empty()) continue;
      const double ps =
          ProvisionalPs(matches[i].size(), active.size(), config.nj, config.log_base);
      for (const Extraction &e : matches[i]) candidates.push_back({e, ps});
    }
    ResolveStats resolved = ResolveConflicts(std::move(candidates), result.labels, iteration);
    record.new_labels = resolved.inserted;

    // (3) count
    std::vector<Extraction> all;
    for (const auto &list : matches) all.insert(all.end(), list.begin(), list.end());
    const LabelStore &store = result.labels;
    FrequencyTable table = BuildFrequencyTable(
        test, all, [&store](const Extraction &e) { return Confirmed(store, e); });

    // (4) score
    PatternScoring scoring = ScorePatterns(table, active, config.nj, config.log_base);
    for (const std::string &id : scoring.dropped) result.pool.Deactivate(id);
    std::map<std::string, const Pattern *> by_id;
    std::map<std::string, size_t> index_of;
    for (size_t i = 0; i < active.size(); ++i) {
      by_id[active[i]->id] = active[i];
      index_of[active[i]->id] = i;
    }
    std::vector<ScoredPattern> scored;
    {
      size_t next = 0;
      for (const Pattern *pattern : active) {
        ScoreRecord score{iteration, pattern->id, pattern->ne_type, 0, 0, std::nullopt};
        PatternCounts counts = table.Counts(pattern->id);
        score.F = counts.F;
        score.n = counts.n;
        if (next < scoring.scores.size() && scoring.scores[next].pattern_id == pattern->id) {
          score.ps = scoring.scores[next].ps;
          score.n = scoring.scores[next].n;
          scored.push_back({pattern, scoring.scores[next].ps, scoring.scores[next].F,
                            scoring.scores[next].n});
          ++next;
        }
        result.scores.push_back(std::move(score));
      }
    }

    // (5) induce
    std::vector<Pattern> replacements;
    std::vector<Pattern> shifts;
    std::vector<InductionRecord> attempts;
    for (NEType type : kAllNETypes) {
      const Pattern *top = SelectPatternForModification(scored, type);
      if (top == nullptr) continue;
      if (config.methods.pos_replacement) {
        InductionRecord attempt{iteration, type, Origin::kPosReplacement, top->id, {}, false, {}};
        if (auto replaced = ReplacePos(*top, table, config.log_base, iteration)) {
          attempt.output_pattern_id = replaced->pattern.id;
          attempt.scores["position"] = replaced->position;
          if (replaced->masked_score) attempt.scores["masked_score"] = *replaced->masked_score;
          attempt.scores["new_pos_count"] = static_cast<double>(replaced->new_pos_count);
          replacements.push_back(std::move(replaced->pattern));
        }
        attempts.push_back(std::move(attempt));
      }
      if (config.methods.window_shift) {
        InductionRecord attempt{iteration, type, Origin::kWindowShift, top->id, {}, false, {}};
        const auto &own = matches[index_of.at(top->id)];
        if (auto shifted = ShiftWindow(*top, table, test, own, iteration)) {
          attempt.output_pattern_id = shifted->pattern.id;
          attempt.scores["s_right"] = shifted->s_right;
          attempt.scores["s_left"] = shifted->s_left;
          attempt.scores["support"] = static_cast<double>(shifted->support);
          shifts.push_back(std::move(shifted->pattern));
        }
        attempts.push_back(std::move(attempt));
      }
    }

    // (6) chunk
    std::vector<Pattern> chunk_patterns;
    if (config.methods.chunking) {
      std::vector<Extraction> confirmed;
      for (const Extraction &e : all) {
        if (Confirmed(result.labels, e)) confirmed.push_back(e);
      }
      std::vector<ChunkDecision> decisions = ChunkCandidates(
          test, table, confirmed, config.chunk_threshold, test.profile);
      std::map<NEType, std::vector<ChunkDecision>> applied;
      for (const ChunkDecision &decision : decisions) {
        if (ApplyChunk(decision, test, result.labels, result.chunks, iteration)) {
          applied[decision.ne_type].push_back(decision);
          ++record.new_labels;
        }
      }
      for (const auto &[type, list] : applied) {
        InductionRecord attempt{iteration, type, Origin::kChunk, list.front().pattern_id,
                                {}, false, {}};
        attempt.scores["decisions"] = static_cast<double>(list.size());
        attempt.scores["pair_score"] = list.front().pair_score;
        if (auto pattern = BuildChunkPattern(list, test, result.chunks, iteration)) {
          attempt.output_pattern_id = pattern->id;
          chunk_patterns.push_back(std::move(*pattern));
        }
        attempts.push_back(std::move(attempt));
      }
    }

    // (7) admit
    std::vector<Pattern> batch;
    for (auto *group : {&replacements, &shifts, &chunk_patterns}) {
      for (Pattern &p : *group) batch.push_back(std::move(p));
    }
    std::vector<Pattern> admitted = DedupAndAdmit(result.pool, std::move(batch), iteration);
    std::set<std::string> admitted_ids;
    for (Pattern &pattern : admitted) {
      admitted_ids.insert(pattern.id);
      record.new_patterns.push_back({pattern.origin, pattern.id, pattern.ne_type});
      result.pool.Add(std::move(pattern));
    }
    for (InductionRecord &attempt : attempts) {
      if (attempt.output_pattern_id && admitted_ids.count(*attempt.output_pattern_id)) {
        attempt.admitted = true;
        admitted_ids.erase(*attempt.output_pattern_id);
      }
      result.induction.push_back(std::move(attempt));
    }

    record.labelled_tokens = result.labels.LabelledTokenCount();
    if (record.labelled_tokens == total_tokens) {
      record.terminated_reason = TerminationReason::kFullyLabelled;
    } else if (record.new_patterns.empty()) {
      record.terminated_reason = TerminationReason::kFixpoint;
    } else if (iteration == config.max_iterations) {
      record.terminated_reason = TerminationReason::kMaxIterations;
    }
    const bool done = record.terminated_reason.has_value();
    result.trace.push_back(std::move(record));
    if (done) break;
  }
  return result;
}

Corpus LabelledCorpus(const Corpus &test, const LabelStore &labels) {
  return WithLabels(test, labels.ToSpanLabels());
}

void WriteTrace(const std::vector<IterationTrace> &trace, std::ostream &out) {
  for (const IterationTrace &record : trace) out << TraceToJson(record).dump() << '\n';
  if (!out) throw IoError("failed to write iteration trace");
}

std::vector<IterationTrace> ReadTrace(std::istream &in) {
  std::vector<IterationTrace> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      Json json = Json::parse(line);
      IterationTrace record;
      record.iteration = json.at("iteration").get<int>();
      for (const auto &[name, count] : json.at("patterns_active").items()) {
        NEType type = ParseNamed<NEType>(Json(name), ParseNETypeName, "entity type", line_no);
        record.patterns_active[type] = count.get<size_t>();
      }
      for (const Json &entry : json.at("new_patterns")) {
        record.new_patterns.push_back(
            {ParseNamed<Origin>(entry.at("method"), ParseOriginName, "method", line_no),
             entry.at("pattern_id").get<std::string>(),
             ParseNamed<NEType>(entry.at("ne_type"), ParseNETypeName, "entity type", line_no)});
      }
      record.new_labels = json.at("new_labels").get<size_t>();
      record.labelled_tokens = json.value("labelled_tokens", size_t{0});
      if (json.contains("terminated_reason") && !json["terminated_reason"].is_null()) {
        record.terminated_reason = ParseNamed<TerminationReason>(
            json["terminated_reason"], ParseTerminationReasonName, "termination reason",
            line_no);
      }
      out.push_back(std::move(record));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return out;
}

void WriteInductionLog(const std::vector<InductionRecord> &records, std::ostream &out) {
  for (const InductionRecord &record : records) {
    Json scores = Json::object();
    for (const auto &[name, value] : record.scores) scores[name] = value;
    Json json = {{"iteration", record.iteration},
                 {"ne_type", std::string(NETypeName(record.ne_type))},
                 {"method", std::string(OriginName(record.method))},
                 {"input_pattern_id", record.input_pattern_id},
                 {"output_pattern_id", record.output_pattern_id
                                           ? Json(*record.output_pattern_id)
                                           : Json("no-op")},
                 {"admitted", record.admitted},
                 {"scores", std::move(scores)}};
    out << json.dump() << '\n';
  }
  if (!out) throw IoError("failed to write induction log");
}

void WriteScoreLog(const std::vector<ScoreRecord> &records, std::ostream &out) {
  for (const ScoreRecord &record : records) {
    Json json = {{"iteration", record.iteration},
                 {"pattern_id", record.pattern_id},
                 {"ne_type", std::string(NETypeName(record.ne_type))},
                 {"F", record.F},
                 {"n", record.n}};
    json["ps"] = record.ps ? Json(*record.ps) : Json(nullptr);
    out << json.dump() << '\n';
  }
  if (!out) throw IoError("failed to write score log");
}

}  // namespace nerboot
