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

// The bootstrapping loop: match, resolve, count, score, induce, chunk, admit.

#ifndef NERBOOT_BOOTSTRAP_H_
#define NERBOOT_BOOTSTRAP_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nerboot/corpus.h"
#include "nerboot/induction.h"
#include "nerboot/pattern.h"
#include "nerboot/scoring.h"

namespace nerboot {

struct MethodSet {
  bool pos_replacement = true;
  bool window_shift = true;
  bool chunking = true;

  bool operator==(const MethodSet &) const = default;
};

// Comma-separated subset of {pos-replacement, window-shift, chunking}, or
// "all" / "none". Throws ConfigError on an unknown name.
MethodSet ParseMethodSet(std::string_view text);
std::string MethodSetName(const MethodSet &methods);

struct Label {
  std::string sentence_id;
  NEType type = NEType::kPerson;
  std::string pattern_id;
  int iteration = 0;
  double ps = 0.0;

  bool operator==(const Label &) const = default;
};

// Labelled spans keyed by (sentence index, span). Spans never overlap.
class LabelStore {
 public:
  using Key = std::pair<size_t, Span>;

  const Label *Find(size_t sentence, const Span &span) const;
  // The label whose span contains `span`, if any.
  const Label *Covering(size_t sentence, const Span &span) const;
  std::vector<Key> Overlapping(size_t sentence, const Span &span) const;

  void Insert(size_t sentence, const Span &span, Label label);
  void Erase(size_t sentence, const Span &span);

  size_t size() const { return labels_.size(); }
  size_t LabelledTokenCount() const { return labelled_tokens_; }
  const std::map<Key, Label> &labels() const { return labels_; }

  std::vector<SpanLabel> ToSpanLabels() const;

  bool operator==(const LabelStore &) const = default;

 private:
  std::map<Key, Label> labels_;
  size_t labelled_tokens_ = 0;
};

struct LabelCandidate {
  Extraction extraction;
  double ps = 0.0;
};

struct ResolveStats {
  size_t inserted = 0;  // new or replacing labels
  size_t rejected = 0;
};

// Applies candidates in order of descending ps, then pattern id, then corpus
// position. A candidate on a free span is admitted. Against incumbents it
// wins only with a strictly higher ps than every overlapped incumbent, and
// for a partial overlap only if its span also covers all of them.
ResolveStats ResolveConflicts(std::vector<LabelCandidate> candidates, LabelStore &store,
                              int iteration);

struct BootstrapConfig {
  size_t seeds_per_class = 2;
  int max_iterations = 50;
  double chunk_threshold = 0.6;
  double log_base = 2.0;
  MatchScope scope = MatchScope::kCenter;
  MethodSet methods;
  NjSemantics nj = NjSemantics::kBasilisk;
  int threads = 1;

  // Throws ConfigError on an out-of-range field.
  void Validate() const;
};

enum class TerminationReason { kFixpoint, kFullyLabelled, kMaxIterations };

std::string_view TerminationReasonName(TerminationReason reason);
std::optional<TerminationReason> ParseTerminationReasonName(std::string_view name);

struct NewPattern {
  Origin method = Origin::kPosReplacement;
  std::string pattern_id;
  NEType ne_type = NEType::kPerson;

  bool operator==(const NewPattern &) const = default;
};

struct IterationTrace {
  int iteration = 0;
  std::map<NEType, size_t> patterns_active;  // at the start of the iteration
  std::vector<NewPattern> new_patterns;
  size_t new_labels = 0;
  size_t labelled_tokens = 0;  // after the iteration
  std::optional<TerminationReason> terminated_reason;

  bool operator==(const IterationTrace &) const = default;
};

// One induction attempt for one entity type.
struct InductionRecord {
  int iteration = 0;
  NEType ne_type = NEType::kPerson;
  Origin method = Origin::kPosReplacement;
  std::string input_pattern_id;
  std::optional<std::string> output_pattern_id;  // empty for a no-op
  bool admitted = false;
  std::map<std::string, double> scores;
};

struct ScoreRecord {
  int iteration = 0;
  std::string pattern_id;
  NEType ne_type = NEType::kPerson;
  size_t F = 0;
  size_t n = 0;
  std::optional<double> ps;  // empty when dropped (F == 0)
};

struct BootstrapResult {
  LabelStore labels;
  std::vector<IterationTrace> trace;
  PatternPool pool;
  size_t seed_count = 0;
  ChunkLayout chunks;
  std::vector<InductionRecord> induction;
  std::vector<ScoreRecord> scores;
};

// Collects seed patterns into a pool, `per_class` at most per type.
PatternPool SeedPool(const std::map<NEType, std::vector<SeedPattern>> &seeds,
                     Profile profile, size_t per_class);

// Throws ConfigError for an empty seed pool or bad config, ProfileError when
// the seed and corpus profiles differ.
BootstrapResult RunBootstrap(const PatternPool &seeds, const Corpus &test,
                             const BootstrapConfig &config);

// `test` with its gold column replaced by the predicted labels.
Corpus LabelledCorpus(const Corpus &test, const LabelStore &labels);

// Line-delimited JSON, one object per record.
void WriteTrace(const std::vector<IterationTrace> &trace, std::ostream &out);
std::vector<IterationTrace> ReadTrace(std::istream &in);
void WriteInductionLog(const std::vector<InductionRecord> &records, std::ostream &out);
void WriteScoreLog(const std::vector<ScoreRecord> &records, std::ostream &out);

}  // namespace nerboot

#endif  // NERBOOT_BOOTSTRAP_H_
