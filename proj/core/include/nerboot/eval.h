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

// Precision, recall and F-measure per entity type, and report writers.

#ifndef NERBOOT_EVAL_H_
#define NERBOOT_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nerboot/bootstrap.h"
#include "nerboot/corpus.h"
#include "nerboot/types.h"

namespace nerboot {

enum class MatchMode { kExactSpan, kCenterToken };

std::string_view MatchModeName(MatchMode mode);
std::optional<MatchMode> ParseMatchModeName(std::string_view name);

// Internal values are in [0, 1].
struct TypeMetrics {
  NEType type = NEType::kPerson;
  size_t correct = 0;
  size_t predicted = 0;
  size_t gold_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

// 2pr / (p + r), 0 when p + r == 0. Works on any scale as long as p and r
// share it.
double FMeasure(double p, double r);

struct TypedSpan {
  size_t sentence = 0;
  Span span;
  NEType type = NEType::kPerson;

  auto operator<=>(const TypedSpan &) const = default;
};

// One row per entity type, in type order. Under kCenterToken a prediction is
// correct when its first token lies inside an unmatched gold entity of the
// same type. Throws EvaluationError if `gold` carries no labels.
std::vector<TypeMetrics> ScorePredictions(const std::vector<TypedSpan> &predicted,
                                          const Corpus &gold, MatchMode mode);
std::vector<TypeMetrics> ScorePredictions(const LabelStore &predicted, const Corpus &gold,
                                          MatchMode mode);
// Predictions read from the gold column of `predicted`, which must have the
// same sentences and token counts as `gold`.
std::vector<TypeMetrics> ScoreCorpora(const Corpus &predicted, const Corpus &gold,
                                      MatchMode mode);

// Averages over types with gold or predicted entities.
struct MacroAverages {
  size_t types = 0;
  double precision = 0.0;    // mean precision
  double recall = 0.0;       // mean recall
  double mean_f = 0.0;       // mean of per-type F
  double f_of_means = 0.0;   // F of mean precision and mean recall
};

MacroAverages Macro(const std::vector<TypeMetrics> &metrics);

// New-pattern counts per type for the replacement and window-shift methods.
struct PatternCountTable {
  std::map<NEType, size_t> replacement;
  std::map<NEType, size_t> shift;
};

PatternCountTable CountNewPatterns(const std::vector<IterationTrace> &trace);

// Percentages on a 0-100 scale with two decimals.
void WriteMetricsTsv(const std::vector<TypeMetrics> &metrics, std::ostream &out);
void WriteMetricsJson(const std::vector<TypeMetrics> &metrics, std::ostream &out);
void WritePatternCountsTsv(const PatternCountTable &table, std::ostream &out);
void WritePatternCountsJson(const PatternCountTable &table, std::ostream &out);

// Writes <prefix>.metrics.tsv, <prefix>.metrics.json, <prefix>.patterns.tsv
// and <prefix>.patterns.json. Throws IoError on failure.
void EmitReports(const std::vector<TypeMetrics> &metrics,
                 const std::vector<IterationTrace> &trace, const std::string &prefix);

}  // namespace nerboot

#endif  // NERBOOT_EVAL_H_
