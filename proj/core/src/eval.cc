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

#include "nerboot/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "json.hpp"

#include "nerboot/errors.h"

namespace nerboot {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kReplacementRow = "Replacement of POS";
constexpr std::string_view kShiftRow = "Shifting the window";

std::string Percent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value * 100.0);
  return buffer;
}

// Rounded percentage for the JSON mirror.
double PercentValue(double value) { return std::round(value * 10000.0) / 100.0; }

std::vector<TypedSpan> CorpusSpans(const Corpus &corpus) {
  std::vector<TypedSpan> out;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    for (const auto &[span, type] : GoldSpans(corpus.sentences[s])) out.push_back({s, span, type});
  }
  return out;
}

TypeMetrics Finish(TypeMetrics m) {
  m.precision = m.predicted == 0 ? 0.0 : static_cast<double>(m.correct) / m.predicted;
  m.recall = m.gold_total == 0 ? 0.0 : static_cast<double>(m.correct) / m.gold_total;
  m.f_measure = FMeasure(m.precision, m.recall);
  return m;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string_view MatchModeName(MatchMode mode) {
  return mode == MatchMode::kExactSpan ? "exact-span" : "center-token";
}

std::optional<MatchMode> ParseMatchModeName(std::string_view name) {
  if (name == "exact-span") return MatchMode::kExactSpan;
  if (name == "center-token") return MatchMode::kCenterToken;
  return std::nullopt;
}

double FMeasure(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

std::vector<TypeMetrics> ScorePredictions(const std::vector<TypedSpan> &predicted,
                                          const Corpus &gold, MatchMode mode) {
  if (!gold.HasGold()) throw EvaluationError("gold corpus has no gold labels");
  const std::vector<TypedSpan> truth = CorpusSpans(gold);

  std::map<NEType, TypeMetrics> rows;
  for (NEType type : kAllNETypes) rows[type].type = type;
  for (const TypedSpan &g : truth) ++rows[g.type].gold_total;

  std::vector<TypedSpan> sorted = predicted;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  if (mode == MatchMode::kExactSpan) {
    std::set<TypedSpan> gold_set(truth.begin(), truth.end());
    for (const TypedSpan &p : sorted) {
      ++rows[p.type].predicted;
      if (gold_set.count(p)) ++rows[p.type].correct;
    }
  } else {
    std::vector<bool> used(truth.size(), false);
    for (const TypedSpan &p : sorted) {
      ++rows[p.type].predicted;
      for (size_t g = 0; g < truth.size(); ++g) {
        if (!used[g] && truth[g].sentence == p.sentence && truth[g].type == p.type &&
            truth[g].span.Contains(p.span.first)) {
          used[g] = true;
          ++rows[p.type].correct;
          break;
        }
      }
    }
  }

  std::vector<TypeMetrics> out;
  for (NEType type : kAllNETypes) out.push_back(Finish(rows[type]));
  return out;
}

std::vector<TypeMetrics> ScorePredictions(const LabelStore &predicted, const Corpus &gold,
                                          MatchMode mode) {
  std::vector<TypedSpan> spans;
  for (const SpanLabel &label : predicted.ToSpanLabels()) {
    spans.push_back({label.sentence, label.span, label.type});
  }
  return ScorePredictions(spans, gold, mode);
}

std::vector<TypeMetrics> ScoreCorpora(const Corpus &predicted, const Corpus &gold,
                                      MatchMode mode) {
  if (predicted.sentences.size() != gold.sentences.size()) {
    throw EvaluationError("prediction has " + std::to_string(predicted.sentences.size()) +
                          " sentences, gold has " + std::to_string(gold.sentences.size()));
  }
  for (size_t s = 0; s < gold.sentences.size(); ++s) {
    const Sentence &p = predicted.sentences[s];
    const Sentence &g = gold.sentences[s];
    if (p.id != g.id || p.size() != g.size()) {
      throw EvaluationError("sentence " + std::to_string(s + 1) + " ('" + g.id +
                            "') differs between prediction and gold");
    }
  }
  return ScorePredictions(CorpusSpans(predicted), gold, mode);
}

MacroAverages Macro(const std::vector<TypeMetrics> &metrics) {
  MacroAverages macro;
  for (const TypeMetrics &m : metrics) {
    if (m.gold_total == 0 && m.predicted == 0) continue;
    ++macro.types;
    macro.precision += m.precision;
    macro.recall += m.recall;
    macro.mean_f += m.f_measure;
  }
  if (macro.types == 0) return macro;
  macro.precision /= macro.types;
  macro.recall /= macro.types;
  macro.mean_f /= macro.types;
  macro.f_of_means = FMeasure(macro.precision, macro.recall);
  return macro;
}

PatternCountTable CountNewPatterns(const std::vector<IterationTrace> &trace) {
  PatternCountTable table;
  for (NEType type : kAllNETypes) {
    table.replacement[type] = 0;
    table.shift[type] = 0;
  }
  for (const IterationTrace &record : trace) {
    for (const NewPattern &entry : record.new_patterns) {
      if (entry.method == Origin::kPosReplacement) ++table.replacement[entry.ne_type];
      if (entry.method == Origin::kWindowShift) ++table.shift[entry.ne_type];
    }
  }
  return table;
}

void WriteMetricsTsv(const std::vector<TypeMetrics> &metrics, std::ostream &out) {
  out << "type\tprecision\trecall\tf-measure\tcorrect\tpredicted\tgold\n";
  size_t correct = 0, predicted = 0, gold = 0;
  for (const TypeMetrics &m : metrics) {
    out << NETypeName(m.type) << '\t' << Percent(m.precision) << '\t' << Percent(m.recall)
        << '\t' << Percent(m.f_measure) << '\t' << m.correct << '\t' << m.predicted << '\t'
        << m.gold_total << '\n';
    correct += m.correct;
    predicted += m.predicted;
    gold += m.gold_total;
  }
  const MacroAverages macro = Macro(metrics);
  out << "macro-mean-f\t" << Percent(macro.precision) << '\t' << Percent(macro.recall) << '\t'
      << Percent(macro.mean_f) << '\t' << correct << '\t' << predicted << '\t' << gold << '\n';
  out << "macro-f-of-means\t" << Percent(macro.precision) << '\t' << Percent(macro.recall)
      << '\t' << Percent(macro.f_of_means) << '\t' << correct << '\t' << predicted << '\t'
      << gold << '\n';
}

void WriteMetricsJson(const std::vector<TypeMetrics> &metrics, std::ostream &out) {
  Json rows = Json::array();
  for (const TypeMetrics &m : metrics) {
    rows.push_back({{"type", std::string(NETypeName(m.type))},
                    {"precision", PercentValue(m.precision)},
                    {"recall", PercentValue(m.recall)},
                    {"f_measure", PercentValue(m.f_measure)},
                    {"correct", m.correct},
                    {"predicted", m.predicted},
                    {"gold", m.gold_total}});
  }
  const MacroAverages macro = Macro(metrics);
  Json json = {{"scale", "percent"},
               {"types", std::move(rows)},
               {"macro",
                {{"types", macro.types},
                 {"precision", PercentValue(macro.precision)},
                 {"recall", PercentValue(macro.recall)},
                 {"mean_f", PercentValue(macro.mean_f)},
                 {"f_of_means", PercentValue(macro.f_of_means)}}}};
  out << json.dump(2) << '\n';
}

void WritePatternCountsTsv(const PatternCountTable &table, std::ostream &out) {
  out << "method";
  for (NEType type : kAllNETypes) out << '\t' << NETypeName(type);
  out << '\n';
  auto row = [&](std::string_view name, const std::map<NEType, size_t> &counts) {
    out << name;
    for (NEType type : kAllNETypes) {
      auto it = counts.find(type);
      out << '\t' << (it == counts.end() ? 0 : it->second);
    }
    out << '\n';
  };
  row(kReplacementRow, table.replacement);
  row(kShiftRow, table.shift);
}

void WritePatternCountsJson(const PatternCountTable &table, std::ostream &out) {
  auto row = [](const std::map<NEType, size_t> &counts) {
    Json json = Json::object();
    for (NEType type : kAllNETypes) {
      auto it = counts.find(type);
      json[std::string(NETypeName(type))] = it == counts.end() ? 0 : it->second;
    }
    return json;
  };
  Json json = {{std::string(kReplacementRow), row(table.replacement)},
               {std::string(kShiftRow), row(table.shift)}};
  out << json.dump(2) << '\n';
}

void EmitReports(const std::vector<TypeMetrics> &metrics,
                 const std::vector<IterationTrace> &trace, const std::string &prefix) {
  const PatternCountTable counts = CountNewPatterns(trace);
  {
    auto out = OpenOut(prefix + ".metrics.tsv");
    WriteMetricsTsv(metrics, out);
    if (!out) throw IoError("failed writing " + prefix + ".metrics.tsv");
  }
  {
    auto out = OpenOut(prefix + ".metrics.json");
    WriteMetricsJson(metrics, out);
    if (!out) throw IoError("failed writing " + prefix + ".metrics.json");
  }
  {
    auto out = OpenOut(prefix + ".patterns.tsv");
    WritePatternCountsTsv(counts, out);
    if (!out) throw IoError("failed writing " + prefix + ".patterns.tsv");
  }
  {
    auto out = OpenOut(prefix + ".patterns.json");
    WritePatternCountsJson(counts, out);
    if (!out) throw IoError("failed writing " + prefix + ".patterns.json");
  }
}

}  // namespace nerboot
