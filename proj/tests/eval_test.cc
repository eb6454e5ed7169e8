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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nerboot/errors.h"
#include "oracles.h"

namespace nerboot {
namespace {

// Ten one-token sentences; sentence i holds a person at token 1.
Corpus TenPeople() {
  Corpus corpus;
  for (int i = 0; i < 10; ++i) {
    Sentence s{"s" + std::to_string(i), {}};
    for (int t = 0; t < 3; ++t) {
      Token token;
      token.surface = "w";
      token.pos = t == 1 ? "NNP" : "DT";
      token.sc = {"None"};
      token.gold = t == 1 ? "B-PER" : "O";
      s.tokens.push_back(token);
    }
    corpus.sentences.push_back(s);
  }
  return corpus;
}

const TypeMetrics &Row(const std::vector<TypeMetrics> &metrics, NEType type) {
  for (const TypeMetrics &m : metrics) {
    if (m.type == type) return m;
  }
  throw std::logic_error("missing row");
}

std::string Slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(FMeasureTest, Examples) {
  EXPECT_NEAR(FMeasure(84.72, 93.29), 88.8, 0.05);
  EXPECT_NEAR(FMeasure(71.05, 81.0), 75.7, 0.05);
  EXPECT_EQ(FMeasure(0, 0), 0.0);
  EXPECT_EQ(FMeasure(1, 0), 0.0);
}

TEST(FMeasureTest, Properties) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng), r = u(rng);
    EXPECT_DOUBLE_EQ(FMeasure(p, r), FMeasure(r, p));
    EXPECT_NEAR(FMeasure(p, p), p, 1e-15);
    EXPECT_LE(FMeasure(p, r), std::max(p, r) + 1e-15);
    EXPECT_GE(FMeasure(p, r), std::min(p, r) - 1e-15);
    EXPECT_NEAR(FMeasure(p, r), static_cast<double>(oracle::FMeasure(p, r)), 1e-15);
  }
}

TEST(ScorePredictionsTest, IdentityIsPerfect) {
  const Corpus gold = TenPeople();
  const auto metrics = ScoreCorpora(gold, gold, MatchMode::kExactSpan);
  ASSERT_EQ(metrics.size(), kAllNETypes.size());
  const TypeMetrics &person = Row(metrics, NEType::kPerson);
  EXPECT_EQ(person.precision, 1.0);
  EXPECT_EQ(person.recall, 1.0);
  EXPECT_EQ(person.f_measure, 1.0);
  EXPECT_EQ(person.correct, 10u);
}

TEST(ScorePredictionsTest, NoPredictionsScoreZero) {
  const auto metrics = ScorePredictions(std::vector<TypedSpan>{}, TenPeople(),
                                        MatchMode::kExactSpan);
  const TypeMetrics &person = Row(metrics, NEType::kPerson);
  EXPECT_EQ(person.precision, 0.0);
  EXPECT_EQ(person.recall, 0.0);
  EXPECT_EQ(person.f_measure, 0.0);
  EXPECT_EQ(person.gold_total, 10u);
}

TEST(ScorePredictionsTest, PartialCredit) {
  // 8 predictions, 6 on gold spans, 2 on the wrong token.
  std::vector<TypedSpan> predicted;
  for (size_t i = 0; i < 6; ++i) predicted.push_back({i, {1, 1}, NEType::kPerson});
  predicted.push_back({6, {0, 0}, NEType::kPerson});
  predicted.push_back({7, {2, 2}, NEType::kPerson});
  const auto metrics = ScorePredictions(predicted, TenPeople(), MatchMode::kExactSpan);
  const TypeMetrics &person = Row(metrics, NEType::kPerson);
  EXPECT_EQ(person.correct, 6u);
  EXPECT_EQ(person.predicted, 8u);
  EXPECT_DOUBLE_EQ(person.precision, 0.75);
  EXPECT_DOUBLE_EQ(person.recall, 0.6);
  EXPECT_NEAR(person.f_measure, 2 * 0.75 * 0.6 / 1.35, 1e-15);
}

TEST(ScorePredictionsTest, WrongTypeIsNotCorrect) {
  const auto metrics = ScorePredictions({{0, {1, 1}, NEType::kLocation}}, TenPeople(),
                                        MatchMode::kExactSpan);
  EXPECT_EQ(Row(metrics, NEType::kLocation).correct, 0u);
  EXPECT_EQ(Row(metrics, NEType::kLocation).predicted, 1u);
  EXPECT_EQ(Row(metrics, NEType::kPerson).correct, 0u);
}

TEST(ScorePredictionsTest, CenterTokenMode) {
  Corpus gold = TenPeople();
  gold.sentences[0].tokens[2].gold = "I-PER";  // gold entity {1, 2}
  const std::vector<TypedSpan> predicted = {{0, {1, 1}, NEType::kPerson},
                                            {0, {2, 2}, NEType::kPerson}};
  const auto exact = ScorePredictions(predicted, gold, MatchMode::kExactSpan);
  EXPECT_EQ(Row(exact, NEType::kPerson).correct, 0u);
  // Each gold entity is credited once.
  const auto center = ScorePredictions(predicted, gold, MatchMode::kCenterToken);
  EXPECT_EQ(Row(center, NEType::kPerson).correct, 1u);
  EXPECT_EQ(ParseMatchModeName(MatchModeName(MatchMode::kCenterToken)),
            MatchMode::kCenterToken);
  EXPECT_FALSE(ParseMatchModeName("fuzzy").has_value());
}

TEST(ScorePredictionsTest, Errors) {
  Corpus unlabelled = TenPeople();
  for (Sentence &s : unlabelled.sentences) {
    for (Token &t : s.tokens) t.gold.reset();
  }
  EXPECT_THROW(ScorePredictions(std::vector<TypedSpan>{}, unlabelled, MatchMode::kExactSpan),
               EvaluationError);
  Corpus shorter = TenPeople();
  shorter.sentences.pop_back();
  EXPECT_THROW(ScoreCorpora(shorter, TenPeople(), MatchMode::kExactSpan), EvaluationError);
  Corpus ragged = TenPeople();
  ragged.sentences[0].tokens.pop_back();
  EXPECT_THROW(ScoreCorpora(ragged, TenPeople(), MatchMode::kExactSpan), EvaluationError);
}

TEST(ScorePredictionsTest, LabelStoreOverload) {
  LabelStore store;
  for (size_t i = 0; i < 4; ++i) {
    store.Insert(i, {1, 1}, Label{"s" + std::to_string(i), NEType::kPerson, "p", 1, 1.0});
  }
  const auto metrics = ScorePredictions(store, TenPeople(), MatchMode::kExactSpan);
  EXPECT_EQ(Row(metrics, NEType::kPerson).correct, 4u);
  EXPECT_DOUBLE_EQ(Row(metrics, NEType::kPerson).recall, 0.4);
}

TEST(MacroTest, SkipsEmptyTypes) {
  std::vector<TypeMetrics> metrics(2);
  metrics[0] = {NEType::kPerson, 3, 4, 6, 0.75, 0.5, FMeasure(0.75, 0.5)};
  metrics[1] = {NEType::kLocation, 1, 1, 2, 1.0, 0.5, FMeasure(1.0, 0.5)};
  metrics.push_back({NEType::kDate, 0, 0, 0, 0, 0, 0});
  const MacroAverages macro = Macro(metrics);
  EXPECT_EQ(macro.types, 2u);
  EXPECT_DOUBLE_EQ(macro.precision, 0.875);
  EXPECT_DOUBLE_EQ(macro.recall, 0.5);
  EXPECT_DOUBLE_EQ(macro.mean_f, (FMeasure(0.75, 0.5) + FMeasure(1.0, 0.5)) / 2);
  EXPECT_DOUBLE_EQ(macro.f_of_means, FMeasure(0.875, 0.5));
  EXPECT_EQ(Macro({}).types, 0u);
}

TEST(ReportTest, MetricsTsvRoundsToTwoDecimals) {
  TypeMetrics person{NEType::kPerson, 0, 0, 0, 0.8282, 0.9339, FMeasure(0.8282, 0.9339)};
  std::ostringstream out;
  WriteMetricsTsv({person}, out);
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "type\tprecision\trecall\tf-measure\tcorrect\tpredicted\tgold");
  EXPECT_EQ(row.substr(0, row.find("\t0")), "person\t82.82\t93.39\t87.79");
}

TEST(ReportTest, PatternCounts) {
  std::vector<IterationTrace> trace(2);
  trace[0].new_patterns = {{Origin::kPosReplacement, "a", NEType::kPerson},
                           {Origin::kWindowShift, "b", NEType::kPerson},
                           {Origin::kWindowShift, "c", NEType::kPerson}};
  trace[1].new_patterns = {{Origin::kPosReplacement, "d", NEType::kPerson},
                           {Origin::kPosReplacement, "e", NEType::kPerson},
                           {Origin::kWindowShift, "f", NEType::kPerson},
                           {Origin::kWindowShift, "g", NEType::kPerson},
                           {Origin::kWindowShift, "h", NEType::kPerson},
                           {Origin::kChunk, "i", NEType::kPerson}};
  const PatternCountTable table = CountNewPatterns(trace);
  EXPECT_EQ(table.replacement.at(NEType::kPerson), 3u);
  EXPECT_EQ(table.shift.at(NEType::kPerson), 5u);
  EXPECT_EQ(table.shift.at(NEType::kLocation), 0u);

  const PatternCountTable empty = CountNewPatterns({});
  for (NEType type : kAllNETypes) {
    EXPECT_EQ(empty.replacement.at(type), 0u);
    EXPECT_EQ(empty.shift.at(type), 0u);
  }

  std::ostringstream tsv;
  WritePatternCountsTsv(table, tsv);
  EXPECT_EQ(tsv.str(),
            "method\tperson\tlocation\torganization\tdate\ttime\tmoney\tpercent\n"
            "Replacement of POS\t3\t0\t0\t0\t0\t0\t0\n"
            "Shifting the window\t5\t0\t0\t0\t0\t0\t0\n");
}

TEST(ReportTest, EmitReportsWritesFourFiles) {
  const std::string prefix =
      (std::filesystem::temp_directory_path() / "nerboot_eval_test").string();
  const auto metrics = ScoreCorpora(TenPeople(), TenPeople(), MatchMode::kExactSpan);
  EmitReports(metrics, {}, prefix);
  for (const char *suffix : {".metrics.tsv", ".metrics.json", ".patterns.tsv", ".patterns.json"}) {
    EXPECT_TRUE(std::filesystem::exists(prefix + suffix)) << suffix;
  }
  const auto json = nlohmann::json::parse(Slurp(prefix + ".metrics.json"));
  EXPECT_EQ(json["scale"], "percent");
  EXPECT_EQ(json["types"][0]["type"], "person");
  EXPECT_DOUBLE_EQ(json["types"][0]["f_measure"].get<double>(), 100.0);
  EXPECT_EQ(json["macro"]["types"], 1);
  const auto patterns = nlohmann::json::parse(Slurp(prefix + ".patterns.json"));
  EXPECT_EQ(patterns["Shifting the window"]["person"], 0);
  EXPECT_NE(Slurp(prefix + ".metrics.tsv").find("macro-f-of-means\t100.00"), std::string::npos);
  for (const char *suffix : {".metrics.tsv", ".metrics.json", ".patterns.tsv", ".patterns.json"}) {
    std::filesystem::remove(prefix + suffix);
  }
  EXPECT_THROW(EmitReports(metrics, {}, "/nonexistent-dir/x"), IoError);
}

}  // namespace
}  // namespace nerboot
