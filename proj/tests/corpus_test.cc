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

#include "nerboot/corpus.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.h"
#include "nerboot/errors.h"
#include "nerboot/synthgen.h"

namespace nerboot {
namespace {

Corpus Parse(const std::string &text, Profile profile = Profile::kTwoTuple,
             const std::string &source = "test.tsv") {
  std::istringstream in(text);
  return ParseCorpus(in, profile, source);
}

std::string Row(int index, const std::string &surface, const std::string &pos,
                const std::string &ms = "-", const std::string &sc = "None",
                const std::string &gold = "O") {
  return std::to_string(index) + "\t" + surface + "\t" + pos + "\t" + ms + "\t" + sc + "\t" +
         gold + "\n";
}

Sentence MakeSentence(size_t length) {
  Sentence sentence;
  sentence.id = "s";
  for (size_t i = 0; i < length; ++i) {
    Token token;
    token.surface = "t" + std::to_string(i);
    token.pos = "NN";
    token.sc = {"None"};
    sentence.tokens.push_back(token);
  }
  return sentence;
}

TEST(LoadCorpusTest, EmptyFileHasNoSentences) {
  Corpus corpus = Parse("");
  EXPECT_TRUE(corpus.sentences.empty());
  EXPECT_EQ(corpus.TokenCount(), 0u);
}

TEST(LoadCorpusTest, TwoSentencesFiveRows) {
  Corpus corpus = Parse(Row(1, "Raja", "NNP", "-", "iof>person", "B-PER") +
                        Row(2, "went", "VBD") + Row(3, "home", "NN") + "\n" +
                        Row(1, "It", "PRP") + Row(2, "rained", "VBD"));
  ASSERT_EQ(corpus.sentences.size(), 2u);
  EXPECT_EQ(corpus.TokenCount(), 5u);
  EXPECT_EQ(corpus.sentences[0].id, "test.tsv:1");
  EXPECT_EQ(corpus.sentences[1].id, "test.tsv:2");
  EXPECT_EQ(*corpus.sentences[0].tokens[0].gold, "B-PER");
  EXPECT_EQ(corpus.sentences[0].tokens[0].sc, std::vector<std::string>{"iof>person"});
}

TEST(LoadCorpusTest, WrongColumnCountNamesTheLine) {
  const std::string text = "# comment\n" + Row(1, "went", "VBD") + "Raja\tNNP\n";
  try {
    Parse(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpusTest, IndexMustCountFromOne) {
  EXPECT_THROW(Parse(Row(2, "went", "VBD")), ParseError);
  EXPECT_THROW(Parse(Row(1, "a", "DT") + Row(3, "b", "NN")), ParseError);
  EXPECT_THROW(Parse("x\ta\tDT\t-\tNone\tO\n"), ParseError);
}

TEST(LoadCorpusTest, IdCommentsNameSentences) {
  Corpus corpus = Parse("# id: first\n" + Row(1, "a", "DT") + "\n# id: second\n" +
                        Row(1, "b", "NN"));
  ASSERT_EQ(corpus.sentences.size(), 2u);
  EXPECT_EQ(corpus.sentences[0].id, "first");
  EXPECT_EQ(corpus.sentences[1].id, "second");
}

TEST(LoadCorpusTest, DefaultIdUsesFileBaseName) {
  Corpus corpus = Parse(Row(1, "a", "DT"), Profile::kTwoTuple, "/data/dir/news.tsv");
  EXPECT_EQ(corpus.sentences[0].id, "news.tsv:1");
}

TEST(LoadCorpusTest, DuplicateIdsAreRejected) {
  EXPECT_THROW(Parse("# id: x\n" + Row(1, "a", "DT") + "\n# id: x\n" + Row(1, "b", "NN")),
               ValidationError);
}

TEST(LoadCorpusTest, CommentsBlankRunsAndCarriageReturnsAreTolerated) {
  std::string text = "# header\n\n\n" + Row(1, "a", "DT") + "# note\n" + Row(2, "b", "NN");
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  Corpus corpus = Parse(crlf);
  ASSERT_EQ(corpus.sentences.size(), 1u);
  EXPECT_EQ(corpus.sentences[0].size(), 2u);
  EXPECT_EQ(*corpus.sentences[0].tokens[1].gold, "O");
}

TEST(LoadCorpusTest, ScListsSplitOnSemicolonAndTopLevelComma) {
  Corpus corpus = Parse(Row(1, "Raja", "NNP", "-", "iof>person;icl>human") +
                        Row(2, "x", "NN", "-", "icl>thing(a,b),aoj>thing"));
  EXPECT_EQ(corpus.sentences[0].tokens[0].sc,
            (std::vector<std::string>{"iof>person", "icl>human"}));
  EXPECT_EQ(corpus.sentences[0].tokens[1].sc,
            (std::vector<std::string>{"icl>thing(a,b)", "aoj>thing"}));
  EXPECT_THROW(Parse(Row(1, "x", "NN", "-", "icl>thing(a")), ValidationError);
}

TEST(LoadCorpusTest, UnlabelledRowsHaveNoGold) {
  Corpus corpus = Parse(Row(1, "a", "DT", "-", "None", "-"));
  EXPECT_FALSE(corpus.sentences[0].tokens[0].gold.has_value());
  EXPECT_FALSE(corpus.HasGold());
}

TEST(LoadCorpusTest, MsUnderTwoTupleIsAProfileError) {
  const std::string text = Row(1, "Raja", "NNP", "in", "iof>person");
  EXPECT_THROW(Parse(text, Profile::kTwoTuple), ProfileError);
  Corpus corpus = Parse(text, Profile::kThreeTuple);
  EXPECT_EQ(*corpus.sentences[0].tokens[0].ms, "in");
  EXPECT_EQ(corpus.profile, Profile::kThreeTuple);
}

TEST(LoadCorpusTest, ReservedValuesAreRejected) {
  EXPECT_THROW(Parse(Row(1, "a", "BOS")), ValidationError);
  EXPECT_THROW(Parse(Row(1, "a", "eos")), ValidationError);
  EXPECT_THROW(Parse(Row(1, "a", "*")), ValidationError);
  EXPECT_THROW(Parse(Row(1, "a", "NN", "None"), Profile::kThreeTuple), ValidationError);
  EXPECT_THROW(Parse(Row(1, "a", "NN", "-", "*")), ValidationError);
  EXPECT_THROW(Parse(Row(1, "a", "NN", "-", "x;;y")), ValidationError);
  EXPECT_THROW(Parse(Row(1, " ", "NN")), ValidationError);
  EXPECT_THROW(Parse(Row(1, "a", "NN", "-", "None", "B-MISC")), ValidationError);
}

TEST(LoadCorpusTest, MissingFileIsAnIoError) {
  EXPECT_THROW(LoadCorpus("/nonexistent/corpus.tsv", Profile::kTwoTuple), IoError);
}

TEST(LoadCorpusTest, BundledSamplesLoad) {
  Corpus train = LoadCorpus(std::string(NERBOOT_TEST_DATA) + "/conll_train.tsv",
                            Profile::kTwoTuple);
  EXPECT_EQ(train.sentences.size(), 7u);
  EXPECT_TRUE(train.HasGold());
}

// All 3-token sentences over {O, B-PER, I-PER, B-LOC, I-LOC}: a sentence is
// accepted iff every I-X directly continues a B-X or I-X.
TEST(BioValidationTest, ExhaustiveThreeTokenSentences) {
  const std::vector<std::string> tags = {"O", "B-PER", "I-PER", "B-LOC", "I-LOC"};
  size_t accepted = 0;
  for (const std::string &a : tags) {
    for (const std::string &b : tags) {
      for (const std::string &c : tags) {
        const std::vector<std::string> seq = {a, b, c};
        bool valid = true;
        for (size_t i = 0; i < seq.size(); ++i) {
          if (seq[i][0] != 'I') continue;
          valid = valid && i > 0 && seq[i - 1] != "O" &&
                  seq[i - 1].substr(2) == seq[i].substr(2);
        }
        const std::string text = Row(1, "x", "NN", "-", "None", a) +
                                 Row(2, "y", "NN", "-", "None", b) +
                                 Row(3, "z", "NN", "-", "None", c);
        if (valid) {
          EXPECT_NO_THROW(Parse(text)) << a << " " << b << " " << c;
          ++accepted;
        } else {
          EXPECT_THROW(Parse(text), ValidationError) << a << " " << b << " " << c;
        }
      }
    }
  }
  EXPECT_EQ(accepted, 41u);  // 3 starts, then 3 ways after O and 4 after B/I
}

TEST(BioValidationTest, GoldSpansGroupContinuations) {
  Corpus corpus = Parse(Row(1, "Raja", "NNP", "-", "None", "B-PER") +
                        Row(2, "Kumar", "NNP", "-", "None", "I-PER") +
                        Row(3, "in", "IN") + Row(4, "Chennai", "NNP", "-", "None", "B-LOC") +
                        Row(5, "Madurai", "NNP", "-", "None", "B-LOC"));
  auto spans = GoldSpans(corpus.sentences[0]);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0].first, (Span{0, 1}));
  EXPECT_EQ(spans[0].second, NEType::kPerson);
  EXPECT_EQ(spans[1].first, (Span{3, 3}));
  EXPECT_EQ(spans[2].first, (Span{4, 4}));
  EXPECT_EQ(spans[2].second, NEType::kLocation);
}

TEST(ContextWindowTest, PadsTheLeftEdge) {
  Sentence s = MakeSentence(3);
  Window w = ContextWindow(s, 0);
  EXPECT_EQ(w[0].pos, "BOS");
  EXPECT_EQ(w[1].pos, "BOS");
  EXPECT_EQ(w[2].surface, "t0");
  EXPECT_EQ(w[3].surface, "t1");
  EXPECT_EQ(w[4].surface, "t2");
  EXPECT_EQ(w[0].sc, std::vector<std::string>{"None"});
}

TEST(ContextWindowTest, InteriorWindowIsTheTokensInOrder) {
  Sentence s = MakeSentence(5);
  Window w = ContextWindow(s, 2);
  for (int slot = 0; slot < Window::size(); ++slot) {
    EXPECT_EQ(w[slot].surface, "t" + std::to_string(slot));
  }
  EXPECT_EQ(w.center().surface, "t2");
  EXPECT_EQ(w.at_offset(-2).surface, "t0");
}

TEST(ContextWindowTest, PadsTheRightEdge) {
  Sentence s = MakeSentence(3);
  Window w = ContextWindow(s, 2);
  EXPECT_EQ(w[0].surface, "t0");
  EXPECT_EQ(w[2].surface, "t2");
  EXPECT_EQ(w[3].pos, "EOS");
  EXPECT_EQ(w[4].pos, "EOS");
}

TEST(ContextWindowTest, OutOfRangeIndexThrows) {
  Sentence s = MakeSentence(3);
  EXPECT_THROW(ContextWindow(s, 3), std::out_of_range);
  EXPECT_THROW(ContextWindow(MakeSentence(0), 0), std::out_of_range);
}

TEST(ContextWindowTest, SentinelsFormContiguousPrefixAndSuffix) {
  for (size_t length = 1; length <= 6; ++length) {
    Sentence s = MakeSentence(length);
    for (size_t i = 0; i < length; ++i) {
      Window w = ContextWindow(s, i);
      EXPECT_EQ(w.center().surface, s.tokens[i].surface);
      int sentinels = 0;
      bool seen_real = false, seen_eos = false;
      for (int slot = 0; slot < Window::size(); ++slot) {
        const std::string &pos = w[slot].pos;
        if (pos == "BOS") {
          EXPECT_FALSE(seen_real);
          ++sentinels;
        } else if (pos == "EOS") {
          seen_eos = true;
          ++sentinels;
        } else {
          EXPECT_FALSE(seen_eos);
          seen_real = true;
        }
      }
      EXPECT_LE(sentinels, 4);
    }
  }
}

TEST(SpanWindowTest, ContextSurroundsTheWholeSpan) {
  Sentence s = MakeSentence(6);
  Window w = SpanWindow(s, Span{2, 3});
  EXPECT_EQ(w[1].surface, "t1");
  EXPECT_EQ(w[2].surface, "t2");
  EXPECT_EQ(w[3].surface, "t4");
  EXPECT_EQ(w[4].surface, "t5");
}

TEST(NormalizeTest, UppercasesPos) {
  Token raw;
  raw.surface = "Raja";
  raw.pos = "nnp";
  raw.sc = {"icl>person"};
  Token token = Normalize(raw);
  EXPECT_EQ(token.pos, "NNP");
  EXPECT_EQ(token.sc, std::vector<std::string>{"icl>person"});
}

TEST(NormalizeTest, ComposesDecomposedTamil) {
  // KA + vowel sign O, written as KA + E + AA and as the precomposed sign.
  const std::string decomposed = "\xE0\xAE\x95\xE0\xAF\x86\xE0\xAE\xBE";
  const std::string composed = "\xE0\xAE\x95\xE0\xAF\x8A";
  ASSERT_NE(decomposed, composed);
  Token a;
  a.surface = decomposed;
  a.pos = "NN";
  a.sc = {decomposed};
  Token b = a;
  b.surface = composed;
  b.sc = {composed};
  EXPECT_EQ(Normalize(a), Normalize(b));
  EXPECT_EQ(Normalize(a).surface, composed);
}

TEST(NormalizeTest, ScOrderIsPreserved) {
  Token raw;
  raw.surface = "x";
  raw.pos = "NN";
  raw.sc = {"b", "a"};
  EXPECT_EQ(Normalize(raw).sc, (std::vector<std::string>{"b", "a"}));
}

TEST(RoundTripTest, SaveThenLoadIsIdentity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Profile profile = i % 2 ? Profile::kThreeTuple : Profile::kTwoTuple;
    Corpus corpus = Generate(fixtures::RandomSpec(rng, profile)).corpus;
    std::ostringstream out;
    WriteCorpus(corpus, out);
    Corpus back = Parse(out.str(), profile);
    EXPECT_EQ(back, corpus);
  }
}

TEST(RoundTripTest, HandWrittenThreeTupleFile) {
  const std::string text = "# id: a\n" + Row(1, "Raja", "NNP", "in", "iof>person;icl>human", "B-PER") +
                           Row(2, "went", "VBD", "-", "None", "O");
  Corpus corpus = Parse(text, Profile::kThreeTuple);
  std::ostringstream out;
  WriteCorpus(corpus, out);
  EXPECT_EQ(out.str(), text);
}

TEST(WithLabelsTest, RewritesTheGoldColumn) {
  Corpus corpus;
  corpus.sentences.push_back(MakeSentence(4));
  Corpus labelled = WithLabels(corpus, {{0, Span{1, 2}, NEType::kOrganization}});
  const auto &tokens = labelled.sentences[0].tokens;
  EXPECT_EQ(*tokens[0].gold, "O");
  EXPECT_EQ(*tokens[1].gold, "B-ORG");
  EXPECT_EQ(*tokens[2].gold, "I-ORG");
  EXPECT_EQ(*tokens[3].gold, "O");
  EXPECT_THROW(WithLabels(corpus, {{1, Span{0, 0}, NEType::kPerson}}), IntegrityError);
  EXPECT_THROW(WithLabels(corpus, {{0, Span{3, 4}, NEType::kPerson}}), IntegrityError);
}

}  // namespace
}  // namespace nerboot
