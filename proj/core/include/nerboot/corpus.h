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

// Token/sentence data model and the tab-separated corpus file format.
//
// One token per row, blank line between sentences, "#" lines are comments.
// Columns: INDEX SURFACE POS MS SC GOLD
//   INDEX  1-based position within the sentence
//   MS     morphological suffix, "-" if none
//   SC     semantic constraints joined by ";" (the literal "None" is allowed);
//          a "," outside parentheses also separates constraints
//   GOLD   BIO tag (O, B-PER, I-LOC, ...) or "-" for unlabelled data
// A "# id: <text>" comment names the following sentence; otherwise the id is
// "<file name>:<ordinal>".

#ifndef NERBOOT_CORPUS_H_
#define NERBOOT_CORPUS_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nerboot/types.h"

namespace nerboot {

// Reserved POS values of the boundary sentinels.
inline constexpr std::string_view kBosPos = "BOS";
inline constexpr std::string_view kEosPos = "EOS";
// The "no constraint" semantic-constraint value.
inline constexpr std::string_view kNoneSc = "None";

struct Token {
  std::string surface;
  std::string pos;
  std::optional<std::string> ms;
  std::vector<std::string> sc;
  std::optional<std::string> gold;

  bool IsSentinel() const { return pos == kBosPos || pos == kEosPos; }

  bool operator==(const Token &) const = default;
};

const Token &BosToken();
const Token &EosToken();

struct Sentence {
  std::string id;
  std::vector<Token> tokens;

  size_t size() const { return tokens.size(); }
  bool operator==(const Sentence &) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  Profile profile = Profile::kTwoTuple;

  size_t TokenCount() const;
  // True if at least one token carries a gold column other than "-".
  bool HasGold() const;

  bool operator==(const Corpus &) const = default;
};

// Five tokens around a center; out-of-sentence slots point at sentinels.
// Holds references into the sentence, which must outlive the window.
class Window {
 public:
  static constexpr int kCenterIndex = kCenterSlot;

  Window(std::array<const Token *, kWindowSize> slots) : slots_(slots) {}

  const Token &operator[](int slot) const { return *slots_[slot]; }
  const Token &at_offset(int offset) const { return *slots_[SlotIndex(offset)]; }
  const Token &center() const { return *slots_[kCenterIndex]; }
  static constexpr int size() { return kWindowSize; }

 private:
  std::array<const Token *, kWindowSize> slots_;
};

// Window centered on token `i`. Throws std::out_of_range if i is invalid.
Window ContextWindow(const Sentence &sentence, size_t i);

// Window around a (possibly multi-token) unit: the two tokens before
// span.first, the head span.first, and the two tokens after span.last.
Window SpanWindow(const Sentence &sentence, const Span &span);

// Unicode canonical composition (NFC) of UTF-8 text.
std::string ComposeText(std::string_view text);

// Upper-cases POS and composes surface and SC texts.
Token Normalize(Token raw);

// Decodes the BIO gold column into typed spans. Tokens without gold are
// treated as outside. Throws ValidationError on an ill-formed sequence.
std::vector<std::pair<Span, NEType>> GoldSpans(const Sentence &sentence);

// Checks the BIO gold column of one sentence.
void ValidateBio(const Sentence &sentence);

Corpus ParseCorpus(std::istream &in, Profile profile,
                   std::string_view source_name);
Corpus LoadCorpus(const std::string &path, Profile profile);

void WriteCorpus(const Corpus &corpus, std::ostream &out);
void SaveCorpus(const Corpus &corpus, const std::string &path);

// Replaces every gold column by the BIO encoding of `labels` (O elsewhere).
// `labels` pairs a sentence index with a typed span.
struct SpanLabel {
  size_t sentence = 0;
  Span span;
  NEType type = NEType::kPerson;
};
Corpus WithLabels(const Corpus &corpus, const std::vector<SpanLabel> &labels);

}  // namespace nerboot

#endif  // NERBOOT_CORPUS_H_
