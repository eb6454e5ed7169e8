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

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nerboot/errors.h"

namespace nerboot {
namespace {

constexpr std::string_view kMaskText = "*";
constexpr std::string_view kIdPrefix = "# id:";

Token MakeSentinel(std::string_view pos, std::string_view surface) {
  Token token;
  token.surface = std::string(surface);
  token.pos = std::string(pos);
  token.sc = {std::string(kNoneSc)};
  return token;
}

std::string UpperText(std::string_view text) {
  icu::UnicodeString ustr = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  ustr.toUpper(icu::Locale::getRoot());
  std::string out;
  ustr.toUTF8String(out);
  return out;
}

std::vector<std::string_view> SplitOn(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::string_view Trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r'))
    text.remove_suffix(1);
  return text;
}

// Splits a semantic-constraint column on ';' and on ',' outside parentheses.
// Returns false on unbalanced parentheses.
bool SplitConstraints(std::string_view text, std::vector<std::string> *out) {
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ';';
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) return false;
    } else if (c == ';' || (c == ',' && depth == 0)) {
      if (c == ';' && depth != 0) return false;
      out->emplace_back(Trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return depth == 0;
}

std::string AtLine(size_t line, const std::string &message) {
  return "line " + std::to_string(line) + ": " + message;
}

// Returns true if `tag` is a well-formed BIO tag.
bool ParseBioTag(std::string_view tag, char *prefix, NEType *type) {
  if (tag == "O") {
    *prefix = 'O';
    return true;
  }
  if (tag.size() < 3 || tag[1] != '-' || (tag[0] != 'B' && tag[0] != 'I'))
    return false;
  auto parsed = ParseNETypeBioCode(tag.substr(2));
  if (!parsed) return false;
  *prefix = tag[0];
  *type = *parsed;
  return true;
}

std::string BaseName(std::string_view path) {
  size_t slash = path.find_last_of('/');
  return std::string(slash == std::string_view::npos ? path
                                                     : path.substr(slash + 1));
}

}  // namespace

const Token &BosToken() {
  static const Token token = MakeSentinel(kBosPos, "<s>");
  return token;
}

const Token &EosToken() {
  static const Token token = MakeSentinel(kEosPos, "</s>");
  return token;
}

size_t Corpus::TokenCount() const {
  size_t count = 0;
  for (const auto &sentence : sentences) count += sentence.size();
  return count;
}

bool Corpus::HasGold() const {
  for (const auto &sentence : sentences) {
    for (const auto &token : sentence.tokens) {
      if (token.gold) return true;
    }
  }
  return false;
}

Window ContextWindow(const Sentence &sentence, size_t i) {
  if (i >= sentence.size()) {
    throw std::out_of_range("token index " + std::to_string(i) +
                            " out of range for sentence of length " +
                            std::to_string(sentence.size()));
  }
  return SpanWindow(sentence, Span{i, i});
}

Window SpanWindow(const Sentence &sentence, const Span &span) {
  if (span.first > span.last || span.last >= sentence.size()) {
    throw std::out_of_range("span out of range for sentence " + sentence.id);
  }
  auto at = [&](long index) -> const Token * {
    if (index < 0) return &BosToken();
    if (index >= static_cast<long>(sentence.size())) return &EosToken();
    return &sentence.tokens[index];
  };
  const long first = static_cast<long>(span.first);
  const long last = static_cast<long>(span.last);
  return Window({at(first - 2), at(first - 1), at(first), at(last + 1),
                 at(last + 2)});
}

std::string ComposeText(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString ustr = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString composed = nfc->normalize(ustr, status);
  if (U_FAILURE(status)) throw Error("unicode normalization failed");
  std::string out;
  composed.toUTF8String(out);
  return out;
}

Token Normalize(Token raw) {
  raw.surface = ComposeText(raw.surface);
  raw.pos = UpperText(ComposeText(raw.pos));
  if (raw.ms) raw.ms = ComposeText(*raw.ms);
  for (auto &sc : raw.sc) sc = ComposeText(sc);
  return raw;
}

std::vector<std::pair<Span, NEType>> GoldSpans(const Sentence &sentence) {
  std::vector<std::pair<Span, NEType>> spans;
  std::optional<std::pair<Span, NEType>> open;
  for (size_t i = 0; i < sentence.size(); ++i) {
    const auto &gold = sentence.tokens[i].gold;
    char prefix = 'O';
    NEType type = NEType::kPerson;
    if (gold && !ParseBioTag(*gold, &prefix, &type)) {
      throw ValidationError("sentence " + sentence.id + ": bad BIO tag '" +
                            *gold + "'");
    }
    if (prefix == 'I') {
      if (!open || open->second != type) {
        throw ValidationError("sentence " + sentence.id + ": token " +
                              std::to_string(i + 1) + " tag " + *gold +
                              " does not continue an entity of that type");
      }
      open->first.last = i;
      continue;
    }
    if (open) spans.push_back(*open);
    open.reset();
    if (prefix == 'B') open = std::make_pair(Span{i, i}, type);
  }
  if (open) spans.push_back(*open);
  return spans;
}

void ValidateBio(const Sentence &sentence) { GoldSpans(sentence); }

Corpus ParseCorpus(std::istream &in, Profile profile,
                   std::string_view source_name) {
  Corpus corpus;
  corpus.profile = profile;
  std::set<std::string> ids;
  std::optional<std::string> pending_id;
  Sentence current;
  size_t first_line_of_sentence = 0;
  const std::string base = BaseName(source_name);

  auto flush = [&](size_t line) {
    if (current.tokens.empty()) return;
    current.id = pending_id ? *pending_id
                            : base + ":" + std::to_string(corpus.sentences.size() + 1);
    pending_id.reset();
    try {
      ValidateBio(current);
    } catch (const ValidationError &e) {
      throw ValidationError(AtLine(first_line_of_sentence, e.what()));
    }
    if (!ids.insert(current.id).second) {
      throw ValidationError(AtLine(line, "duplicate sentence id '" +
                                             current.id + "'"));
    }
    corpus.sentences.push_back(std::move(current));
    current = Sentence();
  };

  std::string raw_line;
  size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = raw_line;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) {
      flush(line_no);
      continue;
    }
    if (line.front() == '#') {
      if (line.substr(0, kIdPrefix.size()) == kIdPrefix) {
        flush(line_no);
        pending_id = std::string(Trim(line.substr(kIdPrefix.size())));
      }
      continue;
    }

    auto cols = SplitOn(line, '\t');
    if (cols.size() != 6) {
      throw ParseError(AtLine(line_no, "expected 6 tab-separated columns, found " +
                                           std::to_string(cols.size())),
                       line_no);
    }
    if (current.tokens.empty()) first_line_of_sentence = line_no;

    size_t index = 0;
    auto [ptr, ec] =
        std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), index);
    if (ec != std::errc() || ptr != cols[0].data() + cols[0].size() ||
        index != current.tokens.size() + 1) {
      throw ParseError(AtLine(line_no, "INDEX column must be " +
                                           std::to_string(current.tokens.size() + 1)),
                       line_no);
    }

    for (auto &col : cols) col = Trim(col);
    Token token;
    token.surface = std::string(cols[1]);
    token.pos = std::string(cols[2]);
    if (cols[3] != "-") token.ms = std::string(cols[3]);
    if (!SplitConstraints(cols[4], &token.sc))
      throw ValidationError(AtLine(line_no, "unbalanced parentheses in SC"));
    if (cols[5] != "-") token.gold = std::string(cols[5]);
    token = Normalize(std::move(token));

    if (token.surface.empty())
      throw ValidationError(AtLine(line_no, "empty SURFACE"));
    if (token.pos.empty()) throw ValidationError(AtLine(line_no, "empty POS"));
    if (token.IsSentinel() || token.pos == kMaskText)
      throw ValidationError(AtLine(line_no, "reserved POS value '" + token.pos + "'"));
    if (token.ms) {
      if (profile == Profile::kTwoTuple) {
        throw ProfileError(AtLine(line_no, "morphological suffix '" + *token.ms +
                                               "' in a two-tuple corpus"));
      }
      if (token.ms->empty() || *token.ms == kNoneSc || *token.ms == kMaskText)
        throw ValidationError(AtLine(line_no, "reserved MS value '" + *token.ms + "'"));
    }
    for (const auto &sc : token.sc) {
      if (sc.empty() || sc == kMaskText)
        throw ValidationError(AtLine(line_no, "empty or reserved SC value"));
    }
    if (token.gold) {
      char prefix;
      NEType type;
      if (!ParseBioTag(*token.gold, &prefix, &type))
        throw ValidationError(AtLine(line_no, "bad BIO tag '" + *token.gold + "'"));
    }
    current.tokens.push_back(std::move(token));
  }
  flush(line_no + 1);
  return corpus;
}

Corpus LoadCorpus(const std::string &path, Profile profile) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file " + path);
  return ParseCorpus(in, profile, path);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto &sentence = corpus.sentences[s];
    if (s > 0) out << '\n';
    out << "# id: " << sentence.id << '\n';
    for (size_t i = 0; i < sentence.size(); ++i) {
      const Token &token = sentence.tokens[i];
      out << (i + 1) << '\t' << token.surface << '\t' << token.pos << '\t'
          << (token.ms ? *token.ms : "-") << '\t';
      for (size_t k = 0; k < token.sc.size(); ++k) {
        if (k > 0) out << ';';
        out << token.sc[k];
      }
      out << '\t' << (token.gold ? *token.gold : "-") << '\n';
    }
  }
}

void SaveCorpus(const Corpus &corpus, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file " + path);
  WriteCorpus(corpus, out);
  if (!out) throw IoError("write failed for " + path);
}

Corpus WithLabels(const Corpus &corpus, const std::vector<SpanLabel> &labels) {
  Corpus out = corpus;
  for (auto &sentence : out.sentences) {
    for (auto &token : sentence.tokens) token.gold = "O";
  }
  for (const auto &label : labels) {
    if (label.sentence >= out.sentences.size())
      throw IntegrityError("label references missing sentence");
    auto &tokens = out.sentences[label.sentence].tokens;
    if (label.span.last >= tokens.size())
      throw IntegrityError("label span outside sentence");
    const std::string code(NETypeBioCode(label.type));
    for (size_t i = label.span.first; i <= label.span.last; ++i) {
      tokens[i].gold = (i == label.span.first ? "B-" : "I-") + code;
    }
  }
  return out;
}

}  // namespace nerboot
