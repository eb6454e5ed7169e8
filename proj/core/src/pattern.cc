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

#include "nerboot/pattern.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "nerboot/errors.h"

namespace nerboot {
namespace {

constexpr std::string_view kProfileHeader = "# profile: ";

// A piece of pattern text together with its offset in the full text.
struct Piece {
  std::string_view text;
  size_t offset;
};

// Splits on `sep` outside parentheses.
std::vector<Piece> SplitTopLevel(Piece piece, char sep) {
  std::vector<Piece> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < piece.text.size(); ++i) {
    const char c = piece.text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (depth > 0) --depth;
    } else if (c == sep && depth == 0) {
      parts.push_back({piece.text.substr(start, i - start), piece.offset + start});
      start = i + 1;
    }
  }
  parts.push_back({piece.text.substr(start), piece.offset + start});
  return parts;
}

Piece TrimPiece(Piece piece) {
  while (!piece.text.empty() && piece.text.front() == ' ') {
    piece.text.remove_prefix(1);
    ++piece.offset;
  }
  while (!piece.text.empty() && piece.text.back() == ' ') piece.text.remove_suffix(1);
  return piece;
}

[[noreturn]] void Fail(const std::string &message, size_t offset) {
  throw ParseError("pattern notation, offset " + std::to_string(offset) + ": " +
                       message,
                   offset);
}

SlotValue ParseSlot(Piece piece, Profile profile) {
  auto fields = SplitTopLevel(piece, ',');
  const size_t min_fields = profile == Profile::kThreeTuple ? 3 : 2;
  if (fields.size() < min_fields) {
    Fail("slot '" + std::string(piece.text) + "' needs at least " +
             std::to_string(min_fields) + " comma-separated fields",
         piece.offset);
  }
  for (const auto &field : fields) {
    if (field.text.empty()) Fail("empty field", field.offset);
  }

  SlotValue slot;
  int masks = 0;
  size_t next = 0;
  if (fields[next].text == kMaskMarker) {
    slot.mask = MaskedField::kPos;
    ++masks;
  } else {
    slot.pos = std::string(fields[next].text);
  }
  ++next;
  if (profile == Profile::kThreeTuple) {
    const auto ms = fields[next].text;
    if (ms == kMaskMarker) {
      slot.mask = MaskedField::kMs;
      ++masks;
    } else if (ms != kNoneSc) {
      slot.ms = std::string(ms);
    }
    ++next;
  }
  if (fields.size() - next == 1 && fields[next].text == kMaskMarker) {
    slot.mask = MaskedField::kSc;
    ++masks;
  } else {
    for (size_t i = next; i < fields.size(); ++i) {
      if (fields[i].text == kMaskMarker) Fail("mask inside an SC list", fields[i].offset);
      slot.sc.emplace_back(fields[i].text);
    }
  }
  if (masks > 1) Fail("more than one masked field in a slot", piece.offset);
  return slot;
}

uint64_t Fnv1a(std::string_view text) {
  uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string SerializeBody(const Slots &slots, NEType type, Profile profile) {
  std::string out;
  for (int i = 0; i < kWindowSize; ++i) {
    if (i > 0) out += "; ";
    out += SerializeSlot(slots[i], profile);
    if (i == kCenterSlot) {
      out += '@';
      out += NETypeName(type);
    }
  }
  return out;
}

}  // namespace

SlotValue SlotValue::FromToken(const Token &token, Profile profile) {
  SlotValue slot;
  slot.pos = token.pos;
  if (profile == Profile::kThreeTuple) slot.ms = token.ms;
  slot.sc = token.sc;
  return slot;
}

bool SlotValue::Matches(const Token &token, Profile profile) const {
  if (mask != MaskedField::kNone) {
    throw UnresolvedPatternError("masked slot cannot be matched");
  }
  if (pos != token.pos || sc != token.sc) return false;
  return profile == Profile::kTwoTuple || ms == token.ms;
}

std::string SerializeSlot(const SlotValue &slot, Profile profile) {
  std::string out = slot.mask == MaskedField::kPos ? std::string(kMaskMarker) : slot.pos;
  if (profile == Profile::kThreeTuple) {
    out += ',';
    if (slot.mask == MaskedField::kMs) {
      out += kMaskMarker;
    } else {
      out += slot.ms ? *slot.ms : std::string(kNoneSc);
    }
  }
  if (slot.mask == MaskedField::kSc) {
    out += ',';
    out += kMaskMarker;
  } else {
    for (const auto &sc : slot.sc) {
      out += ',';
      out += sc;
    }
  }
  return out;
}

std::string_view OriginName(Origin origin) {
  switch (origin) {
    case Origin::kSeed: return "seed";
    case Origin::kPosReplacement: return "pos-replacement";
    case Origin::kWindowShift: return "window-shift";
    case Origin::kChunk: return "chunk";
  }
  return "seed";
}

std::optional<Origin> ParseOriginName(std::string_view name) {
  for (Origin origin : {Origin::kSeed, Origin::kPosReplacement,
                        Origin::kWindowShift, Origin::kChunk}) {
    if (OriginName(origin) == name) return origin;
  }
  return std::nullopt;
}

bool Pattern::HasMask() const {
  return std::any_of(slots.begin(), slots.end(), [](const SlotValue &slot) {
    return slot.mask != MaskedField::kNone;
  });
}

std::string ContentId(const Slots &slots, NEType type, Profile profile) {
  static constexpr char kHex[] = "0123456789abcdef";
  uint64_t hash = Fnv1a(SerializeBody(slots, type, profile));
  std::string id(16, '0');
  for (int i = 15; i >= 0; --i) {
    id[i] = kHex[hash & 0xf];
    hash >>= 4;
  }
  return id;
}

Pattern MakePattern(Slots slots, NEType type, Profile profile, Origin origin,
                    int iteration) {
  Pattern pattern;
  pattern.id = ContentId(slots, type, profile);
  pattern.slots = std::move(slots);
  pattern.ne_type = type;
  pattern.profile = profile;
  pattern.origin = origin;
  pattern.iteration_born = iteration;
  return pattern;
}

std::string SerializePattern(const Pattern &pattern) {
  return SerializeBody(pattern.slots, pattern.ne_type, pattern.profile);
}

Pattern ParsePattern(std::string_view text, Profile profile) {
  auto pieces = SplitTopLevel({text, 0}, ';');
  if (pieces.size() != kWindowSize) {
    Fail("expected 5 slots, found " + std::to_string(pieces.size()),
         pieces.size() > kWindowSize ? pieces[kWindowSize].offset : text.size());
  }
  Slots slots;
  std::optional<NEType> type;
  for (int i = 0; i < kWindowSize; ++i) {
    Piece piece = TrimPiece(pieces[i]);
    if (i == kCenterSlot) {
      size_t at = piece.text.rfind('@');
      if (at == std::string_view::npos) Fail("center slot lacks '@<type>'", piece.offset);
      type = ParseNETypeName(piece.text.substr(at + 1));
      if (!type) {
        Fail("unknown entity type '" + std::string(piece.text.substr(at + 1)) + "'",
             piece.offset + at + 1);
      }
      piece.text = piece.text.substr(0, at);
    }
    slots[i] = ParseSlot(piece, profile);
  }
  return MakePattern(std::move(slots), *type, profile);
}

std::string_view MatchScopeName(MatchScope scope) {
  return scope == MatchScope::kCenter ? "center" : "full-window";
}

std::optional<MatchScope> ParseMatchScopeName(std::string_view name) {
  if (name == "center") return MatchScope::kCenter;
  if (name == "full-window") return MatchScope::kFullWindow;
  return std::nullopt;
}

Span ChunkLayout::UnitOf(size_t sentence, size_t token) const {
  auto it = chunks_.find(sentence);
  if (it != chunks_.end()) {
    for (const Span &chunk : it->second) {
      if (chunk.Contains(token)) return chunk;
      if (chunk.first > token) break;
    }
  }
  return Span{token, token};
}

std::vector<Span> ChunkLayout::Units(size_t sentence, size_t length) const {
  std::vector<Span> units;
  units.reserve(length);
  const std::vector<Span> *chunks = nullptr;
  if (auto it = chunks_.find(sentence); it != chunks_.end()) chunks = &it->second;
  size_t next_chunk = 0;
  for (size_t i = 0; i < length;) {
    if (chunks && next_chunk < chunks->size() && (*chunks)[next_chunk].first == i) {
      units.push_back((*chunks)[next_chunk]);
      i = (*chunks)[next_chunk].last + 1;
      ++next_chunk;
    } else {
      units.push_back(Span{i, i});
      ++i;
    }
  }
  return units;
}

Span ChunkLayout::Merge(size_t sentence, Span span) {
  auto &list = chunks_[sentence];
  std::vector<Span> kept;
  for (const Span &chunk : list) {
    if (chunk.Overlaps(span)) {
      span.first = std::min(span.first, chunk.first);
      span.last = std::max(span.last, chunk.last);
    } else {
      kept.push_back(chunk);
    }
  }
  if (span.size() > 1) {
    kept.insert(std::upper_bound(kept.begin(), kept.end(), span), span);
  }
  list = std::move(kept);
  if (list.empty()) chunks_.erase(sentence);
  return span;
}

std::vector<Extraction> MatchExact(const Pattern &pattern, const Corpus &corpus,
                                   MatchScope scope, const ChunkLayout *chunks,
                                   int iteration) {
  if (scope == MatchScope::kCenter ? pattern.center().mask != MaskedField::kNone
                                   : pattern.HasMask()) {
    throw UnresolvedPatternError("pattern " + pattern.id +
                                 " has masked slots; complete it before matching");
  }
  static const ChunkLayout kNoChunks;
  if (!chunks) chunks = &kNoChunks;

  std::vector<Extraction> out;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    const Sentence &sentence = corpus.sentences[s];
    for (const Span &unit : chunks->Units(s, sentence.size())) {
      bool hit = false;
      for (size_t i = unit.first; i <= unit.last && !hit; ++i) {
        hit = pattern.center().Matches(sentence.tokens[i], pattern.profile);
      }
      if (!hit) continue;
      if (scope == MatchScope::kFullWindow) {
        Window window = SpanWindow(sentence, unit);
        for (int offset : kContextOffsets) {
          if (!pattern.at_offset(offset).Matches(window.at_offset(offset),
                                                 pattern.profile)) {
            hit = false;
            break;
          }
        }
        if (!hit) continue;
      }
      out.push_back(Extraction{sentence.id, s, unit, pattern.ne_type, pattern.id,
                               iteration});
    }
  }
  return out;
}

std::map<NEType, std::vector<SeedPattern>> ExtractSeedPatterns(const Corpus &train,
                                                               size_t k) {
  if (k == 0) throw ConfigError("seeds per class must be at least 1");
  if (!train.HasGold()) {
    throw EmptyTrainingError("training corpus has no gold labels");
  }
  std::map<NEType, std::map<std::string, SeedPattern>> counts;
  for (const Sentence &sentence : train.sentences) {
    for (size_t i = 0; i < sentence.size(); ++i) {
      const auto &gold = sentence.tokens[i].gold;
      if (!gold || gold->size() < 3 || (*gold)[0] != 'B') continue;
      auto type = ParseNETypeBioCode(std::string_view(*gold).substr(2));
      if (!type) continue;
      Window window = ContextWindow(sentence, i);
      Slots slots;
      for (int slot = 0; slot < kWindowSize; ++slot) {
        slots[slot] = SlotValue::FromToken(window[slot], train.profile);
      }
      Pattern pattern = MakePattern(std::move(slots), *type, train.profile);
      auto &entry = counts[*type][SerializePattern(pattern)];
      if (entry.frequency == 0) entry.pattern = std::move(pattern);
      ++entry.frequency;
    }
  }

  std::map<NEType, std::vector<SeedPattern>> result;
  for (NEType type : kAllNETypes) {
    std::vector<std::pair<std::string, SeedPattern>> ranked;
    for (auto &[text, seed] : counts[type]) ranked.emplace_back(text, seed);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
      if (a.second.frequency != b.second.frequency)
        return a.second.frequency > b.second.frequency;
      return a.first < b.first;
    });
    auto &list = result[type];
    for (size_t i = 0; i < ranked.size() && i < k; ++i) {
      list.push_back(std::move(ranked[i].second));
    }
  }
  return result;
}

bool PatternPool::Add(Pattern pattern) {
  if (pattern.profile != profile_) {
    throw ProfileError("pattern " + pattern.id + " has profile " +
                       std::string(ProfileName(pattern.profile)) + ", pool is " +
                       std::string(ProfileName(profile_)));
  }
  if (Contains(pattern.id)) return false;
  index_.emplace(pattern.id, patterns_.size());
  patterns_.push_back(std::move(pattern));
  active_.push_back(true);
  return true;
}

const Pattern *PatternPool::Find(const std::string &id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &patterns_[it->second];
}

bool PatternPool::IsActive(const std::string &id) const {
  auto it = index_.find(id);
  return it != index_.end() && active_[it->second];
}

void PatternPool::Deactivate(const std::string &id) {
  auto it = index_.find(id);
  if (it != index_.end()) active_[it->second] = false;
}

std::vector<const Pattern *> PatternPool::Active() const {
  std::vector<const Pattern *> out;
  for (size_t i = 0; i < patterns_.size(); ++i) {
    if (active_[i]) out.push_back(&patterns_[i]);
  }
  return out;
}

void WritePatternPool(const PatternPool &pool, std::ostream &out) {
  out << kProfileHeader << ProfileName(pool.profile()) << '\n';
  for (const Pattern &pattern : pool.patterns()) {
    out << NETypeName(pattern.ne_type) << '\t' << OriginName(pattern.origin) << '\t'
        << pattern.iteration_born << '\t' << SerializePattern(pattern) << '\n';
  }
}

PatternPool ReadPatternPool(std::istream &in, std::optional<Profile> profile) {
  std::string line;
  size_t line_no = 0;
  std::optional<PatternPool> pool;
  auto at_line = [&](const std::string &message) {
    return "pattern pool line " + std::to_string(line_no) + ": " + message;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind(kProfileHeader, 0) == 0) {
      auto declared = ParseProfileName(std::string_view(line).substr(kProfileHeader.size()));
      if (!declared) throw ParseError(at_line("unknown profile"), line_no);
      if (profile && *profile != *declared) {
        throw ProfileError(at_line("file declares " + std::string(ProfileName(*declared)) +
                                   " but " + std::string(ProfileName(*profile)) +
                                   " was requested"));
      }
      if (pool && pool->size() > 0) throw ParseError(at_line("late profile header"), line_no);
      profile = declared;
      pool.emplace(*declared);
      continue;
    }
    if (line.front() == '#') continue;
    if (!pool) pool.emplace(profile.value_or(Profile::kTwoTuple));

    std::string_view rest = line;
    std::array<std::string_view, 3> head;
    for (auto &field : head) {
      size_t tab = rest.find('\t');
      if (tab == std::string_view::npos) {
        throw ParseError(at_line("expected <type>\\t<origin>\\t<iteration>\\t<pattern>"),
                         line_no);
      }
      field = rest.substr(0, tab);
      rest.remove_prefix(tab + 1);
    }
    auto type = ParseNETypeName(head[0]);
    auto origin = ParseOriginName(head[1]);
    int iteration = 0;
    auto [ptr, ec] = std::from_chars(head[2].data(), head[2].data() + head[2].size(), iteration);
    if (!type) throw ParseError(at_line("unknown entity type"), line_no);
    if (!origin) throw ParseError(at_line("unknown origin"), line_no);
    if (ec != std::errc() || ptr != head[2].data() + head[2].size() || iteration < 0) {
      throw ParseError(at_line("bad iteration"), line_no);
    }
    Pattern pattern;
    try {
      pattern = ParsePattern(rest, pool->profile());
    } catch (const ParseError &e) {
      throw ParseError(at_line(e.what()), line_no);
    }
    if (pattern.ne_type != *type) {
      throw ParseError(at_line("type column disagrees with pattern"), line_no);
    }
    pattern.origin = *origin;
    pattern.iteration_born = iteration;
    pool->Add(std::move(pattern));
  }
  if (!pool) pool.emplace(profile.value_or(Profile::kTwoTuple));
  return std::move(*pool);
}

void SavePatternPool(const PatternPool &pool, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write pattern pool " + path);
  WritePatternPool(pool, out);
  if (!out) throw IoError("write failed for " + path);
}

PatternPool LoadPatternPool(const std::string &path, std::optional<Profile> profile) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read pattern pool " + path);
  return ReadPatternPool(in, profile);
}

}  // namespace nerboot
