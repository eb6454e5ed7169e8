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

// Five-slot context patterns, seed extraction, and exact matching.
//
// Pattern notation (see docs/pattern-notation.md):
//
//   VBG,icl>person; IN,aoj>thing; NNP,iof>person@person; IN,aoj>thing; PRP,icl>female person
//
// Slots are separated by "; ". A two-tuple slot is "POS,SC[,SC...]", a
// three-tuple slot is "POS,MS,SC[,SC...]" with MS "None" when absent. The
// center slot carries "@<entity type>". A masked field is written "*".

#ifndef NERBOOT_PATTERN_H_
#define NERBOOT_PATTERN_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nerboot/corpus.h"
#include "nerboot/types.h"

namespace nerboot {

inline constexpr std::string_view kMaskMarker = "*";

enum class MaskedField { kNone, kPos, kMs, kSc };

// Tuple values of one pattern slot. At most one field is masked.
struct SlotValue {
  std::string pos;
  std::optional<std::string> ms;
  std::vector<std::string> sc;
  MaskedField mask = MaskedField::kNone;

  static SlotValue FromToken(const Token &token, Profile profile);

  // Tuple equality against a token. Throws UnresolvedPatternError if masked.
  bool Matches(const Token &token, Profile profile) const;

  bool operator==(const SlotValue &) const = default;
};

std::string SerializeSlot(const SlotValue &slot, Profile profile);

enum class Origin { kSeed, kPosReplacement, kWindowShift, kChunk };

std::string_view OriginName(Origin origin);
std::optional<Origin> ParseOriginName(std::string_view name);

using Slots = std::array<SlotValue, kWindowSize>;

struct Pattern {
  std::string id;
  Slots slots;
  NEType ne_type = NEType::kPerson;
  Profile profile = Profile::kTwoTuple;
  Origin origin = Origin::kSeed;
  int iteration_born = 0;

  const SlotValue &center() const { return slots[kCenterSlot]; }
  const SlotValue &at_offset(int offset) const { return slots[SlotIndex(offset)]; }
  bool HasMask() const;
};

// Builds a pattern and stamps its content id.
Pattern MakePattern(Slots slots, NEType type, Profile profile,
                    Origin origin = Origin::kSeed, int iteration = 0);

// Deterministic content hash over (slots, type): 16 lowercase hex digits.
std::string ContentId(const Slots &slots, NEType type, Profile profile);

std::string SerializePattern(const Pattern &pattern);
// Inverse of SerializePattern. Origin and iteration are not part of the
// notation and come back as seed/0. Throws ParseError with the character
// offset of the offending slot.
Pattern ParsePattern(std::string_view text, Profile profile);

enum class MatchScope { kCenter, kFullWindow };

std::string_view MatchScopeName(MatchScope scope);
std::optional<MatchScope> ParseMatchScopeName(std::string_view name);

// One match of a pattern against a corpus position.
struct Extraction {
  std::string sentence_id;
  size_t sentence = 0;  // index into Corpus::sentences
  Span span;
  NEType ne_type = NEType::kPerson;
  std::string pattern_id;
  int iteration = 0;

  bool operator==(const Extraction &) const = default;
};

// Multi-token units formed by chunking. Tokens outside any chunk are
// single-token units.
class ChunkLayout {
 public:
  // The unit containing token `token` of sentence `sentence`.
  Span UnitOf(size_t sentence, size_t token) const;

  // All units of a sentence of the given length, in order.
  std::vector<Span> Units(size_t sentence, size_t length) const;

  // Joins `span` with every chunk it overlaps; returns the merged unit.
  Span Merge(size_t sentence, Span span);

  const std::map<size_t, std::vector<Span>> &chunks() const { return chunks_; }
  bool empty() const { return chunks_.empty(); }

  bool operator==(const ChunkLayout &) const = default;

 private:
  std::map<size_t, std::vector<Span>> chunks_;
};

// Matches `pattern` against every unit of `corpus`. Under kCenter a unit
// matches if any of its tokens equals the center slot; kFullWindow also
// requires the four context slots to equal the unit's context window.
// Output is in corpus order.
std::vector<Extraction> MatchExact(const Pattern &pattern, const Corpus &corpus,
                                   MatchScope scope = MatchScope::kCenter,
                                   const ChunkLayout *chunks = nullptr,
                                   int iteration = 0);

struct SeedPattern {
  Pattern pattern;
  size_t frequency = 0;
};

// For each entity type, the `k` most frequent windows centered on a B-X
// token, by descending frequency then ascending notation. Every type is
// present in the result, possibly with an empty list.
std::map<NEType, std::vector<SeedPattern>> ExtractSeedPatterns(
    const Corpus &train, size_t k);

// Admission-ordered pattern collection with an active subset.
class PatternPool {
 public:
  explicit PatternPool(Profile profile = Profile::kTwoTuple) : profile_(profile) {}

  Profile profile() const { return profile_; }

  // Adds `pattern` unless its id is present. Returns whether it was added.
  bool Add(Pattern pattern);
  bool Contains(const std::string &id) const { return index_.count(id) > 0; }
  const Pattern *Find(const std::string &id) const;

  bool IsActive(const std::string &id) const;
  void Deactivate(const std::string &id);

  const std::vector<Pattern> &patterns() const { return patterns_; }
  std::vector<const Pattern *> Active() const;
  size_t size() const { return patterns_.size(); }

 private:
  Profile profile_;
  std::vector<Pattern> patterns_;
  std::vector<bool> active_;
  std::unordered_map<std::string, size_t> index_;
};

// Pattern pool file: a "# profile: <name>" header, then one line per pattern
// "<type>\t<origin>\t<iteration>\t<notation>".
void WritePatternPool(const PatternPool &pool, std::ostream &out);
// `profile` is used when the file has no header; a conflicting header is a
// ProfileError.
PatternPool ReadPatternPool(std::istream &in, std::optional<Profile> profile);
void SavePatternPool(const PatternPool &pool, const std::string &path);
PatternPool LoadPatternPool(const std::string &path,
                            std::optional<Profile> profile);

}  // namespace nerboot

#endif  // NERBOOT_PATTERN_H_
