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

#ifndef NERBOOT_TYPES_H_
#define NERBOOT_TYPES_H_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace nerboot {

// The seven MUC-7 entity classes.
enum class NEType {
  kPerson,
  kLocation,
  kOrganization,
  kDate,
  kTime,
  kMoney,
  kPercent,
};

inline constexpr std::array<NEType, 7> kAllNETypes = {
    NEType::kPerson, NEType::kLocation, NEType::kOrganization, NEType::kDate,
    NEType::kTime,   NEType::kMoney,    NEType::kPercent,
};

// Long name used in pattern notation and reports ("person").
std::string_view NETypeName(NEType type);
std::optional<NEType> ParseNETypeName(std::string_view name);

// Short name used in BIO tags ("PER" in "B-PER").
std::string_view NETypeBioCode(NEType type);
std::optional<NEType> ParseNETypeBioCode(std::string_view code);

// Whether slots carry a morphological suffix in addition to POS and SC.
enum class Profile { kTwoTuple, kThreeTuple };

std::string_view ProfileName(Profile profile);
std::optional<Profile> ParseProfileName(std::string_view name);

// Inclusive token range within one sentence.
struct Span {
  size_t first = 0;
  size_t last = 0;

  size_t size() const { return last - first + 1; }
  bool Contains(size_t token) const { return first <= token && token <= last; }
  bool Contains(const Span &other) const {
    return first <= other.first && other.last <= last;
  }
  bool Overlaps(const Span &other) const {
    return first <= other.last && other.first <= last;
  }

  auto operator<=>(const Span &) const = default;
};

// Context offsets relative to the window center, in slot order.
inline constexpr std::array<int, 4> kContextOffsets = {-2, -1, 1, 2};
inline constexpr int kWindowSize = 5;
inline constexpr int kCenterSlot = 2;

inline constexpr int SlotIndex(int offset) { return offset + kCenterSlot; }

}  // namespace nerboot

#endif  // NERBOOT_TYPES_H_
