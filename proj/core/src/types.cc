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

#include "nerboot/types.h"

namespace nerboot {
namespace {

struct NETypeNames {
  NEType type;
  std::string_view name;
  std::string_view bio;
};

constexpr std::array<NETypeNames, 7> kNames = {{
    {NEType::kPerson, "person", "PER"},
    {NEType::kLocation, "location", "LOC"},
    {NEType::kOrganization, "organization", "ORG"},
    {NEType::kDate, "date", "DATE"},
    {NEType::kTime, "time", "TIME"},
    {NEType::kMoney, "money", "MONEY"},
    {NEType::kPercent, "percent", "PERCENT"},
}};

}  // namespace

std::string_view NETypeName(NEType type) {
  return kNames[static_cast<size_t>(type)].name;
}

std::optional<NEType> ParseNETypeName(std::string_view name) {
  for (const auto &entry : kNames) {
    if (entry.name == name) return entry.type;
  }
  return std::nullopt;
}

std::string_view NETypeBioCode(NEType type) {
  return kNames[static_cast<size_t>(type)].bio;
}

std::optional<NEType> ParseNETypeBioCode(std::string_view code) {
  for (const auto &entry : kNames) {
    if (entry.bio == code) return entry.type;
  }
  return std::nullopt;
}

std::string_view ProfileName(Profile profile) {
  return profile == Profile::kTwoTuple ? "two-tuple" : "three-tuple";
}

std::optional<Profile> ParseProfileName(std::string_view name) {
  if (name == "two-tuple") return Profile::kTwoTuple;
  if (name == "three-tuple") return Profile::kThreeTuple;
  return std::nullopt;
}

}  // namespace nerboot
