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

#include "nerboot/synthgen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

#include "nerboot/errors.h"

namespace nerboot {
namespace {

using Json = nlohmann::json;

// mt19937_64 with a bounded draw of our own, so output does not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be positive.
  size_t Below(size_t n) {
    const uint64_t bound = static_cast<uint64_t>(n);
    const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                           std::numeric_limits<uint64_t>::max() % bound;
    uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return static_cast<size_t>(draw % bound);
  }

  size_t Between(size_t lo, size_t hi) { return lo + Below(hi - lo + 1); }

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[Below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct PlannedToken {
  Token token;
  bool entity_start = false;
  bool entity_inside = false;
  NEType type = NEType::kPerson;
};

using PlannedSentence = std::vector<PlannedToken>;

using TupleKey = std::tuple<std::string, std::optional<std::string>, std::vector<std::string>>;

std::string Upper(std::string text) {
  for (char &c : text) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return text;
}

std::string Lower(std::string text) {
  for (char &c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return text;
}

TupleKey KeyOf(const GenSlot &slot) { return {Upper(slot.pos), slot.ms, slot.sc}; }

[[noreturn]] void Fail(const std::string &message) { throw GenerationError(message); }

void CheckText(const std::string &text, const std::string &what) {
  if (text.empty()) Fail(what + " is empty");
  if (text.find_first_of("\t\n\r") != std::string::npos) {
    Fail(what + " '" + text + "' contains a tab or line break");
  }
}

// Largest-remainder apportionment of `total` over `weights`.
std::vector<size_t> Apportion(const std::vector<double> &weights, size_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<size_t> counts(weights.size(), 0);
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    const double quota = weights[i] / sum * static_cast<double>(total);
    counts[i] = static_cast<size_t>(std::floor(quota));
    assigned += counts[i];
    remainders.push_back({quota - std::floor(quota), i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (size_t k = 0; assigned < total; ++k, ++assigned) ++counts[remainders[k % weights.size()].second];
  return counts;
}

class Builder {
 public:
  Builder(const GenSpec &spec, Rng &rng) : spec_(spec), rng_(rng) {
    for (const auto &[pos, surfaces] : spec.vocab) {
      for (const std::string &surface : surfaces) distractors_.push_back({Upper(pos), surface});
    }
  }

  Token Distractor() {
    if (distractors_.empty()) Fail("vocabulary too small: no distractor surfaces to draw from");
    const auto &[pos, surface] = distractors_[rng_.Below(distractors_.size())];
    Token token;
    token.surface = surface;
    token.pos = pos;
    token.sc = spec_.distractor_sc;
    token.gold = "O";
    return token;
  }

  Token FromSlot(const GenSlot &slot) {
    const std::vector<std::string> *surfaces = &slot.surfaces;
    std::vector<std::string> fallback;
    if (surfaces->empty()) {
      auto it = spec_.vocab.find(slot.pos);
      if (it == spec_.vocab.end()) it = spec_.vocab.find(Upper(slot.pos));
      if (it != spec_.vocab.end() && !it->second.empty()) {
        surfaces = &it->second;
      } else {
        fallback.push_back(Lower(slot.pos));
        surfaces = &fallback;
      }
    }
    Token token;
    token.surface = (*surfaces)[rng_.Below(surfaces->size())];
    token.pos = Upper(slot.pos);
    token.ms = slot.ms;
    token.sc = slot.sc;
    token.gold = "O";
    return token;
  }

  void Pad(PlannedSentence &sentence) {
    const size_t n = rng_.Between(spec_.min_padding, spec_.max_padding);
    for (size_t i = 0; i < n; ++i) sentence.push_back({Distractor()});
  }

  void AddContextSide(PlannedSentence &sentence, const std::vector<GenSlot> &side) {
    for (const GenSlot &slot : side) {
      PlannedToken planned{FromSlot(slot)};
      if (slot.ne_type) {
        planned.entity_start = true;
        planned.type = *slot.ne_type;
      }
      sentence.push_back(std::move(planned));
    }
  }

  // Context indices for `occurrences` plants, realized exactly and shuffled.
  std::vector<size_t> ContextSequence(const std::vector<GenContext> &contexts,
                                      size_t occurrences) {
    std::vector<size_t> sequence;
    if (contexts.empty()) return std::vector<size_t>(occurrences, 0);
    std::vector<double> weights;
    for (const GenContext &context : contexts) weights.push_back(context.weight);
    std::vector<size_t> counts = Apportion(weights, occurrences);
    for (size_t i = 0; i < counts.size(); ++i) sequence.insert(sequence.end(), counts[i], i);
    rng_.Shuffle(sequence);
    return sequence;
  }

  PlannedSentence Plant(const std::vector<GenContext> &contexts, size_t context,
                        const std::vector<PlannedToken> &entity) {
    static const GenContext kEmpty;
    const GenContext &chosen = contexts.empty() ? kEmpty : contexts[context];
    PlannedSentence sentence;
    Pad(sentence);
    AddContextSide(sentence, chosen.left);
    sentence.insert(sentence.end(), entity.begin(), entity.end());
    AddContextSide(sentence, chosen.right);
    Pad(sentence);
    return sentence;
  }

  PlannedSentence Filler() {
    PlannedSentence sentence;
    const size_t n = rng_.Between(spec_.min_length, spec_.max_length);
    for (size_t i = 0; i < n; ++i) sentence.push_back({Distractor()});
    return sentence;
  }

 private:
  const GenSpec &spec_;
  Rng &rng_;
  std::vector<std::pair<std::string, std::string>> distractors_;
};

void ValidateSlot(const GenSlot &slot, const GenSpec &spec, const std::string &where) {
  CheckText(slot.pos, where + " POS");
  if (slot.sc.empty()) Fail(where + " has an empty SC list");
  for (const std::string &sc : slot.sc) CheckText(sc, where + " SC");
  if (slot.ms) {
    if (spec.profile == Profile::kTwoTuple) Fail(where + " has an MS in a two-tuple spec");
    CheckText(*slot.ms, where + " MS");
  }
  for (const std::string &surface : slot.surfaces) CheckText(surface, where + " surface");
}

void ValidateSpec(const GenSpec &spec) {
  if (spec.min_length < 1 || spec.min_length > spec.max_length) {
    Fail("sentence length range must satisfy 1 <= min <= max");
  }
  if (spec.min_padding > spec.max_padding) Fail("padding range must satisfy min <= max");
  if (spec.distractor_sc.empty()) Fail("distractor SC list is empty");
  for (const auto &[pos, surfaces] : spec.vocab) {
    CheckText(pos, "vocabulary POS");
    for (const std::string &surface : surfaces) CheckText(surface, "vocabulary surface");
  }

  std::set<std::pair<NEType, TupleKey>> centers;
  std::set<TupleKey> all_centers;
  for (size_t p = 0; p < spec.planted.size(); ++p) {
    const GenPlant &plant = spec.planted[p];
    const std::string where = "planted[" + std::to_string(p) + "]";
    if (plant.occurrences < 1) Fail(where + " needs at least one occurrence");
    if (plant.center.surfaces.empty()) Fail(where + " center has no surfaces");
    ValidateSlot(plant.center, spec, where + " center");
    if (!centers.insert({plant.ne_type, KeyOf(plant.center)}).second) {
      Fail(where + " repeats a center tuple already planted for " +
           std::string(NETypeName(plant.ne_type)));
    }
    all_centers.insert(KeyOf(plant.center));
    for (const GenContext &context : plant.contexts) {
      if (!(context.weight > 0.0) || !std::isfinite(context.weight)) {
        Fail(where + " has a non-positive context weight");
      }
      for (const GenSlot &slot : context.left) ValidateSlot(slot, spec, where + " context");
      for (const GenSlot &slot : context.right) ValidateSlot(slot, spec, where + " context");
    }
  }

  for (const TupleKey &key : all_centers) {
    const auto &[pos, ms, sc] = key;
    for (const auto &[vocab_pos, surfaces] : spec.vocab) {
      if (Upper(vocab_pos) == pos && !ms && sc == spec.distractor_sc && !surfaces.empty()) {
        Fail("distractor vocabulary overlaps the planted center tuple " + pos);
      }
    }
  }
  auto check_context = [&](const std::vector<GenContext> &contexts) {
    for (const GenContext &context : contexts) {
      for (const auto *side : {&context.left, &context.right}) {
        for (const GenSlot &slot : *side) {
          if (!slot.ne_type && all_centers.count(KeyOf(slot))) {
            Fail("unlabelled context token " + Upper(slot.pos) +
                 " collides with a planted center tuple");
          }
        }
      }
    }
  };
  for (const GenPlant &plant : spec.planted) check_context(plant.contexts);

  if (spec.chunk_plants > 0) {
    if (!spec.chunk) Fail("chunk_plants > 0 needs a chunk description");
    const GenChunk &chunk = *spec.chunk;
    ValidateSlot(chunk.first, spec, "chunk first");
    ValidateSlot(chunk.second, spec, "chunk second");
    if (chunk.first.sc != chunk.second.sc) Fail("chunk tokens must share one SC list");
    for (const GenContext &context : chunk.contexts) {
      if (!(context.weight > 0.0) || !std::isfinite(context.weight)) {
        Fail("chunk has a non-positive context weight");
      }
    }
    check_context(chunk.contexts);
  }
}

// --- JSON spec parsing ------------------------------------------------------

NEType TypeField(const Json &json, const std::string &where) {
  const std::string name = json.get<std::string>();
  auto type = ParseNETypeName(name);
  if (!type) type = ParseNETypeBioCode(name);
  if (!type) Fail(where + ": unknown entity type '" + name + "'");
  return *type;
}

std::vector<std::string> StringList(const Json &json) {
  if (json.is_string()) return {json.get<std::string>()};
  return json.get<std::vector<std::string>>();
}

GenSlot SlotField(const Json &json, const std::string &where) {
  if (!json.is_object()) Fail(where + ": slot must be an object");
  GenSlot slot;
  slot.pos = json.at("pos").get<std::string>();
  if (json.contains("sc")) slot.sc = StringList(json["sc"]);
  if (json.contains("ms") && !json["ms"].is_null()) slot.ms = json["ms"].get<std::string>();
  if (json.contains("surfaces")) slot.surfaces = StringList(json["surfaces"]);
  if (json.contains("surface")) slot.surfaces.push_back(json["surface"].get<std::string>());
  if (json.contains("ne_type") && !json["ne_type"].is_null()) {
    slot.ne_type = TypeField(json["ne_type"], where);
  }
  return slot;
}

std::vector<GenContext> ContextsField(const Json &json, const std::string &where) {
  std::vector<GenContext> contexts;
  if (!json.contains("contexts")) return contexts;
  for (const Json &entry : json["contexts"]) {
    GenContext context;
    context.weight = entry.value("weight", 1.0);
    for (const Json &slot : entry.value("left", Json::array())) {
      context.left.push_back(SlotField(slot, where));
    }
    for (const Json &slot : entry.value("right", Json::array())) {
      context.right.push_back(SlotField(slot, where));
    }
    contexts.push_back(std::move(context));
  }
  return contexts;
}

std::pair<size_t, size_t> RangeField(const Json &json, const char *key,
                                     std::pair<size_t, size_t> fallback) {
  if (!json.contains(key)) return fallback;
  const Json &value = json[key];
  if (value.is_number()) return {value.get<size_t>(), value.get<size_t>()};
  if (value.size() != 2) Fail(std::string(key) + " must be a number or a [min, max] pair");
  return {value[0].get<size_t>(), value[1].get<size_t>()};
}

}  // namespace

GenResult Generate(const GenSpec &spec) {
  ValidateSpec(spec);
  Rng rng(spec.rng_seed);
  Builder builder(spec, rng);

  std::vector<PlannedSentence> planned;
  for (const GenPlant &plant : spec.planted) {
    for (size_t context : builder.ContextSequence(plant.contexts, plant.occurrences)) {
      PlannedToken center{builder.FromSlot(plant.center), true, false, plant.ne_type};
      planned.push_back(builder.Plant(plant.contexts, context, {center}));
    }
  }
  if (spec.chunk_plants > 0) {
    const GenChunk &chunk = *spec.chunk;
    for (size_t context : builder.ContextSequence(chunk.contexts, spec.chunk_plants)) {
      PlannedToken first{builder.FromSlot(chunk.first), true, false, chunk.ne_type};
      PlannedToken second{builder.FromSlot(chunk.second), false, true, chunk.ne_type};
      planned.push_back(builder.Plant(chunk.contexts, context, {first, second}));
    }
  }
  if (planned.size() > spec.sentences) {
    Fail("spec plants " + std::to_string(planned.size()) + " sentences but allows only " +
         std::to_string(spec.sentences));
  }
  while (planned.size() < spec.sentences) planned.push_back(builder.Filler());
  rng.Shuffle(planned);

  GenResult result;
  result.corpus.profile = spec.profile;
  for (size_t s = 0; s < planned.size(); ++s) {
    Sentence sentence;
    sentence.id = "synth:" + std::to_string(s + 1);
    std::optional<ManifestEntry> open;
    auto close = [&] {
      if (open) result.manifest.push_back(*open);
      open.reset();
    };
    for (size_t i = 0; i < planned[s].size(); ++i) {
      PlannedToken &token = planned[s][i];
      const std::string code(NETypeBioCode(token.type));
      if (token.entity_start) {
        close();
        token.token.gold = "B-" + code;
        open = ManifestEntry{sentence.id, s, Span{i, i}, token.type};
      } else if (token.entity_inside && open) {
        token.token.gold = "I-" + code;
        open->span.last = i;
      } else {
        close();
      }
      sentence.tokens.push_back(Normalize(std::move(token.token)));
    }
    close();
    result.corpus.sentences.push_back(std::move(sentence));
  }
  return result;
}

GenSpec ParseGenSpec(std::istream &in) {
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("generation spec: ") + e.what(), e.byte);
  }
  GenSpec spec;
  try {
    if (!json.is_object()) Fail("generation spec must be a JSON object");
    static const std::set<std::string> kKnown = {
        "rng_seed", "sentences", "profile", "vocab", "distractor_sc", "sentence_length",
        "padding", "planted", "chunk_plants", "chunk"};
    for (const auto &[key, value] : json.items()) {
      if (!kKnown.count(key)) Fail("generation spec: unknown key '" + key + "'");
    }
    spec.rng_seed = json.value("rng_seed", uint64_t{0});
    spec.sentences = json.value("sentences", size_t{0});
    if (json.contains("profile")) {
      auto profile = ParseProfileName(json["profile"].get<std::string>());
      if (!profile) Fail("generation spec: unknown profile");
      spec.profile = *profile;
    }
    if (json.contains("vocab")) {
      for (const auto &[pos, surfaces] : json["vocab"].items()) {
        spec.vocab[pos] = StringList(surfaces);
      }
    }
    if (json.contains("distractor_sc")) spec.distractor_sc = StringList(json["distractor_sc"]);
    std::tie(spec.min_length, spec.max_length) =
        RangeField(json, "sentence_length", {spec.min_length, spec.max_length});
    std::tie(spec.min_padding, spec.max_padding) =
        RangeField(json, "padding", {spec.min_padding, spec.max_padding});
    if (json.contains("planted")) {
      size_t index = 0;
      for (const Json &entry : json["planted"]) {
        const std::string where = "planted[" + std::to_string(index++) + "]";
        GenPlant plant;
        plant.ne_type = TypeField(entry.at("ne_type"), where);
        plant.center = SlotField(entry.at("center"), where + " center");
        plant.contexts = ContextsField(entry, where);
        plant.occurrences = entry.value("occurrences", size_t{1});
        spec.planted.push_back(std::move(plant));
      }
    }
    spec.chunk_plants = json.value("chunk_plants", size_t{0});
    if (json.contains("chunk")) {
      const Json &entry = json["chunk"];
      GenChunk chunk;
      chunk.ne_type = TypeField(entry.at("ne_type"), "chunk");
      chunk.first = SlotField(entry.at("first"), "chunk first");
      chunk.second = SlotField(entry.at("second"), "chunk second");
      chunk.contexts = ContextsField(entry, "chunk");
      spec.chunk = std::move(chunk);
    }
  } catch (const nlohmann::json::exception &e) {
    throw GenerationError(std::string("generation spec: ") + e.what());
  }
  return spec;
}

GenSpec LoadGenSpec(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open generation spec '" + path + "'");
  return ParseGenSpec(in);
}

void WriteManifest(const std::vector<ManifestEntry> &manifest, std::ostream &out) {
  for (const ManifestEntry &entry : manifest) {
    out << entry.sentence_id << '\t' << entry.span.first + 1 << '-' << entry.span.last + 1
        << '\t' << NETypeName(entry.ne_type) << '\n';
  }
  if (!out) throw IoError("failed to write manifest");
}

std::vector<ManifestEntry> ReadManifest(std::istream &in, const Corpus &corpus) {
  std::unordered_map<std::string, size_t> index;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) index[corpus.sentences[s].id] = s;
  std::vector<ManifestEntry> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string id, range, type;
    if (!std::getline(fields, id, '\t') || !std::getline(fields, range, '\t') ||
        !std::getline(fields, type)) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": expected 3 columns",
                       line_no);
    }
    auto it = index.find(id);
    auto parsed = ParseNETypeName(type);
    const size_t dash = range.find('-');
    if (it == index.end() || !parsed || dash == std::string::npos) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": bad entry", line_no);
    }
    const size_t first = std::stoul(range.substr(0, dash));
    const size_t last = std::stoul(range.substr(dash + 1));
    if (first < 1 || last < first) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": bad span", line_no);
    }
    out.push_back({id, it->second, Span{first - 1, last - 1}, *parsed});
  }
  return out;
}

}  // namespace nerboot
