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

#include "cli.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "nerboot/bootstrap.h"
#include "nerboot/corpus.h"
#include "nerboot/errors.h"
#include "nerboot/eval.h"
#include "nerboot/pattern.h"
#include "nerboot/synthgen.h"

namespace nerboot::cli {
namespace {

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &text) {
  T value{};
  const char *first = text.data();
  const char *last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(key + ": '" + text + "' is not a valid number");
  }
  return value;
}

// Effective settings with the source of each value.
struct Settings {
  std::map<std::string, std::string> values;
  std::map<std::string, std::string> sources;

  const std::string &at(const std::string &key) const { return values.at(key); }
};

BootstrapConfig ToBootstrapConfig(const Settings &settings) {
  BootstrapConfig config;
  config.seeds_per_class = ParseNumber<size_t>("seeds-per-class", settings.at("seeds-per-class"));
  config.max_iterations = ParseNumber<int>("max-iterations", settings.at("max-iterations"));
  config.chunk_threshold = ParseNumber<double>("chunk-threshold", settings.at("chunk-threshold"));
  const std::string &base = settings.at("log-base");
  config.log_base = base == "e" ? std::exp(1.0) : ParseNumber<double>("log-base", base);
  auto scope = ParseMatchScopeName(settings.at("scope"));
  if (!scope) throw ConfigError("scope: expected center or full-window");
  config.scope = *scope;
  config.methods = ParseMethodSet(settings.at("methods"));
  auto nj = ParseNjSemanticsName(settings.at("nj"));
  if (!nj) throw ConfigError("nj: expected basilisk or literal");
  config.nj = *nj;
  config.threads = ParseNumber<int>("threads", settings.at("threads"));
  config.Validate();
  return config;
}

Profile ProfileSetting(const Settings &settings) {
  auto profile = ParseProfileName(settings.at("profile"));
  if (!profile) throw ConfigError("profile: expected two-tuple or three-tuple");
  return *profile;
}

// The profile only when the user chose one; otherwise files decide.
std::optional<Profile> ExplicitProfile(const Settings &settings) {
  if (settings.sources.at("profile") == "default") return std::nullopt;
  return ProfileSetting(settings);
}

template <typename Fn>
void WriteFile(const std::string &path, Fn &&write) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// Keeps the first `per_class` patterns of each type, in file order.
PatternPool LimitPerClass(const PatternPool &pool, size_t per_class) {
  PatternPool limited(pool.profile());
  std::map<NEType, size_t> taken;
  for (const Pattern &pattern : pool.patterns()) {
    if (taken[pattern.ne_type]++ < per_class) limited.Add(pattern);
  }
  return limited;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>> &ConfigDefaults() {
  static const std::vector<std::pair<std::string, std::string>> kDefaults = {
      {"profile", "two-tuple"},
      {"scope", "center"},
      {"chunk-threshold", "0.6"},
      {"log-base", "2"},
      {"max-iterations", "50"},
      {"seeds-per-class", "2"},
      {"nj", "basilisk"},
      {"methods", "pos-replacement,window-shift,chunking"},
      {"threads", "1"},
  };
  return kDefaults;
}

std::map<std::string, std::string> ParseConfigFile(std::istream &in,
                                                   const std::string &source) {
  std::map<std::string, std::string> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    const auto &defaults = ConfigDefaults();
    if (std::none_of(defaults.begin(), defaults.end(),
                     [&](const auto &entry) { return entry.first == key; })) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    out[key] = value;
  }
  return out;
}

int Main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bootstrapped named-entity recognition from seed context patterns.", "nerboot"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option *> flag_options;
  for (const auto &[key, fallback] : ConfigDefaults()) {
    flag_values[key];
    flag_options[key] = app.add_option("--" + key, flag_values[key],
                                       "default: " + fallback);
  }
  flag_options["profile"]->check(CLI::IsMember({"two-tuple", "three-tuple"}));
  flag_options["scope"]->check(CLI::IsMember({"center", "full-window"}));
  flag_options["nj"]->check(CLI::IsMember({"basilisk", "literal"}));
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; flags override it")
      ->check(CLI::ExistingFile);
  bool show_config = false;
  app.add_flag("--show-config", show_config, "print the effective configuration and exit");

  // seed
  CLI::App *seed = app.add_subcommand("seed", "extract seed patterns from a labelled corpus");
  std::string seed_train, seed_out;
  std::optional<size_t> seed_k;
  seed->add_option("--train", seed_train, "gold-labelled training corpus")->required();
  seed->add_option("--out", seed_out, "pattern pool file to write")->required();
  seed->add_option("-k", seed_k, "patterns per type (default: --seeds-per-class)");

  // run
  CLI::App *run = app.add_subcommand("run", "bootstrap patterns over a test corpus");
  std::string run_seeds, run_test, run_labels, run_pool, run_trace, run_induction, run_scores;
  run->add_option("--seeds", run_seeds, "seed pattern pool file")->required();
  run->add_option("--test", run_test, "test corpus")->required();
  run->add_option("--out-labels", run_labels, "labelled corpus to write")->required();
  run->add_option("--out-pool", run_pool, "final pattern pool to write")->required();
  run->add_option("--out-trace", run_trace, "iteration trace (JSON lines)")->required();
  run->add_option("--out-induction", run_induction, "induction log (JSON lines)");
  run->add_option("--out-scores", run_scores, "per-iteration pattern scores (JSON lines)");

  // eval
  CLI::App *eval = app.add_subcommand("eval", "score predictions against gold labels");
  std::string eval_pred, eval_gold, eval_mode = "exact-span", eval_prefix, eval_trace;
  eval->add_option("--pred", eval_pred, "labelled corpus written by run")->required();
  eval->add_option("--gold", eval_gold, "gold corpus")->required();
  eval->add_option("--mode", eval_mode, "exact-span or center-token")
      ->check(CLI::IsMember({"exact-span", "center-token"}));
  eval->add_option("--report-prefix", eval_prefix,
                   "write <prefix>.metrics.{tsv,json} and <prefix>.patterns.{tsv,json}");
  eval->add_option("--trace", eval_trace, "iteration trace for the new-pattern table");

  // gen
  CLI::App *gen = app.add_subcommand("gen", "generate a synthetic corpus from a JSON spec");
  std::string gen_spec, gen_out, gen_manifest;
  gen->add_option("--spec", gen_spec, "generation spec (JSON)")->required();
  gen->add_option("--out", gen_out, "corpus file to write")->required();
  gen->add_option("--manifest", gen_manifest, "manifest of planted spans to write");

  // inspect
  CLI::App *inspect = app.add_subcommand("inspect", "print the patterns of a pool file");
  std::string inspect_pool;
  inspect->add_option("--pool", inspect_pool, "pattern pool file")->required();

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(),
                                      args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Settings settings;
  try {
    for (const auto &[key, fallback] : ConfigDefaults()) {
      settings.values[key] = fallback;
      settings.sources[key] = "default";
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      for (const auto &[key, value] : ParseConfigFile(in, config_path)) {
        settings.values[key] = value;
        settings.sources[key] = "file";
      }
    }
    for (const auto &[key, option] : flag_options) {
      if (option->count() > 0) {
        settings.values[key] = flag_values[key];
        settings.sources[key] = "flag";
      }
    }
    ToBootstrapConfig(settings);
    ProfileSetting(settings);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (show_config) {
    for (const auto &[key, fallback] : ConfigDefaults()) {
      out << key << " = " << settings.values[key] << "  # " << settings.sources[key]
          << ", default " << fallback << '\n';
    }
    return kExitOk;
  }

  try {
    const BootstrapConfig config = ToBootstrapConfig(settings);
    if (seed->parsed()) {
      const Profile profile = ProfileSetting(settings);
      Corpus train = LoadCorpus(seed_train, profile);
      const size_t k = seed_k.value_or(config.seeds_per_class);
      auto seeds = ExtractSeedPatterns(train, k);
      PatternPool pool = SeedPool(seeds, profile, k);
      WriteFile(seed_out, [&](std::ostream &o) { WritePatternPool(pool, o); });
      for (NEType type : kAllNETypes) {
        out << NETypeName(type) << '\t' << std::min(seeds[type].size(), k) << '\n';
      }
    } else if (run->parsed()) {
      PatternPool seeds = LimitPerClass(LoadPatternPool(run_seeds, ExplicitProfile(settings)),
                                        config.seeds_per_class);
      Corpus test = LoadCorpus(run_test, seeds.profile());
      BootstrapResult result = RunBootstrap(seeds, test, config);
      WriteFile(run_labels,
                [&](std::ostream &o) { WriteCorpus(LabelledCorpus(test, result.labels), o); });
      WriteFile(run_pool, [&](std::ostream &o) { WritePatternPool(result.pool, o); });
      WriteFile(run_trace, [&](std::ostream &o) { WriteTrace(result.trace, o); });
      if (!run_induction.empty()) {
        WriteFile(run_induction, [&](std::ostream &o) { WriteInductionLog(result.induction, o); });
      }
      if (!run_scores.empty()) {
        WriteFile(run_scores, [&](std::ostream &o) { WriteScoreLog(result.scores, o); });
      }
      const IterationTrace &last = result.trace.back();
      out << "iterations\t" << result.trace.size() << '\n'
          << "terminated\t" << TerminationReasonName(*last.terminated_reason) << '\n'
          << "patterns\t" << result.pool.size() << " (" << result.seed_count << " seeds)\n"
          << "labels\t" << result.labels.size() << '\n'
          << "labelled_tokens\t" << result.labels.LabelledTokenCount() << '/'
          << test.TokenCount() << '\n';
    } else if (eval->parsed()) {
      const Profile profile = ProfileSetting(settings);
      Corpus pred = LoadCorpus(eval_pred, profile);
      Corpus gold = LoadCorpus(eval_gold, profile);
      std::vector<TypeMetrics> metrics =
          ScoreCorpora(pred, gold, *ParseMatchModeName(eval_mode));
      std::vector<IterationTrace> trace;
      if (!eval_trace.empty()) {
        std::ifstream in(eval_trace);
        if (!in) throw IoError("cannot open trace '" + eval_trace + "'");
        trace = ReadTrace(in);
      }
      WriteMetricsTsv(metrics, out);
      out << '\n';
      WritePatternCountsTsv(CountNewPatterns(trace), out);
      if (!eval_prefix.empty()) EmitReports(metrics, trace, eval_prefix);
    } else if (gen->parsed()) {
      GenResult result = Generate(LoadGenSpec(gen_spec));
      WriteFile(gen_out, [&](std::ostream &o) { WriteCorpus(result.corpus, o); });
      if (!gen_manifest.empty()) {
        WriteFile(gen_manifest, [&](std::ostream &o) { WriteManifest(result.manifest, o); });
      }
      out << "sentences\t" << result.corpus.sentences.size() << '\n'
          << "tokens\t" << result.corpus.TokenCount() << '\n'
          << "entities\t" << result.manifest.size() << '\n';
    } else if (inspect->parsed()) {
      PatternPool pool = LoadPatternPool(inspect_pool, ExplicitProfile(settings));
      out << "# profile: " << ProfileName(pool.profile()) << '\n';
      for (const Pattern &pattern : pool.patterns()) {
        out << pattern.id << '\t' << NETypeName(pattern.ne_type) << '\t'
            << OriginName(pattern.origin) << '\t' << pattern.iteration_born << '\n'
            << "  " << SerializePattern(pattern) << '\n';
      }
    } else {
      err << app.help();
      return kExitUsage;
    }
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace nerboot::cli
