//
// Copyright 2026 The draftrev Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "draftrev/analysis.h"
#include "draftrev/corpus.h"
#include "draftrev/error.h"
#include "draftrev/lexicon.h"
#include "draftrev/lm.h"
#include "draftrev/metrics.h"
#include "draftrev/noising.h"
#include "draftrev/parallel.h"
#include "draftrev/quality.h"
#include "draftrev/random.h"
#include "draftrev/text.h"
#include "draftrev/version.h"
#include "reports.h"

namespace draftrev::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 1;
  bool dump_config = false;
};

// Files touched by a run, for the manifest and the clobber check.
struct RunIo {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

using Handler = std::function<void(RunIo&)>;

// Options that never appear in a report's config echo: they either do not
// affect results or name output locations.
const std::set<std::string>& EchoExcluded() {
  static const std::set<std::string> kKeys = {"jobs",   "out",     "report",
                                              "removed", "help",   "config",
                                              "dump-config", "version"};
  return kKeys;
}

const std::set<std::string>& NeverResolved() {
  static const std::set<std::string> kKeys = {"help", "config", "dump-config",
                                              "version"};
  return kKeys;
}

void Require(const std::string& value, std::string_view flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

std::string Location(const std::string& path, const RecordError& e) {
  return path + ":" + std::to_string(e.line) + ": " + e.message;
}

std::vector<Sentence> LoadSentences(const std::string& path,
                                    bool keep_blank = false) {
  auto result = ReadSentenceFile(path, keep_blank);
  if (!result.errors.empty()) {
    throw DataError(Location(path, result.errors.front()));
  }
  return std::move(result.sentences);
}

PairFormat ResolveFormat(const std::string& path, const std::string& format) {
  if (format == "auto") return GuessPairFormat(path);
  return ParsePairFormat(format);
}

std::vector<DraftPair> LoadPairsOrThrow(const std::string& path,
                                        const std::string& format) {
  auto result = LoadPairs(path, ResolveFormat(path, format));
  if (!result.errors.empty()) {
    throw DataError(Location(path, result.errors.front()));
  }
  return std::move(result.pairs);
}

template <typename F>
auto WithPath(const std::string& path, F&& load) {
  try {
    return load();
  } catch (const DataError& e) {
    throw DataError(e.line() == 0 ? path + ": " + e.what()
                                  : path + ":" + std::to_string(e.line()) +
                                        ": " + e.detail());
  }
}

Dictionary LoadDictionary(const std::string& path) {
  return WithPath(path, [&] { return Dictionary::Load(path); });
}

std::ofstream OpenOutput(const std::string& path) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void WriteText(const std::string& path, const std::string& content) {
  auto out = OpenOutput(path);
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

// Inputs are never overwritten.
void CheckNoClobber(const RunIo& io) {
  for (const auto& o : io.outputs) {
    for (const auto& i : io.inputs) {
      std::error_code ec1;
      std::error_code ec2;
      const auto a = fs::weakly_canonical(o, ec1);
      const auto b = fs::weakly_canonical(i, ec2);
      if (!ec1 && !ec2 && a == b) {
        throw UsageError("output " + o + " would overwrite input " + i);
      }
    }
  }
}

std::string Joined(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += xs[i];
  }
  return s;
}

bool IsFlag(const CLI::Option* opt) { return opt->get_expected_min() == 0; }

std::string StripBrackets(std::string s) {
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

// Effective value of an option: given on the command line or in the config
// file, otherwise its default.
std::string EffectiveValue(const CLI::Option* opt) {
  if (IsFlag(opt)) return opt->count() > 0 ? "true" : "false";
  if (opt->count() > 0) return Joined(opt->results());
  return StripBrackets(opt->get_default_str());
}

std::string OptionKey(const CLI::Option* opt) {
  return opt->get_single_name();
}

std::vector<const CLI::App*> SubcommandPath(const CLI::App& app) {
  std::vector<const CLI::App*> path;
  const CLI::App* cur = &app;
  while (true) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    path.push_back(cur);
  }
  return path;
}

std::string CommandName(const std::vector<const CLI::App*>& path) {
  std::string name;
  for (const auto* a : path) {
    if (!name.empty()) name += ' ';
    name += a->get_name();
  }
  return name;
}

// Resolved key/value pairs: global options first, then the subcommand's.
std::vector<std::pair<std::string, std::string>> ResolvedOptions(
    const CLI::App& app, const CLI::App* leaf) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto add = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      const std::string key = OptionKey(opt);
      if (key.empty() || NeverResolved().contains(key)) continue;
      out.emplace_back(key, EffectiveValue(opt));
    }
  };
  add(app);
  if (leaf != nullptr && leaf != &app) add(*leaf);
  return out;
}

Json ConfigEcho(const CLI::App& app, const CLI::App* leaf) {
  Json j = Json::object();
  for (const auto& [k, v] : ResolvedOptions(app, leaf)) {
    if (!EchoExcluded().contains(k)) j[k] = v;
  }
  return j;
}

std::string QuoteIfNeeded(const std::string& v) {
  const bool plain =
      !v.empty() && std::none_of(v.begin(), v.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '#' || c == '"' || c == '\'' ||
               c == '=';
      });
  if (plain) return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

// Same layout the --config option reads.
std::string DumpConfig(const CLI::App& app, const CLI::App* leaf,
                       const std::vector<const CLI::App*>& path) {
  std::ostringstream os;
  os << "# draftrev " << kVersion << " resolved configuration\n";
  for (const CLI::Option* opt : app.get_options()) {
    const std::string key = OptionKey(opt);
    if (key.empty() || NeverResolved().contains(key)) continue;
    os << key << "=" << QuoteIfNeeded(EffectiveValue(opt)) << "\n";
  }
  if (leaf != nullptr) {
    std::string section;
    for (const auto* a : path) {
      if (!section.empty()) section += '.';
      section += a->get_name();
    }
    os << "\n[" << section << "]\n";
    for (const CLI::Option* opt : leaf->get_options()) {
      const std::string key = OptionKey(opt);
      if (key.empty() || NeverResolved().contains(key)) continue;
      const std::string value = EffectiveValue(opt);
      if (value.empty()) continue;
      os << key << "=" << QuoteIfNeeded(value) << "\n";
    }
  }
  return os.str();
}

// Command line that reproduces the run without any config file.
std::vector<std::string> ReplayArgs(const CLI::App& app, const CLI::App* leaf,
                                    const std::vector<const CLI::App*>& path) {
  std::vector<std::string> args;
  for (const auto* a : path) args.push_back(a->get_name());
  for (const auto& [k, v] : ResolvedOptions(app, leaf)) {
    const CLI::Option* opt = nullptr;
    try {
      opt = leaf->get_option("--" + k);
    } catch (const CLI::OptionNotFound&) {
      opt = app.get_option("--" + k);
    }
    if (IsFlag(opt)) {
      if (v == "true") args.push_back("--" + k);
    } else if (!v.empty()) {
      args.push_back("--" + k);
      args.push_back(v);
    }
  }
  return args;
}

void WriteManifest(const std::string& anchor, const CLI::App& app,
                   const CLI::App* leaf,
                   const std::vector<const CLI::App*>& path,
                   const GlobalOptions& global, const RunIo& io,
                   double seconds) {
  Json config = Json::object();
  for (const auto& [k, v] : ResolvedOptions(app, leaf)) config[k] = v;
  Json j = {{"schema_version", kReportSchemaVersion},
            {"tool", "draftrev"},
            {"version", std::string(kVersion)},
            {"subcommand", CommandName(path)},
            {"argv", ReplayArgs(app, leaf, path)},
            {"config", config},
            {"inputs", io.inputs},
            {"outputs", io.outputs},
            {"seed", global.seed},
            {"jobs", global.jobs},
            {"duration_seconds", seconds}};
  WriteText(anchor + ".manifest.json", Dump(j));
}

CLI::App* AddLeaf(CLI::App* parent, const std::string& name,
                  const std::string& description) {
  CLI::App* sub = parent->add_subcommand(name, description);
  sub->fallthrough();
  return sub;
}

CLI::App* AddGroup(CLI::App* parent, const std::string& name,
                   const std::string& description) {
  CLI::App* sub = parent->add_subcommand(name, description);
  sub->require_subcommand(1);
  sub->fallthrough();
  return sub;
}

CLI::Option* AddFormat(CLI::App* sub, std::string& format) {
  return sub->add_option("--format", format, "pair file format")
      ->check(CLI::IsMember({"auto", "tsv", "jsonl"}));
}

// ---------------------------------------------------------------------------
// Command state. Each struct is bound to its CLI11 subcommand.

struct CorpusExtract {
  std::string input;
  std::string out;
  std::string mode = "final";
  std::string exclude;
  std::string report;
  CorpusFilterConfig filter;
  std::vector<std::string> forbid{DefaultForbiddenCharClasses().begin(),
                                  DefaultForbiddenCharClasses().end()};
};

struct LmTrain {
  std::string input;
  std::string out;
  lm::TrainOptions options;
  std::string smoothing = "kn";
};

struct LmPpl {
  std::string lm;
  std::string input;
  std::string out;
  std::string report;
};

struct NoiseRun {
  std::string input;
  std::string out;
  std::string vocab_counts;
  noising::NoiseConfig cfg;
  std::string sampling = "uniform";
};

struct ScoreWorkers {
  std::string input;
  std::string out;
  std::string dictionary;
  quality::WorkerScoringConfig cfg;
};

struct FilterPairsCmd {
  std::string input;
  std::string format = "auto";
  std::string out;
  std::string removed;
  std::string report;
  std::string stopwords;
  std::string dictionary;
  double alpha = 0.4;
  bool no_spellcheck = false;
  bool keep_punctuation = false;
};

struct StopwordsCmd {
  std::string out;
};

struct EvalRun {
  std::string src;
  std::string hyp;
  std::string ref;
  std::string lm;
  std::string dictionary;
  std::string report;
  bool spellcheck_hyp = false;
  std::vector<std::string> rules;
  metrics::EvalConfig cfg;
};

struct StatsDataset {
  std::string input;
  std::string format = "auto";
  std::string lm;
  std::string dictionary;
  std::string report;
  std::size_t repetition_window = metrics::kRepetitionWindow;
};

struct AnalysisTerms {
  std::string input;
  std::string format = "auto";
  std::string out;
  std::size_t top_k = 20;
  double epsilon = 1.0;
};

struct Replay {
  std::string manifest;
};

quality::WorkerSubmission ParseSubmission(const std::string& line,
                                          std::size_t line_no) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what(), line_no);
  }
  const auto need = [&](const char* key) -> const Json& {
    if (!j.is_object() || !j.contains(key)) {
      throw DataError(std::string("missing field \"") + key + "\"", line_no);
    }
    return j.at(key);
  };
  const auto three = [&](const char* key) {
    const Json& v = need(key);
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(),
                     [](const Json& x) { return x.is_string(); })) {
      throw DataError(std::string("\"") + key + "\" must hold 3 strings",
                      line_no);
    }
    std::array<std::string, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] = v[i].get<std::string>();
      if (!IsValidUtf8(out[i])) throw DataError("invalid UTF-8", line_no);
    }
    return out;
  };
  quality::WorkerSubmission s;
  const Json& id = need("worker_id");
  if (!id.is_string()) throw DataError("\"worker_id\" must be a string", line_no);
  s.worker_id = id.get<std::string>();
  s.answers = three("answers");
  const Json& secs = need("seconds");
  if (!secs.is_number_integer()) {
    throw DataError("\"seconds\" must be an integer", line_no);
  }
  s.seconds_worked = secs.get<long long>();
  s.mt_references = three("mt_references");
  return s;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Draft-to-reference sentence revision toolkit", "draftrev"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags win");
  app.set_version_flag("--version", std::string(kVersion));

  GlobalOptions global;
  app.add_option("--seed", global.seed, "random seed");
  app.add_option("--jobs", global.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dump-config", global.dump_config,
               "print the resolved configuration and exit");

  std::map<const CLI::App*, Handler> handlers;
  // Primary output per subcommand; the manifest is written next to it.
  std::map<const CLI::App*, std::function<std::string()>> anchors;

  // corpus extract --------------------------------------------------------
  CorpusExtract ce;
  CLI::App* corpus = AddGroup(&app, "corpus", "sentence collection tools");
  CLI::App* extract = AddLeaf(corpus, "extract", "filter a sentence list");
  extract->add_option("--input", ce.input, "sentence-per-line file");
  extract->add_option("--out", ce.out, "kept sentences");
  extract->add_option("--mode", ce.mode, "final or training")
      ->check(CLI::IsMember({"final", "training"}));
  extract->add_option("--exclude", ce.exclude,
                      "sentences to exclude (training mode)");
  extract->add_option("--report", ce.report, "summary JSON");
  extract->add_option("--min-chars", ce.filter.min_chars);
  extract->add_option("--max-chars", ce.filter.max_chars);
  extract->add_option("--min-tokens", ce.filter.min_tokens);
  extract->add_option("--max-tokens", ce.filter.max_tokens);
  extract->add_option("--min-alpha-ratio", ce.filter.min_alpha_ratio);
  extract->add_option("--forbid", ce.forbid, "forbidden character classes")
      ->delimiter(',');
  handlers[extract] = [&](RunIo& io) {
    Require(ce.input, "--input");
    Require(ce.out, "--out");
    if (ce.mode == "final" && !ce.exclude.empty()) {
      throw UsageError("--exclude only applies to --mode training");
    }
    ce.filter.forbidden_char_classes = {ce.forbid.begin(), ce.forbid.end()};
    ce.filter.Validate();
    io.inputs = {ce.input};
    if (!ce.exclude.empty()) io.inputs.push_back(ce.exclude);
    io.outputs = {ce.out};
    if (!ce.report.empty()) io.outputs.push_back(ce.report);
    CheckNoClobber(io);
    const auto sentences = LoadSentences(ce.input);
    std::vector<Sentence> kept;
    if (ce.mode == "final") {
      kept = FilterFinalSentences(sentences, ce.filter);
    } else {
      std::unordered_set<std::string> exclusion;
      if (!ce.exclude.empty()) {
        for (const auto& s : LoadSentences(ce.exclude)) {
          exclusion.insert(NormalizeForLookup(s.text()));
        }
      }
      kept = FilterTrainingSentences(sentences, ce.filter, exclusion);
    }
    auto os = OpenOutput(ce.out);
    for (const auto& s : kept) os << s.text() << '\n';
    if (!ce.report.empty()) {
      WriteText(ce.report, Dump({{"schema_version", kReportSchemaVersion},
                                 {"kind", "corpus_extract"},
                                 {"config", ConfigEcho(app, extract)},
                                 {"read", sentences.size()},
                                 {"kept", kept.size()},
                                 {"removed", sentences.size() - kept.size()}}));
    }
  };
  anchors[extract] = [&] { return ce.out; };

  // lm train / lm ppl -----------------------------------------------------
  LmTrain lt;
  CLI::App* lm_group = AddGroup(&app, "lm", "n-gram language models");
  CLI::App* train = AddLeaf(lm_group, "train", "train an ARPA model");
  train->add_option("--input", lt.input, "sentence-per-line corpus");
  train->add_option("--out", lt.out, "ARPA output");
  train->add_option("--order", lt.options.order)->check(CLI::Range(1, 9));
  train->add_option("--smoothing", lt.smoothing, "kn or add-k")
      ->check(CLI::IsMember({"kn", "interpolated-kneser-ney", "add-k", "addk"}));
  train->add_option("--add-k", lt.options.add_k);
  train->add_option("--unk-floor", lt.options.unk_floor);
  handlers[train] = [&](RunIo& io) {
    Require(lt.input, "--input");
    Require(lt.out, "--out");
    lt.options.smoothing = lm::ParseSmoothing(lt.smoothing);
    io.inputs = {lt.input};
    io.outputs = {lt.out};
    CheckNoClobber(io);
    const auto corpus_sentences = LoadSentences(lt.input);
    lm::NGramModel::Train(corpus_sentences, lt.options).SaveArpa(lt.out);
  };
  anchors[train] = [&] { return lt.out; };

  LmPpl lp;
  CLI::App* ppl = AddLeaf(lm_group, "ppl", "score sentences with a model");
  ppl->add_option("--lm", lp.lm, "ARPA model");
  ppl->add_option("--input", lp.input, "sentence-per-line file");
  ppl->add_option("--out", lp.out, "per-sentence TSV (default: stdout)");
  ppl->add_option("--report", lp.report, "summary JSON");
  handlers[ppl] = [&](RunIo& io) {
    Require(lp.lm, "--lm");
    Require(lp.input, "--input");
    io.inputs = {lp.lm, lp.input};
    if (!lp.out.empty()) io.outputs.push_back(lp.out);
    if (!lp.report.empty()) io.outputs.push_back(lp.report);
    CheckNoClobber(io);
    const auto model =
        WithPath(lp.lm, [&] { return lm::NGramModel::LoadArpa(lp.lm); });
    const auto sentences = LoadSentences(lp.input);
    std::vector<double> logprob(sentences.size());
    ParallelFor(sentences.size(), global.jobs, [&](std::size_t i) {
      logprob[i] = model.SentenceLogProb(sentences[i]);
    });
    std::ostringstream tsv;
    double sum_ppl = 0.0;
    double sum_lp = 0.0;
    std::size_t events = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const std::size_t n = sentences[i].tokens().size() + 1;
      const double p = std::pow(10.0, -logprob[i] / static_cast<double>(n));
      tsv << FormatDouble(p) << '\t' << sentences[i].text() << '\n';
      sum_ppl += p;
      sum_lp += logprob[i];
      events += n;
    }
    if (lp.out.empty()) {
      out << tsv.str();
    } else {
      WriteText(lp.out, tsv.str());
    }
    if (!lp.report.empty()) {
      const double count = static_cast<double>(sentences.size());
      Json j = {{"schema_version", kReportSchemaVersion},
                {"kind", "lm_ppl"},
                {"config", ConfigEcho(app, ppl)},
                {"sentences", sentences.size()},
                {"mean_ppl", sentences.empty() ? Json(nullptr)
                                               : Json(sum_ppl / count)},
                {"corpus_ppl",
                 events == 0 ? Json(nullptr)
                             : Json(std::pow(10.0, -sum_lp /
                                                       static_cast<double>(events)))},
                {"log10_prob", sum_lp}};
      WriteText(lp.report, Dump(j));
    }
  };
  anchors[ppl] = [&] { return lp.out.empty() ? lp.report : lp.out; };

  // noise run -------------------------------------------------------------
  NoiseRun nr;
  CLI::App* noise = AddGroup(&app, "noise", "synthetic draft generation");
  CLI::App* noise_run = AddLeaf(noise, "run", "noise clean sentences into pairs");
  noise_run->add_option("--input", nr.input, "sentence-per-line file");
  noise_run->add_option("--out", nr.out, "pair TSV output");
  noise_run->add_option("--vocab-counts", nr.vocab_counts,
                        "token<TAB>count file for replacements");
  noise_run->add_option("--delete-p", nr.cfg.delete_p);
  noise_run->add_option("--replace-p", nr.cfg.replace_p);
  noise_run->add_option("--replace-min-count", nr.cfg.replace_vocab_min_count,
                        "replacement words need a count above this");
  noise_run->add_option("--shuffle-k", nr.cfg.shuffle_k);
  noise_run->add_option("--mask-fraction-max", nr.cfg.mask_fraction_max);
  noise_run->add_option("--replace-sampling", nr.sampling)
      ->check(CLI::IsMember({"uniform", "count-weighted"}));
  handlers[noise_run] = [&](RunIo& io) {
    Require(nr.input, "--input");
    Require(nr.out, "--out");
    nr.cfg.seed = global.seed;
    nr.cfg.replace_sampling = noising::ParseReplacementSampling(nr.sampling);
    nr.cfg.Validate();
    io.inputs = {nr.input};
    if (!nr.vocab_counts.empty()) io.inputs.push_back(nr.vocab_counts);
    io.outputs = {nr.out};
    CheckNoClobber(io);
    const auto sentences = LoadSentences(nr.input);
    const auto vocab =
        nr.vocab_counts.empty()
            ? noising::ReplacementVocab::FromSentences(
                  sentences, nr.cfg.replace_vocab_min_count)
            : noising::ReplacementVocab::FromCounts(
                  WithPath(nr.vocab_counts,
                           [&] { return LoadTokenCounts(nr.vocab_counts); }),
                  nr.cfg.replace_vocab_min_count);
    const auto pairs =
        noising::NoiseCorpus(sentences, nr.cfg, vocab, global.jobs);
    auto os = OpenOutput(nr.out);
    WritePairTsv(os, pairs);
  };
  anchors[noise_run] = [&] { return nr.out; };

  // quality ---------------------------------------------------------------
  CLI::App* quality_group = AddGroup(&app, "quality", "crowdwork quality control");
  ScoreWorkers sw;
  CLI::App* score = AddLeaf(quality_group, "score-workers",
                            "score worker submissions");
  score->add_option("--input", sw.input, "submissions JSONL");
  score->add_option("--out", sw.out, "verdict JSONL (default: stdout)");
  score->add_option("--dictionary", sw.dictionary,
                    "English word list for the language check");
  score->add_option("--min-seconds", sw.cfg.min_seconds);
  score->add_option("--min-words", sw.cfg.min_words);
  score->add_option("--min-types", sw.cfg.min_types);
  score->add_option("--english-threshold", sw.cfg.english_threshold);
  handlers[score] = [&](RunIo& io) {
    Require(sw.input, "--input");
    io.inputs = {sw.input};
    if (!sw.dictionary.empty()) io.inputs.push_back(sw.dictionary);
    if (!sw.out.empty()) io.outputs = {sw.out};
    CheckNoClobber(io);
    std::ifstream in(sw.input, std::ios::binary);
    if (!in) throw IoError("cannot open " + sw.input);
    std::vector<quality::WorkerSubmission> subs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        subs.push_back(ParseSubmission(line, line_no));
      } catch (const DataError& e) {
        throw DataError(sw.input + ":" + std::to_string(e.line()) + ": " +
                        e.detail());
      }
    }
    Dictionary english;
    if (!sw.dictionary.empty()) {
      english = LoadDictionary(sw.dictionary);
    } else {
      for (const auto& w : DefaultStopwords()) english.Add(w);
      for (const auto& s : subs) {
        for (const auto& ref : s.mt_references) {
          for (const auto& tok : Tokenize(ref)) {
            if (IsAlphabeticToken(tok)) english.Add(tok);
          }
        }
      }
    }
    std::vector<quality::WorkerVerdict> verdicts(subs.size());
    ParallelFor(subs.size(), global.jobs, [&](std::size_t i) {
      verdicts[i] = quality::ScoreWorker(subs[i], english, sw.cfg);
    });
    std::ostringstream os;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      os << VerdictJson(subs[i].worker_id, verdicts[i]).dump() << '\n';
    }
    if (sw.out.empty()) {
      out << os.str();
    } else {
      WriteText(sw.out, os.str());
    }
  };
  anchors[score] = [&] { return sw.out; };

  FilterPairsCmd fp;
  CLI::App* filter = AddLeaf(quality_group, "filter-pairs",
                             "drop pairs with low content overlap");
  filter->add_option("--input", fp.input, "pair file");
  AddFormat(filter, fp.format);
  filter->add_option("--out", fp.out, "kept pairs TSV");
  filter->add_option("--removed", fp.removed, "removed pairs TSV with reason");
  filter->add_option("--report", fp.report, "summary JSON");
  filter->add_option("--alpha", fp.alpha, "overlap threshold")
      ->check(CLI::Range(0.0, 1.0));
  filter->add_option("--stopwords", fp.stopwords,
                     "stopword list (default: bundled)");
  filter->add_option("--dictionary", fp.dictionary,
                     "spell-check word list (default: reference words)");
  filter->add_flag("--no-spellcheck", fp.no_spellcheck,
                   "skip spell checking the drafts");
  filter->add_flag("--keep-punctuation", fp.keep_punctuation,
                   "count punctuation tokens in the overlap");
  handlers[filter] = [&](RunIo& io) {
    Require(fp.input, "--input");
    Require(fp.out, "--out");
    if (fp.no_spellcheck && !fp.dictionary.empty()) {
      throw UsageError("--dictionary conflicts with --no-spellcheck");
    }
    io.inputs = {fp.input};
    if (!fp.stopwords.empty()) io.inputs.push_back(fp.stopwords);
    if (!fp.dictionary.empty()) io.inputs.push_back(fp.dictionary);
    io.outputs = {fp.out};
    if (!fp.removed.empty()) io.outputs.push_back(fp.removed);
    if (!fp.report.empty()) io.outputs.push_back(fp.report);
    CheckNoClobber(io);
    const auto pairs = LoadPairsOrThrow(fp.input, fp.format);
    quality::FilterConfig cfg;
    cfg.alpha = fp.alpha;
    cfg.drop_punctuation = !fp.keep_punctuation;
    if (!fp.stopwords.empty()) cfg.stopwords = LoadStopwords(fp.stopwords);
    Dictionary dict;
    if (!fp.no_spellcheck) {
      if (!fp.dictionary.empty()) {
        dict = LoadDictionary(fp.dictionary);
      } else {
        std::vector<Sentence> refs;
        for (const auto& p : pairs) refs.push_back(p.reference());
        dict = Dictionary::FromSentences(refs);
      }
    }
    const auto result = quality::FilterPairs(pairs, cfg, dict);
    {
      auto os = OpenOutput(fp.out);
      WritePairTsv(os, result.kept);
    }
    if (!fp.removed.empty()) {
      auto os = OpenOutput(fp.removed);
      for (const auto& r : result.removed) {
        os << r.pair.draft().text() << '\t' << r.pair.reference().text() << '\t'
           << r.reason << '\t'
           << (r.coefficient ? FormatDouble(*r.coefficient) : "") << '\n';
      }
    }
    if (!fp.report.empty()) {
      std::size_t low = 0;
      for (const auto& r : result.removed) low += r.reason == "low_overlap";
      WriteText(fp.report,
                Dump({{"schema_version", kReportSchemaVersion},
                      {"kind", "filter_pairs"},
                      {"config", ConfigEcho(app, filter)},
                      {"read", pairs.size()},
                      {"kept", result.kept.size()},
                      {"removed_low_overlap", low},
                      {"removed_undefined_overlap",
                       result.removed.size() - low}}));
    }
  };
  anchors[filter] = [&] { return fp.out; };

  StopwordsCmd sc;
  CLI::App* stop = AddLeaf(quality_group, "stopwords",
                           "print the bundled stopword list");
  stop->add_option("--out", sc.out, "output file (default: stdout)");
  handlers[stop] = [&](RunIo& io) {
    std::ostringstream os;
    os << "# stopwords " << kStopwordListVersion << '\n';
    for (auto w : DefaultStopwordList()) os << w << '\n';
    if (sc.out.empty()) {
      out << os.str();
    } else {
      io.outputs = {sc.out};
      WriteText(sc.out, os.str());
    }
  };
  anchors[stop] = [&] { return sc.out; };

  // eval run --------------------------------------------------------------
  EvalRun ev;
  for (auto r : metrics::AllGrammarRules()) {
    ev.rules.emplace_back(metrics::GrammarRuleName(r));
  }
  CLI::App* eval_group = AddGroup(&app, "eval", "system evaluation");
  CLI::App* eval_run = AddLeaf(eval_group, "run", "score system outputs");
  eval_run->add_option("--src", ev.src, "drafts, one per line");
  eval_run->add_option("--hyp", ev.hyp, "system outputs, one per line");
  eval_run->add_option("--ref", ev.ref, "references, one per line");
  eval_run->add_option("--lm", ev.lm, "ARPA model for PPL");
  eval_run->add_option("--dictionary", ev.dictionary,
                       "word list for edit typing (default: reference words)");
  eval_run->add_option("--report", ev.report, "report JSON");
  eval_run->add_flag("--spellcheck-hyp", ev.spellcheck_hyp,
                     "spell-correct hypotheses before edit matching");
  eval_run->add_option("--rules", ev.rules, "grammar rules")->delimiter(',');
  eval_run->add_option("--bleu-epsilon", ev.cfg.bleu.epsilon);
  eval_run->add_option("--rouge-beta", ev.cfg.rouge_beta);
  eval_run->add_option("--repetition-window", ev.cfg.repetition_window)
      ->check(CLI::PositiveNumber);
  handlers[eval_run] = [&](RunIo& io) {
    Require(ev.src, "--src");
    Require(ev.hyp, "--hyp");
    Require(ev.ref, "--ref");
    Require(ev.report, "--report");
    io.inputs = {ev.src, ev.hyp, ev.ref};
    if (!ev.lm.empty()) io.inputs.push_back(ev.lm);
    if (!ev.dictionary.empty()) io.inputs.push_back(ev.dictionary);
    io.outputs = {ev.report};
    CheckNoClobber(io);
    ev.cfg.spellcheck_hypotheses = ev.spellcheck_hyp;
    ev.cfg.grammar_rules.clear();
    for (const auto& r : ev.rules) {
      ev.cfg.grammar_rules.insert(metrics::ParseGrammarRule(r));
    }
    const auto src = LoadSentences(ev.src, true);
    const auto hyp = LoadSentences(ev.hyp, true);
    const auto ref = LoadSentences(ev.ref, true);
    std::optional<lm::NGramModel> model;
    if (!ev.lm.empty()) {
      model = WithPath(ev.lm, [&] { return lm::NGramModel::LoadArpa(ev.lm); });
    }
    const Dictionary dict = ev.dictionary.empty()
                                ? Dictionary::FromSentences(ref)
                                : LoadDictionary(ev.dictionary);
    const auto report = metrics::Evaluate(src, hyp, ref, dict,
                                          model ? &*model : nullptr, ev.cfg,
                                          global.jobs);
    WriteText(ev.report, Dump(EvalReportJson(report, ConfigEcho(app, eval_run))));
  };
  anchors[eval_run] = [&] { return ev.report; };

  // stats dataset ---------------------------------------------------------
  StatsDataset sd;
  CLI::App* stats_group = AddGroup(&app, "stats", "dataset statistics");
  CLI::App* dataset = AddLeaf(stats_group, "dataset", "profile a pair file");
  dataset->add_option("--input", sd.input, "pair file");
  AddFormat(dataset, sd.format);
  dataset->add_option("--lm", sd.lm, "ARPA model for PPL");
  dataset->add_option("--dictionary", sd.dictionary,
                      "word list for edit typing (default: reference words)");
  dataset->add_option("--report", sd.report, "report JSON (default: stdout)");
  dataset->add_option("--repetition-window", sd.repetition_window)
      ->check(CLI::PositiveNumber);
  handlers[dataset] = [&](RunIo& io) {
    Require(sd.input, "--input");
    io.inputs = {sd.input};
    if (!sd.lm.empty()) io.inputs.push_back(sd.lm);
    if (!sd.dictionary.empty()) io.inputs.push_back(sd.dictionary);
    if (!sd.report.empty()) io.outputs = {sd.report};
    CheckNoClobber(io);
    const auto pairs = LoadPairsOrThrow(sd.input, sd.format);
    std::optional<lm::NGramModel> model;
    if (!sd.lm.empty()) {
      model = WithPath(sd.lm, [&] { return lm::NGramModel::LoadArpa(sd.lm); });
    }
    Dictionary dict;
    if (sd.dictionary.empty()) {
      std::vector<Sentence> refs;
      for (const auto& p : pairs) refs.push_back(p.reference());
      dict = Dictionary::FromSentences(refs);
    } else {
      dict = LoadDictionary(sd.dictionary);
    }
    const auto stats = analysis::ComputeDatasetStats(pairs, global.jobs);
    const auto profile = analysis::ComputeLinguisticProfile(
        pairs, model ? &*model : nullptr, global.jobs, sd.repetition_window);
    const auto edits = analysis::EditTypeDistribution(pairs, dict, global.jobs);
    const std::string text =
        Dump(DatasetReportJson(stats, profile, edits, ConfigEcho(app, dataset)));
    if (sd.report.empty()) {
      out << text;
    } else {
      WriteText(sd.report, text);
    }
  };
  anchors[dataset] = [&] { return sd.report; };

  // analysis terms --------------------------------------------------------
  AnalysisTerms at;
  CLI::App* analysis_group = AddGroup(&app, "analysis", "corpus contrasts");
  CLI::App* terms = AddLeaf(analysis_group, "terms",
                            "characteristic draft and reference terms");
  terms->add_option("--input", at.input, "pair file");
  AddFormat(terms, at.format);
  terms->add_option("--out", at.out, "TSV output (default: stdout)");
  terms->add_option("--top-k", at.top_k)->check(CLI::PositiveNumber);
  terms->add_option("--epsilon", at.epsilon, "smoothing constant")
      ->check(CLI::PositiveNumber);
  handlers[terms] = [&](RunIo& io) {
    Require(at.input, "--input");
    io.inputs = {at.input};
    if (!at.out.empty()) io.outputs = {at.out};
    CheckNoClobber(io);
    const auto pairs = LoadPairsOrThrow(at.input, at.format);
    const auto result = analysis::CharacteristicTerms(pairs, at.top_k, at.epsilon);
    std::ostringstream os;
    analysis::WriteTermsTsv(os, result);
    if (at.out.empty()) {
      out << os.str();
    } else {
      WriteText(at.out, os.str());
    }
  };
  anchors[terms] = [&] { return at.out; };

  // replay ----------------------------------------------------------------
  Replay rp;
  CLI::App* replay = AddLeaf(&app, "replay", "re-run the command in a manifest");
  replay->add_option("--manifest", rp.manifest, "manifest JSON");

  // -----------------------------------------------------------------------
  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1),
                                    args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    const auto path = SubcommandPath(app);
    const CLI::App* help_for = path.empty() ? &app : path.back();
    const auto extra = help_for->remaining();
    if (!extra.empty() && !extra.front().starts_with("-")) {
      err << "draftrev: error: unknown subcommand: " << extra.front() << "\n\n";
    } else {
      err << "draftrev: error: " << e.what() << "\n\n";
    }
    err << help_for->help();
    return kExitUsage;
  }

  const auto path = SubcommandPath(app);
  const CLI::App* leaf = path.empty() ? nullptr : path.back();

  if (global.dump_config) {
    out << DumpConfig(app, leaf, path);
    return kExitOk;
  }

  try {
    if (leaf == replay) {
      Require(rp.manifest, "--manifest");
      std::ifstream in(rp.manifest, std::ios::binary);
      if (!in) throw IoError("cannot open " + rp.manifest);
      Json m;
      try {
        m = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw DataError(rp.manifest + ": malformed manifest: " + e.what());
      }
      if (!m.contains("argv") || !m["argv"].is_array()) {
        throw DataError(rp.manifest + ": manifest has no argv");
      }
      std::vector<std::string> again{"draftrev"};
      for (const auto& a : m["argv"]) again.push_back(a.get<std::string>());
      if (again.size() > 1 && again[1] == "replay") {
        throw UsageError("a manifest cannot replay another replay");
      }
      return Run(again, out, err);
    }
    auto it = handlers.find(leaf);
    if (it == handlers.end()) {
      throw UsageError("no command given");
    }
    RunIo io;
    it->second(io);
    const std::string anchor = anchors.at(leaf)();
    if (!anchor.empty()) {
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        started)
              .count();
      WriteManifest(anchor, app, leaf, path, global, io, seconds);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "draftrev: error: " << e.what() << "\n\n"
        << (leaf ? leaf->help() : app.help());
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "draftrev: error: " << e.what() << "\n\n"
        << (leaf ? leaf->help() : app.help());
    return kExitUsage;
  } catch (const Error& e) {
    err << "draftrev: error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "draftrev: error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace draftrev::cli
