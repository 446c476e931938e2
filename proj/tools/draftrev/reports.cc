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

#include "reports.h"

#include "draftrev/version.h"

namespace draftrev::cli {

namespace {

Json Optional(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json PrfJson(const metrics::Prf& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f0_5", p.f}};
}

Json SideJson(const analysis::SideProfile& s) {
  return {{"sentences", s.sentences},
          {"mean_fre", s.mean_fre},
          {"passive_pct", s.passive_pct},
          {"repetition_pct", s.repetition_pct},
          {"mean_ppl", Optional(s.mean_ppl)},
          {"skipped", s.skipped}};
}

}  // namespace

Json EvalReportJson(const metrics::EvalReport& report, const Json& config) {
  const auto& a = report.aggregates;
  Json aggregates = {
      {"corpus_bleu", a.corpus_bleu},
      {"mean_rouge_l", a.mean_rouge_l},
      {"edit", PrfJson(a.edit_prf)},
      {"mean_grammaticality", a.mean_grammaticality},
      {"mean_fre", a.mean_fre},
      {"mean_ppl", Optional(a.mean_ppl)},
      {"passive_fraction", a.passive_fraction},
      {"repetition_fraction", a.repetition_fraction},
      {"mean_levenshtein_char", a.mean_levenshtein_char},
      {"skipped",
       {{"grammaticality", a.skipped_grammaticality},
        {"fre", a.skipped_fre},
        {"ppl", a.skipped_ppl}}}};
  Json records = Json::array();
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    records.push_back({{"index", i},
                       {"bleu", r.bleu},
                       {"rouge_l", r.rouge_l.f},
                       {"rouge_l_degenerate", r.rouge_l.degenerate},
                       {"levenshtein_char", r.levenshtein_char},
                       {"grammaticality", Optional(r.grammaticality)},
                       {"fre", Optional(r.fre)},
                       {"ppl", Optional(r.ppl)},
                       {"passive", r.passive},
                       {"repetition", r.repetition},
                       {"edits",
                        {{"matched", r.edits.matched},
                         {"hypothesis", r.edits.hypothesis},
                         {"gold", r.edits.gold}}},
                       {"edit", PrfJson(r.edit_prf)}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "eval"},
          {"config", config},
          {"aggregates", aggregates},
          {"records", records}};
}

Json DatasetReportJson(const analysis::DatasetStats& stats,
                       const analysis::LinguisticProfile& profile,
                       const analysis::EditTypeHistogram& edits,
                       const Json& config) {
  Json counts = Json::object();
  Json fractions = Json::object();
  const auto f = edits.Fractions();
  for (std::size_t i = 0; i < metrics::kAllEditTypes.size(); ++i) {
    const std::string name(metrics::EditTypeName(metrics::kAllEditTypes[i]));
    counts[name] = edits.counts[i];
    fractions[name] = f[i];
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "dataset_stats"},
          {"config", config},
          {"pair_count", stats.pair_count},
          {"pct_with_mask", stats.pct_with_mask},
          {"pct_changed", stats.pct_changed},
          {"mean_char_levenshtein", stats.mean_char_levenshtein},
          {"profile",
           {{"draft", SideJson(profile.draft)},
            {"reference", SideJson(profile.reference)}}},
          {"edit_types",
           {{"total", edits.total}, {"counts", counts}, {"fractions", fractions}}}};
}

Json VerdictJson(const std::string& worker_id,
                 const quality::WorkerVerdict& verdict) {
  Json ids = Json::array();
  Json details = Json::array();
  for (const auto& t : verdict.triggered) {
    ids.push_back(t.id);
    Json d = {{"id", t.id}, {"reject", t.reject}, {"points", t.points}};
    d["answer"] = t.answer ? Json(*t.answer) : Json(nullptr);
    details.push_back(std::move(d));
  }
  return {{"schema_version", kReportSchemaVersion},
          {"worker_id", worker_id},
          {"score", verdict.score},
          {"accepted", verdict.accepted},
          {"triggered", ids},
          {"details", details}};
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace draftrev::cli
