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

// JSON layouts of the tool's reports. Every top-level object carries
// "schema_version".

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "draftrev/analysis.h"
#include "draftrev/metrics.h"
#include "draftrev/quality.h"

namespace draftrev::cli {

using Json = nlohmann::ordered_json;

Json EvalReportJson(const metrics::EvalReport& report, const Json& config);

Json DatasetReportJson(const analysis::DatasetStats& stats,
                       const analysis::LinguisticProfile& profile,
                       const analysis::EditTypeHistogram& edits,
                       const Json& config);

Json VerdictJson(const std::string& worker_id,
                 const quality::WorkerVerdict& verdict);

// Writes `j` with two-space indentation and a trailing newline.
std::string Dump(const Json& j);

}  // namespace draftrev::cli
