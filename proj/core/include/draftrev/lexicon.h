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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace draftrev {

class Sentence;

// Lowercased word list with corpus frequencies. Used for spell checking,
// language heuristics, and spelling-edit typing.
class Dictionary {
 public:
  Dictionary() = default;

  // Adds `count` to the (lowercased) word's frequency.
  void Add(std::string_view word, std::uint64_t count = 1);

  bool Contains(std::string_view word) const;
  // 0 if absent. Lookup is case-insensitive.
  std::uint64_t Frequency(std::string_view word) const;
  std::size_t size() const { return freq_.size(); }
  bool empty() const { return freq_.empty(); }

  // Counts every alphabetic token of the given sentences.
  static Dictionary FromSentences(std::span<const Sentence> sentences);
  // "word<TAB>count" per line (count optional, defaults to 1). Throws
  // IoError/DataError.
  static Dictionary Load(const std::filesystem::path& path);
  static Dictionary Read(std::istream& in);

  const std::unordered_map<std::string, std::uint64_t>& entries() const {
    return freq_;
  }

 private:
  std::unordered_map<std::string, std::uint64_t> freq_;
};

using StopwordSet = std::unordered_set<std::string>;

// Version tag of the bundled English stopword list.
inline constexpr std::string_view kStopwordListVersion = "en-1";

// The bundled, fixed English stopword list (lowercase).
const StopwordSet& DefaultStopwords();
// The bundled list in its canonical (sorted) order, for printing.
std::span<const std::string_view> DefaultStopwordList();

// One word per line; '#' starts a comment. Throws IoError.
StopwordSet LoadStopwords(const std::filesystem::path& path);

// "token<TAB>count" lines into a sorted map. Throws IoError/DataError.
std::map<std::string, std::uint64_t> LoadTokenCounts(
    const std::filesystem::path& path);

}  // namespace draftrev
