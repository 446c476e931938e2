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
// Pairs with a chosen overlap coefficient.

#pragma once

#include <string>

#include "draftrev/corpus.h"
#include "draftrev/lexicon.h"

namespace draftrev::testing {

// Distinct non-stopword content words: "qa", "qb", ..., "qaa", ...
inline std::string ContentWord(std::size_t i) {
  std::string w = "q";
  do {
    w += static_cast<char>('a' + i % 26);
    i /= 26;
  } while (i > 0);
  return w;
}

// Draft and reference with "size" content words each, "shared" of them in
// common: coefficient shared / size.
inline DraftPair OverlapPair(std::size_t size, std::size_t shared) {
  std::string draft;
  std::string ref;
  for (std::size_t i = 0; i < size; ++i) {
    draft += (i ? " the " : "The ") + ContentWord(i);
    ref += (i ? " of " : "Of ") + ContentWord(i < shared ? i : 1000 + i);
  }
  return DraftPair(Sentence(draft + " ."), Sentence(ref + " ."));
}

inline Dictionary OverlapDictionary(std::size_t size) {
  Dictionary d;
  for (std::size_t i = 0; i < size; ++i) {
    d.Add(ContentWord(i));
    d.Add(ContentWord(1000 + i));
  }
  d.Add("the");
  d.Add("of");
  return d;
}

}  // namespace draftrev::testing
