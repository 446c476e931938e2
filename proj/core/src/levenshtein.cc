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

#include "draftrev/levenshtein.h"

#include "draftrev/text.h"

namespace draftrev {

std::size_t LevenshteinChars(std::string_view a, std::string_view b) {
  const std::u32string ca = DecodeUtf8OrThrow(a);
  const std::u32string cb = DecodeUtf8OrThrow(b);
  return EditDistance<char32_t>(ca, cb);
}

}  // namespace draftrev
