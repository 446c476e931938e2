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

// UTF-8 helpers and the character classes shared by all modules.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace draftrev {

// The literal gap marker writers put where they could not find the wording.
inline constexpr std::string_view kMaskToken = "<*>";

bool IsValidUtf8(std::string_view bytes);

// Decodes UTF-8 into Unicode scalar values. Returns nullopt on malformed
// input (overlong forms, surrogates, truncated sequences).
std::optional<std::u32string> DecodeUtf8(std::string_view bytes);

// Like DecodeUtf8 but throws DataError on malformed input.
std::u32string DecodeUtf8OrThrow(std::string_view bytes);

std::string EncodeUtf8(std::u32string_view code_points);
void AppendUtf8(char32_t cp, std::string& out);

// Number of scalar values; throws DataError on malformed input.
std::size_t Utf8Length(std::string_view bytes);

bool IsSpace(char32_t cp);
bool IsPunct(char32_t cp);
bool IsAlphabetic(char32_t cp);
bool IsDigit(char32_t cp);
bool IsHiragana(char32_t cp);
bool IsKatakana(char32_t cp);
bool IsCjkIdeograph(char32_t cp);
bool IsGreek(char32_t cp);

// ASCII-only lowercasing; other bytes pass through unchanged.
std::string ToLowerAscii(std::string_view s);

// Lowercase, trim, and collapse whitespace runs to a single space.
std::string NormalizeForLookup(std::string_view s);

// Trims and collapses whitespace runs without changing case.
std::string CollapseWhitespace(std::string_view s);

// Shortest decimal form that parses back to exactly `v`.
std::string FormatDouble(double v);

std::string Join(std::span<const std::string> tokens,
                 std::string_view separator = " ");

// Token classification helpers used across metrics and quality checks.
bool IsMaskToken(std::string_view token);
bool IsPunctuationToken(std::string_view token);
// True if the token contains at least one letter or digit.
bool IsWordToken(std::string_view token);
// True if every character is a letter (apostrophes and inner hyphens
// allowed), e.g. "corpus", "don't", "state-of-the-art".
bool IsAlphabeticToken(std::string_view token);
bool ContainsDigit(std::string_view token);

}  // namespace draftrev
