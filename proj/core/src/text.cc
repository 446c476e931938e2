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

#include "draftrev/text.h"

#include <charconv>

#include "draftrev/error.h"

namespace draftrev {

namespace {

// Returns the decoded scalar and advances `pos`, or nullopt on a malformed
// sequence.
std::optional<char32_t> DecodeOne(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings, surrogates and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  pos += len;
  return cp;
}

bool InRange(char32_t cp, char32_t lo, char32_t hi) {
  return cp >= lo && cp <= hi;
}

}  // namespace

bool IsValidUtf8(std::string_view bytes) {
  return DecodeUtf8(bytes).has_value();
}

std::optional<std::u32string> DecodeUtf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    auto cp = DecodeOne(bytes, pos);
    if (!cp) return std::nullopt;
    out.push_back(*cp);
  }
  return out;
}

std::u32string DecodeUtf8OrThrow(std::string_view bytes) {
  auto decoded = DecodeUtf8(bytes);
  if (!decoded) throw DataError("invalid UTF-8");
  return std::move(*decoded);
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size());
  for (char32_t cp : code_points) AppendUtf8(cp, out);
  return out;
}

std::size_t Utf8Length(std::string_view bytes) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (!DecodeOne(bytes, pos)) throw DataError("invalid UTF-8");
    ++n;
  }
  return n;
}

bool IsSpace(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\v':
    case U'\f':
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return InRange(cp, 0x2000, 0x200A);
  }
}

bool IsPunct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0x00A1:  // ¡
    case 0x00A7:  // §
    case 0x00AB:  // «
    case 0x00B6:  // ¶
    case 0x00B7:  // ·
    case 0x00BB:  // »
    case 0x00BF:  // ¿
      return true;
    default:
      return InRange(cp, 0x2010, 0x2027) || InRange(cp, 0x2030, 0x205E) ||
             InRange(cp, 0x3001, 0x3003) || InRange(cp, 0x3008, 0x3011) ||
             InRange(cp, 0xFF01, 0xFF0F);
  }
}

bool IsDigit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool IsHiragana(char32_t cp) { return InRange(cp, 0x3040, 0x309F); }
bool IsKatakana(char32_t cp) { return InRange(cp, 0x30A0, 0x30FF); }
bool IsCjkIdeograph(char32_t cp) { return InRange(cp, 0x4E00, 0x9FFF); }
bool IsGreek(char32_t cp) {
  return InRange(cp, 0x0370, 0x03FF) || InRange(cp, 0x1F00, 0x1FFF);
}

bool IsAlphabetic(char32_t cp) {
  if (cp < 0x80) return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  if (cp == 0x00D7 || cp == 0x00F7) return false;  // × ÷
  return InRange(cp, 0x00C0, 0x024F) || InRange(cp, 0x0370, 0x03FF) ||
         InRange(cp, 0x0400, 0x04FF) || InRange(cp, 0x1E00, 0x1FFF) ||
         IsHiragana(cp) || IsKatakana(cp) || IsCjkIdeograph(cp) ||
         InRange(cp, 0xAC00, 0xD7AF);
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string CollapseWhitespace(std::string_view s) {
  auto cps = DecodeUtf8(s);
  if (!cps) {
    // Fall back to byte-wise handling of ASCII whitespace.
    cps.emplace(s.begin(), s.end());
  }
  std::u32string out;
  bool pending_space = false;
  for (char32_t cp : *cps) {
    if (IsSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  return EncodeUtf8(out);
}

std::string NormalizeForLookup(std::string_view s) {
  return ToLowerAscii(CollapseWhitespace(s));
}

std::string Join(std::span<const std::string> tokens,
                 std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.append(separator);
    out.append(tokens[i]);
  }
  return out;
}

bool IsMaskToken(std::string_view token) { return token == kMaskToken; }

bool IsPunctuationToken(std::string_view token) {
  if (token.empty() || IsMaskToken(token)) return false;
  auto cps = DecodeUtf8(token);
  if (!cps) return false;
  for (char32_t cp : *cps) {
    if (!IsPunct(cp)) return false;
  }
  return true;
}

bool IsWordToken(std::string_view token) {
  if (IsMaskToken(token)) return false;
  auto cps = DecodeUtf8(token);
  if (!cps) return false;
  for (char32_t cp : *cps) {
    if (IsAlphabetic(cp) || IsDigit(cp)) return true;
  }
  return false;
}

bool IsAlphabeticToken(std::string_view token) {
  auto cps = DecodeUtf8(token);
  if (!cps || cps->empty()) return false;
  const auto& v = *cps;
  if (!IsAlphabetic(v.front()) || !IsAlphabetic(v.back())) return false;
  for (char32_t cp : v) {
    if (!IsAlphabetic(cp) && cp != U'\'' && cp != U'-' && cp != 0x2019) {
      return false;
    }
  }
  return true;
}

bool ContainsDigit(std::string_view token) {
  for (char c : token) {
    if (c >= '0' && c <= '9') return true;
  }
  return false;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace draftrev
