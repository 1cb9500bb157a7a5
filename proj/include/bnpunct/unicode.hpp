// Copyright 2026 The bnpunct Authors
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bnpunct::unicode {

// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

// Canonical composition (NFC).
std::string nfc(std::string_view utf8);

bool is_whitespace(char32_t cp);

// Punctuation (general category P*) and non-whitespace control characters.
bool is_punct_or_control(char32_t cp);

// One UTF-8 string per code point.
std::vector<std::string> code_points(std::string_view utf8);

}  // namespace bnpunct::unicode
