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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bnpunct {

// Error taxonomy; the CLI maps each kind onto a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: unknown keys, out-of-range hyper-parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (corpus files, checkpoints, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or gradient during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Label alphabet. The numeric order is also the argmax tie-break order.
enum class PunctClass : std::uint8_t {
  kO = 0,
  kPeriod = 1,
  kComma = 2,
  kQuestion = 3,
  kExclamation = 4,
  kIgnore = 255,  // non-final subword pieces, framing and pad positions
};

inline constexpr std::size_t kNumClasses = 5;

inline constexpr std::array<PunctClass, kNumClasses> kAllClasses = {
    PunctClass::kO, PunctClass::kPeriod, PunctClass::kComma,
    PunctClass::kQuestion, PunctClass::kExclamation};

// Punctuation classes only, in the column order used by reports.
inline constexpr std::array<PunctClass, 4> kPunctClasses = {
    PunctClass::kPeriod, PunctClass::kComma, PunctClass::kQuestion,
    PunctClass::kExclamation};

// Row/column order of rendered confusion matrices: punctuation first, O last.
inline constexpr std::array<PunctClass, kNumClasses> kDisplayOrder = {
    PunctClass::kPeriod, PunctClass::kComma, PunctClass::kQuestion,
    PunctClass::kExclamation, PunctClass::kO};

constexpr std::size_t class_index(PunctClass c) {
  return static_cast<std::size_t>(c);
}

constexpr PunctClass class_from_index(std::size_t i) {
  return static_cast<PunctClass>(i);
}

constexpr bool is_corpus_class(PunctClass c) {
  return static_cast<std::uint8_t>(c) < kNumClasses;
}

// "O", "PERIOD", ... as used in TSV files. IGNORE renders as "IGNORE".
std::string_view label_name(PunctClass c);
std::optional<PunctClass> parse_label_name(std::string_view name);

// Surface mark for a class; empty for O and IGNORE.
std::string_view surface_mark(PunctClass c);

// Maps a single code point onto its target class, if it is one of the four
// target marks.
std::optional<PunctClass> class_for_mark(char32_t cp);

inline constexpr char32_t kDari = U'।';

}  // namespace bnpunct
