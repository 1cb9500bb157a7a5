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

#include "bnpunct/punct.hpp"

namespace bnpunct {

std::string_view label_name(PunctClass c) {
  switch (c) {
    case PunctClass::kO:
      return "O";
    case PunctClass::kPeriod:
      return "PERIOD";
    case PunctClass::kComma:
      return "COMMA";
    case PunctClass::kQuestion:
      return "QUESTION";
    case PunctClass::kExclamation:
      return "EXCLAMATION";
    case PunctClass::kIgnore:
      return "IGNORE";
  }
  return "IGNORE";
}

std::optional<PunctClass> parse_label_name(std::string_view name) {
  for (PunctClass c : kAllClasses) {
    if (label_name(c) == name) return c;
  }
  if (name == "IGNORE") return PunctClass::kIgnore;
  return std::nullopt;
}

std::string_view surface_mark(PunctClass c) {
  switch (c) {
    case PunctClass::kPeriod:
      return "।";
    case PunctClass::kComma:
      return ",";
    case PunctClass::kQuestion:
      return "?";
    case PunctClass::kExclamation:
      return "!";
    default:
      return "";
  }
}

std::optional<PunctClass> class_for_mark(char32_t cp) {
  switch (cp) {
    case kDari:
      return PunctClass::kPeriod;
    case U',':
      return PunctClass::kComma;
    case U'?':
      return PunctClass::kQuestion;
    case U'!':
      return PunctClass::kExclamation;
    default:
      return std::nullopt;
  }
}

}  // namespace bnpunct
