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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bnpunct/punct.hpp"

namespace bnpunct {

// Counts indexed [gold][predicted] by class_index.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> counts{};

  std::uint64_t at(PunctClass gold, PunctClass pred) const {
    return counts[class_index(gold)][class_index(pred)];
  }
  std::uint64_t support(PunctClass gold) const;
  std::uint64_t predicted(PunctClass pred) const;
  std::uint64_t total() const;
  std::uint64_t trace() const;

  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Positions whose gold label is IGNORE are skipped. Throws DataError on a
// length mismatch or an IGNORE prediction at a scored position.
ConfusionMatrix confusion(std::span<const PunctClass> gold, std::span<const PunctClass> pred);

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Scores&, const Scores&) = default;
};

// F1 from precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

// Any zero denominator yields a score of 0.
Scores prf(const ConfusionMatrix& cm, PunctClass c);

// Micro average over a set of classes: TP/FP/FN summed before dividing.
Scores micro_prf(const ConfusionMatrix& cm, std::span<const PunctClass> classes);

struct ClassReport {
  Scores scores;
  std::uint64_t support = 0;
};

struct EvalReport {
  std::array<ClassReport, kNumClasses> per_class;  // by class_index
  Scores micro;  // over PERIOD, COMMA, QUESTION, EXCLAMATION
  Scores macro;  // unweighted mean of the same four classes
  double accuracy = 0.0;  // trace / total over all five classes
  bool accuracy_defined = false;  // false for an empty matrix
  ConfusionMatrix matrix;
  // Row-normalized percentages rounded to 2 decimals, rows and columns in
  // kDisplayOrder.
  std::array<std::array<double, kNumClasses>, kNumClasses> row_percent{};

  const ClassReport& of(PunctClass c) const { return per_class[class_index(c)]; }
};

EvalReport report(const ConfusionMatrix& cm);

// Per-class table, overall scores and accuracy as aligned plain text.
std::string format_report(const EvalReport& r);
// Confusion matrix as raw counts or row percentages, display order.
std::string format_confusion(const EvalReport& r, bool percent);
// One header row plus one row per class; tab-delimited.
std::string format_report_delimited(const EvalReport& r);

struct AblationEntry {
  std::string variant;   // e.g. "none", "alpha=0.10"
  std::string test_set;  // e.g. "News"
  EvalReport report;
};

// Rows: model variant x test set; columns: P/R/F1 for each punctuation class
// and overall, in percent with one decimal.
std::string ablation_text(std::span<const AblationEntry> entries);

// Tab-delimited with a header row; numbers in shortest round-trip form.
std::string ablation_delimited(std::span<const AblationEntry> entries);

struct AblationRow {
  std::string variant;
  std::string test_set;
  std::map<std::string, double> values;  // column name -> value
};
std::vector<AblationRow> parse_ablation_delimited(const std::string& text);

// Column names used in ablation_delimited after variant and test_set.
std::vector<std::string> ablation_columns();
std::map<std::string, double> ablation_values(const EvalReport& r);

}  // namespace bnpunct
