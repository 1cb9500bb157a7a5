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

#include "bnpunct/eval.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bnpunct {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

Scores from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  Scores s;
  s.precision = ratio(tp, tp + fp);
  s.recall = ratio(tp, tp + fn);
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::uint64_t ConfusionMatrix::support(PunctClass gold) const {
  std::uint64_t n = 0;
  for (auto v : counts[class_index(gold)]) n += v;
  return n;
}

std::uint64_t ConfusionMatrix::predicted(PunctClass pred) const {
  std::uint64_t n = 0;
  for (const auto& row : counts) n += row[class_index(pred)];
  return n;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t n = 0;
  for (const auto& row : counts) {
    for (auto v : row) n += v;
  }
  return n;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < kNumClasses; ++i) n += counts[i][i];
  return n;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    for (std::size_t j = 0; j < kNumClasses; ++j) counts[i][j] += o.counts[i][j];
  }
  return *this;
}

ConfusionMatrix confusion(std::span<const PunctClass> gold, std::span<const PunctClass> pred) {
  if (gold.size() != pred.size()) {
    throw DataError("confusion: " + std::to_string(gold.size()) + " gold labels vs " +
                    std::to_string(pred.size()) + " predictions");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == PunctClass::kIgnore) continue;
    if (!is_corpus_class(pred[i]) || !is_corpus_class(gold[i])) {
      throw DataError("confusion: invalid label at position " + std::to_string(i));
    }
    ++cm.counts[class_index(gold[i])][class_index(pred[i])];
  }
  return cm;
}

double f1_score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

Scores prf(const ConfusionMatrix& cm, PunctClass c) {
  const std::uint64_t tp = cm.at(c, c);
  return from_counts(tp, cm.predicted(c) - tp, cm.support(c) - tp);
}

Scores micro_prf(const ConfusionMatrix& cm, std::span<const PunctClass> classes) {
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (PunctClass c : classes) {
    const std::uint64_t t = cm.at(c, c);
    tp += t;
    fp += cm.predicted(c) - t;
    fn += cm.support(c) - t;
  }
  return from_counts(tp, fp, fn);
}

EvalReport report(const ConfusionMatrix& cm) {
  EvalReport r;
  r.matrix = cm;
  for (PunctClass c : kAllClasses) {
    r.per_class[class_index(c)] = ClassReport{prf(cm, c), cm.support(c)};
  }
  r.micro = micro_prf(cm, kPunctClasses);
  for (PunctClass c : kPunctClasses) {
    r.macro.precision += r.of(c).scores.precision;
    r.macro.recall += r.of(c).scores.recall;
    r.macro.f1 += r.of(c).scores.f1;
  }
  const double n = static_cast<double>(kPunctClasses.size());
  r.macro = Scores{r.macro.precision / n, r.macro.recall / n, r.macro.f1 / n};
  const std::uint64_t total = cm.total();
  r.accuracy_defined = total > 0;
  r.accuracy = ratio(cm.trace(), total);
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    const PunctClass gold = kDisplayOrder[i];
    const std::uint64_t row = cm.support(gold);
    for (std::size_t j = 0; j < kNumClasses; ++j) {
      const double pct = 100.0 * ratio(cm.at(gold, kDisplayOrder[j]), row);
      r.row_percent[i][j] = std::round(pct * 100.0) / 100.0;
    }
  }
  return r;
}

std::string format_report(const EvalReport& r) {
  std::ostringstream os;
  os << pad_right("class", 12) << pad_left("P", 8) << pad_left("R", 8) << pad_left("F1", 8)
     << pad_left("support", 10) << '\n';
  for (PunctClass c : kDisplayOrder) {
    const auto& cr = r.of(c);
    os << pad_right(std::string(label_name(c)), 12)
       << pad_left(fixed(100.0 * cr.scores.precision, 1), 8)
       << pad_left(fixed(100.0 * cr.scores.recall, 1), 8)
       << pad_left(fixed(100.0 * cr.scores.f1, 1), 8) << pad_left(std::to_string(cr.support), 10)
       << '\n';
  }
  os << pad_right("overall", 12) << pad_left(fixed(100.0 * r.micro.precision, 1), 8)
     << pad_left(fixed(100.0 * r.micro.recall, 1), 8) << pad_left(fixed(100.0 * r.micro.f1, 1), 8)
     << '\n';
  os << pad_right("macro", 12) << pad_left(fixed(100.0 * r.macro.precision, 1), 8)
     << pad_left(fixed(100.0 * r.macro.recall, 1), 8) << pad_left(fixed(100.0 * r.macro.f1, 1), 8)
     << '\n';
  os << "accuracy " << fixed(100.0 * r.accuracy, 1) << '%';
  if (!r.accuracy_defined) os << " (warning: no scored positions)";
  os << '\n';
  return os.str();
}

std::string format_confusion(const EvalReport& r, bool percent) {
  std::ostringstream os;
  os << pad_right("gold\\pred", 12);
  for (PunctClass c : kDisplayOrder) os << pad_left(std::string(label_name(c)), 13);
  os << '\n';
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    os << pad_right(std::string(label_name(kDisplayOrder[i])), 12);
    for (std::size_t j = 0; j < kNumClasses; ++j) {
      const std::string cell = percent ? fixed(r.row_percent[i][j], 2)
                                       : std::to_string(r.matrix.at(kDisplayOrder[i], kDisplayOrder[j]));
      os << pad_left(cell, 13);
    }
    os << '\n';
  }
  return os.str();
}

std::string format_report_delimited(const EvalReport& r) {
  std::ostringstream os;
  os << "class\tprecision\trecall\tf1\tsupport\n";
  for (PunctClass c : kDisplayOrder) {
    const auto& cr = r.of(c);
    os << label_name(c) << '\t' << shortest(cr.scores.precision) << '\t'
       << shortest(cr.scores.recall) << '\t' << shortest(cr.scores.f1) << '\t' << cr.support
       << '\n';
  }
  os << "micro\t" << shortest(r.micro.precision) << '\t' << shortest(r.micro.recall) << '\t'
     << shortest(r.micro.f1) << '\t' << r.matrix.total() << '\n';
  os << "macro\t" << shortest(r.macro.precision) << '\t' << shortest(r.macro.recall) << '\t'
     << shortest(r.macro.f1) << '\t' << r.matrix.total() << '\n';
  os << "accuracy\t" << shortest(r.accuracy) << "\t\t\t" << r.matrix.total() << '\n';
  return os.str();
}

std::vector<std::string> ablation_columns() {
  std::vector<std::string> cols;
  for (PunctClass c : kDisplayOrder) {
    for (const char* m : {"P", "R", "F1"}) cols.push_back(std::string(label_name(c)) + "_" + m);
  }
  for (const char* avg : {"micro", "macro"}) {
    for (const char* m : {"P", "R", "F1"}) cols.push_back(std::string(avg) + "_" + m);
  }
  cols.emplace_back("accuracy");
  return cols;
}

std::map<std::string, double> ablation_values(const EvalReport& r) {
  std::map<std::string, double> v;
  auto put = [&v](const std::string& prefix, const Scores& s) {
    v[prefix + "_P"] = s.precision;
    v[prefix + "_R"] = s.recall;
    v[prefix + "_F1"] = s.f1;
  };
  for (PunctClass c : kDisplayOrder) put(std::string(label_name(c)), r.of(c).scores);
  put("micro", r.micro);
  put("macro", r.macro);
  v["accuracy"] = r.accuracy;
  return v;
}

std::string ablation_text(std::span<const AblationEntry> entries) {
  std::size_t vw = 7, tw = 4;
  for (const auto& e : entries) {
    vw = std::max(vw, e.variant.size());
    tw = std::max(tw, e.test_set.size());
  }
  std::ostringstream os;
  os << pad_right("variant", vw) << "  " << pad_right("test", tw);
  for (PunctClass c : kPunctClasses) {
    os << " | " << pad_right(std::string(label_name(c)), 20);
  }
  os << " | " << pad_right("Overall", 20) << '\n';
  os << pad_right("", vw) << "  " << pad_right("", tw);
  for (int k = 0; k < 5; ++k) os << " | " << pad_left("P", 6) << pad_left("R", 7) << pad_left("F1", 7);
  os << '\n';
  for (const auto& e : entries) {
    os << pad_right(e.variant, vw) << "  " << pad_right(e.test_set, tw);
    auto cell = [&os](const Scores& s) {
      os << " | " << pad_left(fixed(100.0 * s.precision, 1), 6)
         << pad_left(fixed(100.0 * s.recall, 1), 7) << pad_left(fixed(100.0 * s.f1, 1), 7);
    };
    for (PunctClass c : kPunctClasses) cell(e.report.of(c).scores);
    cell(e.report.micro);
    os << '\n';
  }
  return os.str();
}

std::string ablation_delimited(std::span<const AblationEntry> entries) {
  const auto cols = ablation_columns();
  std::ostringstream os;
  os << "variant\ttest_set";
  for (const auto& c : cols) os << '\t' << c;
  os << '\n';
  for (const auto& e : entries) {
    const auto values = ablation_values(e.report);
    os << e.variant << '\t' << e.test_set;
    for (const auto& c : cols) os << '\t' << shortest(values.at(c));
    os << '\n';
  }
  return os.str();
}

std::vector<AblationRow> parse_ablation_delimited(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("ablation table: missing header");
  const auto header = split(line, '\t');
  if (header.size() < 2 || header[0] != "variant" || header[1] != "test_set") {
    throw DataError("ablation table: bad header");
  }
  std::vector<AblationRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != header.size()) {
      throw DataError("ablation table line " + std::to_string(line_no) + ": wrong field count");
    }
    AblationRow row{fields[0], fields[1], {}};
    for (std::size_t i = 2; i < fields.size(); ++i) {
      double v = 0.0;
      const auto* first = fields[i].data();
      const auto* last = first + fields[i].size();
      auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || res.ptr != last) {
        throw DataError("ablation table line " + std::to_string(line_no) + ": bad number '" +
                        fields[i] + "'");
      }
      row.values[header[i]] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bnpunct
