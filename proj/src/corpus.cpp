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

#include "bnpunct/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bnpunct/unicode.hpp"

namespace bnpunct {

std::string_view source_name(Source s) {
  switch (s) {
    case Source::kNews:
      return "news";
    case Source::kRef:
      return "ref";
    case Source::kAsr:
      return "asr";
    case Source::kSynthetic:
      return "synthetic";
    case Source::kOther:
      return "other";
  }
  return "other";
}

DatasetStats DatasetStats::from_counts(std::uint64_t period, std::uint64_t comma,
                                       std::uint64_t question,
                                       std::uint64_t exclamation,
                                       std::uint64_t o) {
  DatasetStats s;
  s.per_class[class_index(PunctClass::kPeriod)] = period;
  s.per_class[class_index(PunctClass::kComma)] = comma;
  s.per_class[class_index(PunctClass::kQuestion)] = question;
  s.per_class[class_index(PunctClass::kExclamation)] = exclamation;
  s.per_class[class_index(PunctClass::kO)] = o;
  for (auto n : s.per_class) s.total += n;
  return s;
}

std::string normalize_text(std::string_view raw) {
  // Stripping can bring a base letter and a combining sign together, hence
  // the second composition pass.
  std::u32string mapped;
  for (char32_t cp : unicode::decode(unicode::nfc(raw))) {
    if (cp == U'.') {
      mapped.push_back(kDari);
    } else if (class_for_mark(cp)) {
      mapped.push_back(cp);
    } else if (!unicode::is_punct_or_control(cp)) {
      mapped.push_back(cp);
    }
  }
  const std::u32string composed = unicode::decode(unicode::nfc(unicode::encode(mapped)));

  std::string out;
  bool pending_space = false;
  for (char32_t cp : composed) {
    if (unicode::is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    unicode::append(out, cp);
  }
  return out;
}

Document parse_labeled(std::string_view normalized) {
  Document doc;
  std::string word;
  bool last_marked = false;
  auto flush = [&](PunctClass label) {
    doc.tokens.push_back({std::move(word), label});
    word.clear();
    last_marked = label != PunctClass::kO;
  };

  for (char32_t cp : unicode::decode(normalized)) {
    if (unicode::is_whitespace(cp)) {
      if (!word.empty()) flush(PunctClass::kO);
    } else if (auto mark = class_for_mark(cp)) {
      if (!word.empty()) {
        flush(*mark);
      } else if (!doc.tokens.empty() && !last_marked) {
        doc.tokens.back().label = *mark;
        last_marked = true;
      }
    } else {
      unicode::append(word, cp);
    }
  }
  if (!word.empty()) flush(PunctClass::kO);
  return doc;
}

std::string render(const Document& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += doc.tokens[i].surface;
    out += surface_mark(doc.tokens[i].label);
  }
  return out;
}

bool is_well_formed(const Document& doc) {
  for (const auto& tok : doc.tokens) {
    if (tok.surface.empty() || !is_corpus_class(tok.label)) return false;
    for (char32_t cp : unicode::decode(tok.surface)) {
      if (unicode::is_whitespace(cp) || class_for_mark(cp)) return false;
    }
  }
  return true;
}

void write_tsv(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    for (const auto& tok : doc.tokens) {
      out << tok.surface << '\t' << label_name(tok.label) << '\n';
    }
    out << '\n';
  }
}

void save_tsv(std::span<const Document> docs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  write_tsv(out, docs);
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<Document> read_tsv(std::istream& in, Source source) {
  std::vector<Document> docs;
  Document current;
  auto finish = [&] {
    current.id = std::to_string(docs.size());
    current.source = source;
    docs.push_back(std::move(current));
    current = Document{};
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw DataError("line " + std::to_string(line_no) +
                      ": expected 2 tab-separated fields");
    }
    LabeledToken tok{line.substr(0, tab), PunctClass::kO};
    const auto label = parse_label_name(std::string_view(line).substr(tab + 1));
    if (!label || !is_corpus_class(*label)) {
      throw DataError("line " + std::to_string(line_no) + ": unknown label '" +
                      line.substr(tab + 1) + "'");
    }
    tok.label = *label;
    Document probe;
    probe.tokens.push_back(tok);
    if (!is_well_formed(probe)) {
      throw DataError("line " + std::to_string(line_no) + ": invalid surface '" +
                      tok.surface + "'");
    }
    current.tokens.push_back(std::move(tok));
  }
  if (!current.tokens.empty()) finish();
  return docs;
}

std::vector<Document> load_tsv(const std::filesystem::path& path, Source source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus: " + path.string());
  try {
    return read_tsv(in, source);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

DatasetStats stats(std::span<const Document> docs) {
  DatasetStats s;
  for (const auto& doc : docs) {
    for (const auto& tok : doc.tokens) {
      ++s.per_class[class_index(tok.label)];
      ++s.total;
    }
  }
  return s;
}

std::string format_stats(const DatasetStats& s) {
  std::ostringstream os;
  os << "total=" << s.total;
  for (PunctClass c : kDisplayOrder) os << ' ' << label_name(c) << '=' << s.count(c);
  return os.str();
}

}  // namespace bnpunct
