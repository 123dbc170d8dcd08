// Copyright 2026 The catvec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reuters-format newswire collections: record parsing, tokenization,
// positional train/test partitioning and collection statistics.

#ifndef CATVEC_CORPUS_HPP_
#define CATVEC_CORPUS_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace catvec {

enum class Split { Training, Test };

inline const char* split_name(Split s) {
  return s == Split::Training ? "TRAINING-SET" : "TEST-SET";
}

struct Document {
  std::uint64_t doc_id = 0;
  Split split = Split::Training;
  // The file's own TRAINING-SET/TEST-SET tag. Kept for re-emission only;
  // partitioning is positional.
  std::string annotation;
  std::string date;
  std::string title;
  std::string body;
  std::set<std::string> topics;

  std::string text() const { return title + "\n" + body; }

  friend bool operator==(const Document&, const Document&) = default;
};

struct Collection {
  std::vector<Document> documents;
  // Sorted, duplicate-free. L is categories.size().
  std::vector<std::string> categories;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }

  friend bool operator==(const Collection&, const Collection&) = default;
};

struct CollectionStats {
  std::size_t doc_count = 0;
  std::size_t word_occurrences = 0;
  double words_per_doc_avg = 0.0;
  std::size_t docs_with_topics = 0;
  double docs_with_topics_pct = 0.0;
  std::size_t topic_occurrences = 0;
  double topics_per_doc_avg = 0.0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset,
             std::uint64_t last_doc_id)
      : std::runtime_error(what + " at byte " + std::to_string(offset) +
                           " (last good doc_id " +
                           std::to_string(last_doc_id) + ")"),
        offset_(offset),
        last_doc_id_(last_doc_id) {}

  std::size_t offset() const { return offset_; }
  std::uint64_t last_doc_id() const { return last_doc_id_; }

 private:
  std::size_t offset_;
  std::uint64_t last_doc_id_;
};

namespace detail {

inline bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_alnum(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// True iff the token is a number once commas and periods are stripped.
inline bool is_numeric_token(std::string_view tok) {
  bool any = false;
  for (char c : tok) {
    if (c == ',' || c == '.') continue;
    if (!is_digit(c)) return false;
    any = true;
  }
  return any;
}

// Bytes >= 0x80 are UTF-8 payload and stay inside tokens.
inline bool is_token_char(char c) {
  return is_alnum(c) || c == '\'' || static_cast<unsigned char>(c) >= 0x80;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string with_thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  int count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count > 0 && count % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++count;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Splits text into lowercase tokens. Control characters, punctuation and
/// separators such as '/' break tokens and are dropped. Whole numbers
/// ("3,211", "1986", "2.5") are removed; alphanumerics like "g7" survive.
/// Apostrophes inside a word are kept. No stemming, no stopword list.
inline std::vector<std::string> preprocess(std::string_view text) {
  std::vector<std::string> tokens;
  for (std::string_view chunk : detail::split_ws(text)) {
    if (detail::is_numeric_token(chunk)) continue;
    std::size_t i = 0;
    while (i < chunk.size()) {
      while (i < chunk.size() && !detail::is_token_char(chunk[i])) ++i;
      std::size_t j = i;
      while (j < chunk.size() && detail::is_token_char(chunk[j])) ++j;
      std::string_view piece = chunk.substr(i, j - i);
      i = j;
      while (!piece.empty() && piece.front() == '\'') piece.remove_prefix(1);
      while (!piece.empty() && piece.back() == '\'') piece.remove_suffix(1);
      if (piece.empty() || detail::is_numeric_token(piece)) continue;
      tokens.push_back(detail::to_lower(piece));
    }
  }
  return tokens;
}

namespace detail {

constexpr std::array<std::string_view, 6> kCategoryFields = {
    "TOPICS", "PLACES", "PEOPLE", "ORGS", "EXCHANGES", "COMPANIES"};

// Returns the field key if the line opens a category field ("TOPICS:").
inline std::string_view field_key(std::string_view line) {
  for (std::string_view key : kCategoryFields) {
    if (line.size() > key.size() && line.substr(0, key.size()) == key &&
        line[key.size()] == ':')
      return key;
  }
  return {};
}

inline bool is_header(std::string_view line) {
  return line.substr(0, 10) == "PATTERN-ID";
}

// "REUTER" optionally followed by non-alphanumeric residue such as ^C.
inline bool is_sentinel(std::string_view line) {
  if (line.substr(0, 6) != "REUTER") return false;
  return std::none_of(line.begin() + 6, line.end(),
                      [](char c) { return is_alnum(c); });
}

struct Line {
  std::string_view text;  // trimmed
  std::size_t offset;
};

inline std::vector<Line> split_lines(std::string_view data) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    lines.push_back({trim(data.substr(pos, end - pos)), pos});
    pos = end + 1;
  }
  return lines;
}

inline void finalize_categories(Collection& c) {
  std::set<std::string> seen;
  for (const Document& d : c.documents) seen.insert(d.topics.begin(), d.topics.end());
  c.categories.assign(seen.begin(), seen.end());
}

}  // namespace detail

/// Parses records in the PATTERN-ID ... REUTER layout. The category set is
/// the sorted set of TOPICS names seen; use restrict_categories() to impose
/// a declared list. Every document is tagged Training until split.
inline Collection parse_collection(std::string_view data) {
  using detail::Line;
  const std::vector<Line> lines = detail::split_lines(data);
  Collection out;
  std::set<std::uint64_t> ids;
  std::uint64_t last_good = 0;
  std::size_t i = 0;

  auto fail = [&](const std::string& msg, std::size_t offset) {
    throw ParseError(msg, offset, last_good);
  };

  while (i < lines.size()) {
    const Line& head = lines[i];
    if (head.text.empty()) {
      ++i;
      continue;
    }
    if (!detail::is_header(head.text))
      fail("expected PATTERN-ID header", head.offset);

    Document doc;
    {
      auto parts = detail::split_ws(head.text);
      std::uint64_t id = 0;
      bool ok = parts.size() >= 2 && !parts[1].empty() &&
                std::all_of(parts[1].begin(), parts[1].end(), detail::is_digit);
      if (ok) {
        try {
          id = std::stoull(std::string(parts[1]));
        } catch (const std::out_of_range&) {
          ok = false;
        }
      }
      if (!ok || id == 0) fail("bad PATTERN-ID number", head.offset);
      if (!ids.insert(id).second)
        fail("duplicate doc_id " + std::to_string(id), head.offset);
      doc.doc_id = id;
      if (parts.size() >= 3) doc.annotation = std::string(parts[2]);
    }
    ++i;

    bool saw_field = false;
    bool saw_topics = false;
    bool have_title = false;
    while (i < lines.size()) {
      const Line& ln = lines[i];
      if (detail::is_header(ln.text)) break;
      std::string_view key = detail::field_key(ln.text);
      if (!key.empty()) {
        const std::string end_marker = "END-" + std::string(key);
        std::string content;
        const std::size_t start = ln.offset;
        std::string_view rest = ln.text.substr(key.size() + 1);
        bool closed = false;
        while (true) {
          std::size_t at = rest.find(end_marker);
          if (at != std::string_view::npos) {
            content.append(rest.substr(0, at));
            closed = true;
            break;
          }
          content.append(rest);
          content.push_back(' ');
          ++i;
          if (i >= lines.size() || detail::is_header(lines[i].text) ||
              detail::is_sentinel(lines[i].text))
            break;
          rest = lines[i].text;
        }
        if (!closed) fail("missing " + end_marker, start);
        if (key == "TOPICS") {
          saw_topics = true;
          for (std::string_view t : detail::split_ws(content))
            doc.topics.insert(detail::to_lower(t));
        }
        saw_field = true;
        ++i;
        continue;
      }
      if (!saw_field) {
        if (!ln.text.empty()) {
          if (!doc.date.empty()) doc.date.push_back(' ');
          doc.date.append(ln.text);
        }
        ++i;
        continue;
      }
      have_title = true;
      break;
    }
    if (!saw_topics)
      fail("missing END-TOPICS", i < lines.size() ? lines[i].offset : data.size());

    bool closed = false;
    std::vector<std::string_view> body;
    if (have_title && detail::is_sentinel(lines[i].text)) {
      closed = true;
      ++i;
    } else if (have_title) {
      doc.title = std::string(lines[i].text);
      ++i;
      while (i < lines.size()) {
        if (detail::is_sentinel(lines[i].text)) {
          closed = true;
          ++i;
          break;
        }
        if (detail::is_header(lines[i].text)) break;
        body.push_back(lines[i].text);
        ++i;
      }
    }
    if (!closed)
      fail("missing REUTER sentinel for doc_id " + std::to_string(doc.doc_id),
           i < lines.size() ? lines[i].offset : data.size());

    while (!body.empty() && body.front().empty()) body.erase(body.begin());
    while (!body.empty() && body.back().empty()) body.pop_back();
    for (std::size_t b = 0; b < body.size(); ++b) {
      if (b) doc.body.push_back('\n');
      doc.body.append(body[b]);
    }
    last_good = doc.doc_id;
    out.documents.push_back(std::move(doc));
  }
  detail::finalize_categories(out);
  return out;
}

inline Collection parse_collection(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_collection(std::string_view(data));
}

/// Emits the record layout that parse_collection reads.
inline std::string serialize_collection(const Collection& c) {
  std::string out;
  for (const Document& d : c.documents) {
    out += "     PATTERN-ID " + std::to_string(d.doc_id) + " " +
           (d.annotation.empty() ? std::string(split_name(d.split))
                                 : d.annotation) +
           "\n";
    if (!d.date.empty()) out += "    " + d.date + "\n";
    out += "    TOPICS:";
    for (const std::string& t : d.topics) out += " " + t;
    out += " END-TOPICS\n";
    for (std::size_t f = 1; f < detail::kCategoryFields.size(); ++f) {
      std::string key(detail::kCategoryFields[f]);
      out += "    " + key + ": END-" + key + "\n";
    }
    out += "    " + d.title + "\n";
    if (!d.body.empty()) {
      std::string_view body = d.body;
      std::size_t pos = 0;
      while (pos <= body.size()) {
        std::size_t end = body.find('\n', pos);
        if (end == std::string_view::npos) end = body.size();
        out += "    ";
        out.append(body.substr(pos, end - pos));
        out += "\n";
        pos = end + 1;
      }
    }
    out += "     REUTER\n";
  }
  return out;
}

/// Imposes a declared category list. Topics outside it are dropped from the
/// documents; the number of dropped (document, topic) pairs is returned.
inline std::size_t restrict_categories(Collection& c,
                                       std::vector<std::string> declared) {
  for (std::string& name : declared) name = detail::to_lower(detail::trim(name));
  std::sort(declared.begin(), declared.end());
  declared.erase(std::unique(declared.begin(), declared.end()), declared.end());
  std::size_t dropped = 0;
  for (Document& d : c.documents) {
    for (auto it = d.topics.begin(); it != d.topics.end();) {
      if (!std::binary_search(declared.begin(), declared.end(), *it)) {
        it = d.topics.erase(it);
        ++dropped;
      } else {
        ++it;
      }
    }
  }
  c.categories = std::move(declared);
  return dropped;
}

/// First train_count documents in file order train, the rest test. Both
/// halves keep the full category list.
inline std::pair<Collection, Collection> split_collection(const Collection& c,
                                                          std::size_t train_count) {
  if (train_count > c.documents.size())
    throw std::invalid_argument("train_count " + std::to_string(train_count) +
                                " exceeds collection size " +
                                std::to_string(c.documents.size()));
  Collection train, test;
  train.categories = test.categories = c.categories;
  train.documents.reserve(train_count);
  test.documents.reserve(c.documents.size() - train_count);
  for (std::size_t i = 0; i < c.documents.size(); ++i) {
    Document d = c.documents[i];
    if (i < train_count) {
      d.split = Split::Training;
      train.documents.push_back(std::move(d));
    } else {
      d.split = Split::Test;
      test.documents.push_back(std::move(d));
    }
  }
  return {std::move(train), std::move(test)};
}

inline CollectionStats collection_stats(const Collection& c) {
  CollectionStats s;
  s.doc_count = c.documents.size();
  for (const Document& d : c.documents) {
    s.word_occurrences += preprocess(d.title).size() + preprocess(d.body).size();
    if (!d.topics.empty()) ++s.docs_with_topics;
    s.topic_occurrences += d.topics.size();
  }
  if (s.doc_count > 0) {
    const double n = static_cast<double>(s.doc_count);
    s.words_per_doc_avg = static_cast<double>(s.word_occurrences) / n;
    s.docs_with_topics_pct = 100.0 * static_cast<double>(s.docs_with_topics) / n;
    s.topics_per_doc_avg = static_cast<double>(s.topic_occurrences) / n;
  }
  return s;
}

inline nlohmann::json to_json(const CollectionStats& s) {
  return {{"doc_count", s.doc_count},
          {"word_occurrences", s.word_occurrences},
          {"words_per_doc_avg", s.words_per_doc_avg},
          {"docs_with_topics", s.docs_with_topics},
          {"docs_with_topics_pct", s.docs_with_topics_pct},
          {"topic_occurrences", s.topic_occurrences},
          {"topics_per_doc_avg", s.topics_per_doc_avg}};
}

/// Aligned table with Training/Test/Total columns, one row per statistic.
inline std::string render_stats_table(const CollectionStats& train,
                                      const CollectionStats& test,
                                      const CollectionStats& total) {
  using detail::format_fixed;
  using detail::with_thousands;
  struct Row {
    const char* group;
    const char* label;
    std::array<std::string, 3> cells;
  };
  auto ints = [](std::size_t a, std::size_t b, std::size_t c) {
    return std::array<std::string, 3>{with_thousands(a), with_thousands(b),
                                      with_thousands(c)};
  };
  auto reals = [](double a, double b, double c, int dec) {
    return std::array<std::string, 3>{format_fixed(a, dec), format_fixed(b, dec),
                                      format_fixed(c, dec)};
  };
  const std::vector<Row> rows = {
      {"Docs.", "Number", ints(train.doc_count, test.doc_count, total.doc_count)},
      {"Words", "Occurrences",
       ints(train.word_occurrences, test.word_occurrences, total.word_occurrences)},
      {"", "Doc. average",
       reals(train.words_per_doc_avg, test.words_per_doc_avg,
             total.words_per_doc_avg, 0)},
      {"Docs. with 1+ Topics", "Number",
       ints(train.docs_with_topics, test.docs_with_topics, total.docs_with_topics)},
      {"", "Percentage",
       reals(train.docs_with_topics_pct, test.docs_with_topics_pct,
             total.docs_with_topics_pct, 0)},
      {"Topics", "Occurrences",
       ints(train.topic_occurrences, test.topic_occurrences,
            total.topic_occurrences)},
      {"", "Doc. Average",
       reals(train.topics_per_doc_avg, test.topics_per_doc_avg,
             total.topics_per_doc_avg, 2)},
  };
  std::size_t wg = 0, wl = 0;
  std::array<std::size_t, 3> wc = {8, 4, 5};
  for (const Row& r : rows) {
    wg = std::max(wg, std::string_view(r.group).size());
    wl = std::max(wl, std::string_view(r.label).size());
    for (std::size_t k = 0; k < 3; ++k) wc[k] = std::max(wc[k], r.cells[k].size());
  }
  auto pad_right = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  auto pad_left = [](const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };
  std::ostringstream os;
  os << pad_right("", wg) << " | " << pad_right("", wl) << " | "
     << pad_left("Training", wc[0]) << " | " << pad_left("Test", wc[1]) << " | "
     << pad_left("Total", wc[2]) << "\n";
  os << std::string(wg + wl + wc[0] + wc[1] + wc[2] + 12, '-') << "\n";
  for (const Row& r : rows) {
    os << pad_right(r.group, wg) << " | " << pad_right(r.label, wl) << " | "
       << pad_left(r.cells[0], wc[0]) << " | " << pad_left(r.cells[1], wc[1])
       << " | " << pad_left(r.cells[2], wc[2]) << "\n";
  }
  return os.str();
}

}  // namespace catvec

#endif  // CATVEC_CORPUS_HPP_
