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

// Category -> synonym lists. The lexicon file stands in for the manually
// disambiguated synsets a lexical database would provide; the same line
// format also carries the readable category names used by the direct
// approach.
//
//   # comment
//   fuel: fuel | combustible | combustible material
//   barley:
//
// Backslash escapes: \| \# \: \\ . Anything else after a backslash is an
// error.

#ifndef CATVEC_LEXICON_HPP_
#define CATVEC_LEXICON_HPP_

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catvec/corpus.hpp"
#include "catvec/term.hpp"

namespace catvec {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Ordered so that iteration, and everything built from it, is deterministic.
using TermTable = std::map<std::string, std::vector<Term>>;

/// Readable names for category codes ("bop" -> balance of payments).
/// Codes without an entry are named by their hyphen-separated pieces.
struct CategoryNames {
  TermTable entries;
};

struct SynsetMap {
  TermTable entries;

  bool contains(const std::string& category) const {
    return entries.count(category) != 0;
  }
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

namespace detail {

inline void push_unique(std::vector<Term>& terms, Term t) {
  if (std::find(terms.begin(), terms.end(), t) == terms.end())
    terms.push_back(std::move(t));
}

// Splits on unescaped '|' and resolves escapes.
inline std::vector<std::string> split_synonyms(std::string_view s,
                                               std::size_t line_no) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\') {
      if (i + 1 >= s.size()) throw FormatError("dangling escape", line_no);
      char e = s[++i];
      if (e != '|' && e != '#' && e != ':' && e != '\\')
        throw FormatError(std::string("unknown escape \\") + e, line_no);
      out.back().push_back(e);
    } else if (c == '|') {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  return out;
}

// Strips an unescaped '#' comment.
inline std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\') {
      ++i;
    } else if (line[i] == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

inline std::size_t find_unescaped(std::string_view s, char target) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\')
      ++i;
    else if (s[i] == target)
      return i;
  }
  return std::string_view::npos;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Parses the line format into an ordered table. Terms are tokenized with
/// preprocess() and de-duplicated per category.
inline TermTable parse_term_table(std::string_view text) {
  TermTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    std::size_t colon = detail::find_unescaped(line, ':');
    if (colon == std::string_view::npos)
      throw FormatError("expected 'category: synonym | ...'", line_no);
    std::string category = detail::to_lower(detail::trim(line.substr(0, colon)));
    if (category.empty()) throw FormatError("empty category name", line_no);
    if (table.count(category))
      throw FormatError("duplicate category '" + category + "'", line_no);
    std::vector<Term>& terms = table[category];
    std::string_view rest = detail::trim(line.substr(colon + 1));
    if (rest.empty()) continue;
    for (const std::string& syn : detail::split_synonyms(rest, line_no)) {
      Term t = preprocess(syn);
      if (t.empty())
        throw FormatError("empty synonym for '" + category + "'", line_no);
      detail::push_unique(terms, std::move(t));
    }
  }
  return table;
}

inline CategoryNames parse_category_names(std::string_view text) {
  return {parse_term_table(text)};
}

inline CategoryNames load_category_names(const std::string& path) {
  return parse_category_names(detail::read_file(path));
}

/// Name terms of a category: its entry in `names` when present, otherwise
/// each '-'-separated piece of the code as its own term ("iron-steel" ->
/// iron, steel).
inline std::vector<Term> category_name_terms(const std::string& category,
                                             const CategoryNames& names = {}) {
  auto it = names.entries.find(category);
  if (it != names.entries.end() && !it->second.empty()) return it->second;
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos <= category.size()) {
    std::size_t end = category.find('-', pos);
    if (end == std::string::npos) end = category.size();
    Term t = preprocess(std::string_view(category).substr(pos, end - pos));
    if (!t.empty()) detail::push_unique(terms, std::move(t));
    pos = end + 1;
  }
  return terms;
}

/// Parses lexicon text. Each category's own name terms are prepended when
/// the file leaves them out.
inline SynsetMap parse_lexicon(std::string_view text,
                               const CategoryNames& names = {}) {
  SynsetMap m{parse_term_table(text)};
  for (auto& [category, terms] : m.entries) {
    std::vector<Term> merged;
    for (Term& t : category_name_terms(category, names))
      detail::push_unique(merged, std::move(t));
    for (Term& t : terms) detail::push_unique(merged, std::move(t));
    terms = std::move(merged);
  }
  return m;
}

inline SynsetMap load_lexicon(const std::string& path,
                              const CategoryNames& names = {}) {
  return parse_lexicon(detail::read_file(path), names);
}

/// Full synonym list of a category; categories absent from the map fall
/// back to their name terms.
inline std::vector<Term> expand_category(const std::string& category,
                                         const SynsetMap& m,
                                         const CategoryNames& names = {}) {
  auto it = m.entries.find(category);
  if (it == m.entries.end()) return category_name_terms(category, names);
  return it->second;
}

}  // namespace catvec

#endif  // CATVEC_LEXICON_HPP_
