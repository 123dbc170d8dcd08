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

// Sparse term-weight vectors, tf-idf document weighting and cosine
// similarity.

#ifndef CATVEC_VSM_HPP_
#define CATVEC_VSM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catvec/term.hpp"
#include "json.hpp"

namespace catvec {

using TermId = std::uint32_t;

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(const std::vector<Term>& terms) {
    for (const Term& t : terms) add(t);
  }

  // Returns the existing id when the term is already present.
  TermId add(const Term& t) {
    if (t.empty()) throw std::invalid_argument("empty term");
    std::string key = term_key(t);
    auto [it, inserted] = index_.try_emplace(key, static_cast<TermId>(terms_.size()));
    if (inserted) {
      terms_.push_back(t);
      max_len_ = std::max(max_len_, t.size());
    }
    return it->second;
  }

  std::optional<TermId> find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<TermId> find(const Term& t) const { return find(term_key(t)); }

  const Term& term(TermId id) const { return terms_.at(id); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t max_term_length() const { return max_len_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> index_;
  std::size_t max_len_ = 0;
};

/// Non-negative sparse vector, TermIds strictly increasing, no stored
/// zeros, euclidean norm cached at construction.
class SparseVector {
 public:
  using Entry = std::pair<TermId, double>;

  SparseVector() = default;

  // Accepts unsorted input; repeated ids are summed and zeros dropped.
  explicit SparseVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (const Entry& e : entries) {
      if (!std::isfinite(e.second) || e.second < 0.0)
        throw std::invalid_argument("weights must be finite and non-negative");
      if (!entries_.empty() && entries_.back().first == e.first)
        entries_.back().second += e.second;
      else
        entries_.push_back(e);
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
    double sq = 0.0;
    for (const Entry& e : entries_) sq += e.second * e.second;
    norm_ = std::sqrt(sq);
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double norm() const { return norm_; }

  double sum() const {
    double s = 0.0;
    for (const Entry& e : entries_) s += e.second;
    return s;
  }

  double weight(TermId id) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), id,
        [](const Entry& e, TermId v) { return e.first < v; });
    return it != entries_.end() && it->first == id ? it->second : 0.0;
  }

  SparseVector scaled(double factor) const {
    std::vector<Entry> out = entries_;
    for (Entry& e : out) e.second *= factor;
    return SparseVector(std::move(out));
  }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

/// Document frequencies over a fixed vocabulary plus the document count M.
class DfTable {
 public:
  DfTable() = default;
  DfTable(std::size_t doc_count, std::vector<std::size_t> df)
      : doc_count_(doc_count), df_(std::move(df)) {
    for (std::size_t v : df_)
      if (v > doc_count_) throw std::invalid_argument("df exceeds document count");
  }

  std::size_t doc_count() const { return doc_count_; }
  bool contains(TermId id) const { return id < df_.size() && df_[id] > 0; }
  std::size_t df(TermId id) const { return id < df_.size() ? df_[id] : 0; }
  const std::vector<std::size_t>& raw() const { return df_; }

  friend bool operator==(const DfTable&, const DfTable&) = default;

 private:
  std::size_t doc_count_ = 0;
  std::vector<std::size_t> df_;
};

using TermCounts = std::map<TermId, std::size_t>;

/// Greedy longest match, left to right. Tokens consumed by a multiword term
/// are not reused.
inline TermCounts match_terms(std::span<const std::string> tokens,
                              const Vocabulary& vocab) {
  TermCounts tf;
  const std::size_t max_len = vocab.max_term_length();
  std::size_t i = 0;
  std::string key;
  while (i < tokens.size()) {
    std::size_t longest = std::min(max_len, tokens.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      key.clear();
      for (std::size_t j = 0; j < len; ++j) {
        if (j) key.push_back(' ');
        key += tokens[i + j];
      }
      if (auto id = vocab.find(key)) {
        ++tf[*id];
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return tf;
}

inline DfTable build_df_table(std::span<const std::vector<std::string>> docs,
                              const Vocabulary& vocab) {
  std::vector<std::size_t> df(vocab.size(), 0);
  for (const auto& tokens : docs)
    for (const auto& [id, count] : match_terms(tokens, vocab)) ++df[id];
  return DfTable(docs.size(), std::move(df));
}

/// w = tf * log2(M / df). Terms missing from the table are dropped, and so
/// are terms with df == M (zero weight).
inline SparseVector document_vector(const TermCounts& tf, const DfTable& dft) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(tf.size());
  const double m = static_cast<double>(dft.doc_count());
  for (const auto& [id, count] : tf) {
    if (count == 0 || !dft.contains(id)) continue;
    double w = static_cast<double>(count) *
               std::log2(m / static_cast<double>(dft.df(id)));
    if (w > 0.0) entries.emplace_back(id, w);
  }
  return SparseVector(std::move(entries));
}

/// Cosine of the angle between a and b; 0 when either is empty.
inline double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto& x = a.entries();
  const auto& y = b.entries();
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      ++i;
    } else if (y[j].first < x[i].first) {
      ++j;
    } else {
      dot += x[i].second * y[j].second;
      ++i;
      ++j;
    }
  }
  if (dot == 0.0) return 0.0;
  return std::min(1.0, dot / (a.norm() * b.norm()));
}

/// Debug dump: {"id": ..., "terms": {"term": weight, ...}}.
inline nlohmann::json vector_to_json(const nlohmann::json& id,
                                     const SparseVector& v,
                                     const Vocabulary& vocab) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [tid, w] : v.entries()) terms[term_key(vocab.term(tid))] = w;
  return {{"id", id}, {"terms", std::move(terms)}};
}

}  // namespace catvec

#endif  // CATVEC_VSM_HPP_
