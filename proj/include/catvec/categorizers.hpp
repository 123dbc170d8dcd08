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

// The four category representations and document scoring against them.
//
//   Direct      weight 1 on each of the category's name terms.
//   Lexicon     weight 1 on every synonym of the category.
//   Training    wc = tf * log2(L / cf) over terms picked by category
//               frequency band and document frequency.
//   Integrated  lexicon terms seen in training text plus training terms,
//               each source L1-normalized per category, then summed.

#ifndef CATVEC_CATEGORIZERS_HPP_
#define CATVEC_CATEGORIZERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "catvec/corpus.hpp"
#include "catvec/lexicon.hpp"
#include "catvec/term.hpp"
#include "catvec/vsm.hpp"
#include "json.hpp"

namespace catvec {

enum class Approach { Direct, Lexicon, Training, Integrated };

inline const char* approach_name(Approach a) {
  switch (a) {
    case Approach::Direct: return "direct";
    case Approach::Lexicon: return "lexicon";
    case Approach::Training: return "training";
    case Approach::Integrated: return "integrated";
  }
  return "?";
}

inline const char* approach_label(Approach a) {
  switch (a) {
    case Approach::Direct: return "Direct";
    case Approach::Lexicon: return "Lexicon";
    case Approach::Training: return "Training";
    case Approach::Integrated: return "Integrated";
  }
  return "?";
}

inline Approach parse_approach(std::string_view name) {
  std::string n = detail::to_lower(name);
  if (n == "direct") return Approach::Direct;
  if (n == "lexicon" || n == "wordnet") return Approach::Lexicon;
  if (n == "training") return Approach::Training;
  if (n == "integrated") return Approach::Integrated;
  throw std::invalid_argument("unknown approach '" + std::string(name) + "'");
}

struct CategoryModel {
  Approach approach = Approach::Direct;
  Vocabulary vocab;
  std::vector<std::string> categories;
  // Parallel to categories; possibly empty vectors.
  std::vector<SparseVector> vectors;

  // Training selection bookkeeping: requested cap vs. band survivors.
  std::size_t requested_terms = 0;
  std::size_t candidate_terms = 0;

  std::size_t category_count() const { return categories.size(); }

  const SparseVector& vector_for(const std::string& category) const {
    auto it = std::lower_bound(categories.begin(), categories.end(), category);
    if (it == categories.end() || *it != category)
      throw std::out_of_range("unknown category '" + category + "'");
    return vectors[static_cast<std::size_t>(it - categories.begin())];
  }
};

struct ScoredAssignment {
  std::uint64_t doc_id = 0;
  std::string category;
  double score = 0.0;

  friend bool operator==(const ScoredAssignment&, const ScoredAssignment&) = default;
};

using TokenLists = std::vector<std::vector<std::string>>;

inline TokenLists tokenize(const Collection& c) {
  TokenLists out;
  out.reserve(c.documents.size());
  for (const Document& d : c.documents) out.push_back(preprocess(d.text()));
  return out;
}

namespace detail {

inline std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline CategoryModel build_unit_model(Approach approach,
                                      const std::vector<std::string>& categories,
                                      const std::vector<std::vector<Term>>& terms) {
  CategoryModel m;
  m.approach = approach;
  m.categories = categories;
  m.vectors.reserve(categories.size());
  for (const auto& list : terms) {
    std::vector<SparseVector::Entry> entries;
    for (const Term& t : list) entries.emplace_back(m.vocab.add(t), 1.0);
    // Repeated ids would sum; a set keeps weights at exactly 1.
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    m.vectors.emplace_back(std::move(entries));
  }
  return m;
}

}  // namespace detail

/// Name terms only, weight 1.
inline CategoryModel build_direct(std::vector<std::string> categories,
                                  const CategoryNames& names = {}) {
  categories = detail::sorted_unique(std::move(categories));
  std::vector<std::vector<Term>> terms;
  for (const std::string& c : categories) terms.push_back(category_name_terms(c, names));
  return detail::build_unit_model(Approach::Direct, categories, terms);
}

/// Synonym expansion, weight 1 on every synonym. Categories missing from
/// the map fall back to their direct terms.
inline CategoryModel build_lexicon(std::vector<std::string> categories,
                                   const SynsetMap& m,
                                   const CategoryNames& names = {}) {
  categories = detail::sorted_unique(std::move(categories));
  std::vector<std::vector<Term>> terms;
  for (const std::string& c : categories) {
    std::vector<Term> list = category_name_terms(c, names);
    for (Term& t : expand_category(c, m, names)) detail::push_unique(list, std::move(t));
    terms.push_back(std::move(list));
  }
  return detail::build_unit_model(Approach::Lexicon, categories, terms);
}

struct TrainingSelection {
  Vocabulary vocab;            // selected terms, in selection order
  std::vector<std::size_t> cf; // parallel to vocab
  std::vector<std::size_t> df; // parallel to vocab
  std::size_t cf_min = 0;
  std::size_t cf_max = 0;
  std::size_t requested = 0;
  std::size_t survivors = 0;   // terms inside the cf band before the cap

  bool shortfall() const { return survivors < requested; }
};

/// Inclusive cf band [ceil(L/100), floor(L/10)].
inline std::pair<std::size_t, std::size_t> cf_band(std::size_t category_count) {
  return {(category_count + 99) / 100, category_count / 10};
}

inline constexpr std::size_t kDefaultTrainingTerms = 286;

/// Keeps single-token terms whose category frequency lies in the 1%..10%
/// band (and is at least 1), then the `max_terms` with highest document
/// frequency; ties go to the lexicographically smaller term.
inline TrainingSelection select_training_terms(const Collection& train,
                                               const TokenLists& tokens,
                                               std::size_t max_terms = kDefaultTrainingTerms) {
  if (tokens.size() != train.documents.size())
    throw std::invalid_argument("token lists do not match the collection");
  const std::size_t L = train.categories.size();

  struct Stat {
    std::size_t df = 0;
    std::vector<std::uint32_t> cats;  // sorted unique category indices
  };
  std::unordered_map<std::string, Stat> stats;
  std::unordered_set<std::string> seen;
  for (std::size_t d = 0; d < tokens.size(); ++d) {
    std::vector<std::uint32_t> labels;
    for (const std::string& t : train.documents[d].topics) {
      auto it = std::lower_bound(train.categories.begin(), train.categories.end(), t);
      if (it != train.categories.end() && *it == t)
        labels.push_back(static_cast<std::uint32_t>(it - train.categories.begin()));
    }
    seen.clear();
    for (const std::string& tok : tokens[d]) {
      if (!seen.insert(tok).second) continue;
      Stat& s = stats[tok];
      ++s.df;
      for (std::uint32_t k : labels) {
        auto pos = std::lower_bound(s.cats.begin(), s.cats.end(), k);
        if (pos == s.cats.end() || *pos != k) s.cats.insert(pos, k);
      }
    }
  }

  TrainingSelection sel;
  std::tie(sel.cf_min, sel.cf_max) = cf_band(L);
  sel.requested = max_terms;

  struct Candidate {
    const std::string* token;
    std::size_t df, cf;
  };
  std::vector<Candidate> candidates;
  for (const auto& [tok, s] : stats) {
    const std::size_t cf = s.cats.size();
    if (cf >= 1 && cf >= sel.cf_min && cf <= sel.cf_max)
      candidates.push_back({&tok, s.df, cf});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.df != b.df) return a.df > b.df;
              return *a.token < *b.token;
            });
  sel.survivors = candidates.size();
  if (candidates.size() > max_terms) candidates.resize(max_terms);
  for (const Candidate& c : candidates) {
    sel.vocab.add(Term{*c.token});
    sel.cf.push_back(c.cf);
    sel.df.push_back(c.df);
  }
  return sel;
}

inline TrainingSelection select_training_terms(const Collection& train,
                                               std::size_t max_terms = kDefaultTrainingTerms) {
  return select_training_terms(train, tokenize(train), max_terms);
}

/// wc_ik = tf_ik * log2(L / cf_i), with tf_ik the occurrences of term i in
/// training documents labeled k. A document with several labels counts
/// toward each of them.
inline CategoryModel build_training(const Collection& train, const TokenLists& tokens,
                                    const TrainingSelection& sel) {
  if (tokens.size() != train.documents.size())
    throw std::invalid_argument("token lists do not match the collection");
  const std::size_t L = train.categories.size();
  const std::size_t N = sel.vocab.size();
  std::vector<std::vector<std::size_t>> tf(L, std::vector<std::size_t>(N, 0));
  for (std::size_t d = 0; d < tokens.size(); ++d) {
    const auto& topics = train.documents[d].topics;
    if (topics.empty()) continue;
    const TermCounts counts = match_terms(tokens[d], sel.vocab);
    for (const std::string& t : topics) {
      auto it = std::lower_bound(train.categories.begin(), train.categories.end(), t);
      if (it == train.categories.end() || *it != t) continue;
      auto& row = tf[static_cast<std::size_t>(it - train.categories.begin())];
      for (const auto& [id, n] : counts) row[id] += n;
    }
  }

  CategoryModel m;
  m.approach = Approach::Training;
  m.vocab = sel.vocab;
  m.categories = train.categories;
  m.requested_terms = sel.requested;
  m.candidate_terms = sel.survivors;
  std::vector<double> idf(N, 0.0);
  for (std::size_t i = 0; i < N; ++i)
    idf[i] = std::log2(static_cast<double>(L) / static_cast<double>(sel.cf[i]));
  for (std::size_t k = 0; k < L; ++k) {
    std::vector<SparseVector::Entry> entries;
    for (std::size_t i = 0; i < N; ++i) {
      if (tf[k][i] == 0) continue;
      double w = static_cast<double>(tf[k][i]) * idf[i];
      if (w > 0.0) entries.emplace_back(static_cast<TermId>(i), w);
    }
    m.vectors.emplace_back(std::move(entries));
  }
  return m;
}

inline CategoryModel build_training(const Collection& train,
                                    std::size_t max_terms = kDefaultTrainingTerms) {
  TokenLists tokens = tokenize(train);
  return build_training(train, tokens, select_training_terms(train, tokens, max_terms));
}

using TermKeySet = std::unordered_set<std::string>;

/// Keys of vocabulary terms that appear contiguously somewhere in `docs`.
/// Unlike match_terms this does not consume tokens, so "oil" is found even
/// when every occurrence sits inside "palm oil".
inline TermKeySet occurring_terms(std::span<const std::vector<std::string>> docs,
                                  const Vocabulary& vocab) {
  TermKeySet found;
  const std::size_t max_len = vocab.max_term_length();
  std::string key;
  for (const auto& tokens : docs) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      key.clear();
      for (std::size_t len = 1; len <= max_len && i + len <= tokens.size(); ++len) {
        if (len > 1) key.push_back(' ');
        key += tokens[i + len - 1];
        if (vocab.find(key)) found.insert(key);
      }
    }
  }
  return found;
}

inline SparseVector l1_normalized(const SparseVector& v) {
  const double s = v.sum();
  return s > 0.0 ? v.scaled(1.0 / s) : SparseVector();
}

/// Merges a lexicon model and a training model over the same categories.
/// Lexicon terms absent from `training_text_terms` are dropped first.
inline CategoryModel build_integrated(const CategoryModel& lex, const CategoryModel& trn,
                                      const TermKeySet& training_text_terms) {
  if (lex.categories != trn.categories)
    throw std::invalid_argument("lexicon and training models cover different categories");

  CategoryModel m;
  m.approach = Approach::Integrated;
  m.categories = lex.categories;
  m.requested_terms = trn.requested_terms;
  m.candidate_terms = trn.candidate_terms;

  // Old id -> merged id, kSkip for dropped lexicon terms.
  constexpr TermId kSkip = static_cast<TermId>(-1);
  std::vector<TermId> lex_map(lex.vocab.size(), kSkip);
  for (TermId id = 0; id < lex.vocab.size(); ++id) {
    const Term& t = lex.vocab.term(id);
    if (training_text_terms.count(term_key(t))) lex_map[id] = m.vocab.add(t);
  }
  std::vector<TermId> trn_map(trn.vocab.size());
  for (TermId id = 0; id < trn.vocab.size(); ++id) trn_map[id] = m.vocab.add(trn.vocab.term(id));

  for (std::size_t k = 0; k < m.categories.size(); ++k) {
    std::vector<SparseVector::Entry> survivors;
    for (const auto& [id, w] : lex.vectors[k].entries())
      if (lex_map[id] != kSkip) survivors.emplace_back(lex_map[id], w);
    SparseVector lex_part = l1_normalized(SparseVector(std::move(survivors)));

    std::vector<SparseVector::Entry> remapped;
    for (const auto& [id, w] : trn.vectors[k].entries()) remapped.emplace_back(trn_map[id], w);
    SparseVector trn_part = l1_normalized(SparseVector(std::move(remapped)));

    std::vector<SparseVector::Entry> merged = lex_part.entries();
    merged.insert(merged.end(), trn_part.entries().begin(), trn_part.entries().end());
    m.vectors.emplace_back(std::move(merged));
  }
  return m;
}

inline std::vector<ScoredAssignment> classify_tokens(std::uint64_t doc_id,
                                                     std::span<const std::string> tokens,
                                                     const CategoryModel& model,
                                                     const DfTable& dft) {
  const SparseVector dv = document_vector(match_terms(tokens, model.vocab), dft);
  std::vector<ScoredAssignment> out;
  out.reserve(model.categories.size());
  for (std::size_t k = 0; k < model.categories.size(); ++k)
    out.push_back({doc_id, model.categories[k], cosine(dv, model.vectors[k])});
  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredAssignment& a, const ScoredAssignment& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.category < b.category;
                   });
  return out;
}

/// One score per category, best first; ties by category name.
inline std::vector<ScoredAssignment> classify(const Document& doc, const CategoryModel& model,
                                              const DfTable& dft) {
  const std::vector<std::string> tokens = preprocess(doc.text());
  return classify_tokens(doc.doc_id, tokens, model, dft);
}

// --- serialization -------------------------------------------------------

inline constexpr const char* kModelFormat = "catvec-model/1";

/// A model together with the document-frequency table its scoring needs.
struct ModelBundle {
  CategoryModel model;
  DfTable df;
};

inline nlohmann::json to_json(const ModelBundle& b) {
  using nlohmann::json;
  const CategoryModel& m = b.model;
  json vocab = json::array();
  for (const Term& t : m.vocab.terms()) vocab.push_back(t);
  json vectors = json::object();
  for (std::size_t k = 0; k < m.categories.size(); ++k) {
    json pairs = json::array();
    for (const auto& [id, w] : m.vectors[k].entries()) pairs.push_back(json::array({id, w}));
    vectors[m.categories[k]] = std::move(pairs);
  }
  return {{"format", kModelFormat},
          {"approach", approach_name(m.approach)},
          {"categories", m.categories},
          {"vocab", std::move(vocab)},
          {"vectors", std::move(vectors)},
          {"requested_terms", m.requested_terms},
          {"candidate_terms", m.candidate_terms},
          {"df", {{"doc_count", b.df.doc_count()}, {"counts", b.df.raw()}}}};
}

inline ModelBundle model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != kModelFormat)
    throw std::runtime_error(std::string("not a ") + kModelFormat + " document");
  ModelBundle b;
  CategoryModel& m = b.model;
  m.approach = parse_approach(j.at("approach").get<std::string>());
  m.categories = j.at("categories").get<std::vector<std::string>>();
  if (!std::is_sorted(m.categories.begin(), m.categories.end()))
    throw std::runtime_error("model categories must be sorted");
  for (const auto& t : j.at("vocab")) m.vocab.add(t.get<Term>());
  const auto& vectors = j.at("vectors");
  for (const std::string& c : m.categories) {
    std::vector<SparseVector::Entry> entries;
    for (const auto& p : vectors.at(c)) {
      TermId id = p.at(0).get<TermId>();
      if (id >= m.vocab.size()) throw std::runtime_error("term id out of range");
      entries.emplace_back(id, p.at(1).get<double>());
    }
    m.vectors.emplace_back(std::move(entries));
  }
  m.requested_terms = j.value("requested_terms", std::size_t{0});
  m.candidate_terms = j.value("candidate_terms", std::size_t{0});
  const auto& df = j.at("df");
  b.df = DfTable(df.at("doc_count").get<std::size_t>(),
                 df.at("counts").get<std::vector<std::size_t>>());
  if (b.df.raw().size() != m.vocab.size())
    throw std::runtime_error("df table does not match vocabulary");
  return b;
}

}  // namespace catvec

#endif  // CATVEC_CATEGORIZERS_HPP_
