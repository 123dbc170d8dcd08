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

// Deterministic synthetic newswire corpus in the PATTERN-ID record layout.
// Categories follow a Zipf-like frequency profile; the last `undertrained`
// categories never label a training document but each labels the first
// few test documents,
// and their synonyms leak into unlabeled training text so that a lexicon
// can still describe them.

#ifndef CATVEC_SYNTH_HPP_
#define CATVEC_SYNTH_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catvec/corpus.hpp"

namespace catvec {

struct SynthOptions {
  std::uint64_t seed = 42;
  std::size_t n_docs = 1000;
  std::size_t n_categories = 20;
  std::size_t undertrained = 4;
  double train_fraction = 0.8;
  std::size_t words_per_doc = 80;
};

struct SynthCorpus {
  Collection collection;  // documents in file order, all declared categories
  std::size_t train_count = 0;
  std::vector<std::string> undertrained;
  std::string lexicon_text;
};

namespace detail {

constexpr std::array<char, 15> kConsonants = {'b', 'd', 'f', 'g', 'k', 'l', 'm', 'n',
                                              'p', 'r', 's', 't', 'v', 'z', 'h'};
constexpr std::array<char, 5> kVowels = {'a', 'e', 'i', 'o', 'u'};
constexpr std::size_t kSyllables = kConsonants.size() * kVowels.size();
constexpr std::size_t kWordSpace = kSyllables * kSyllables * kSyllables;

// Bijective on [0, kWordSpace): three consonant-vowel syllables.
inline std::string pseudo_word(std::size_t n) {
  std::string w;
  for (int i = 0; i < 3; ++i) {
    const std::size_t s = n % kSyllables;
    n /= kSyllables;
    w.push_back(kConsonants[s / kVowels.size()]);
    w.push_back(kVowels[s % kVowels.size()]);
  }
  return w;
}

class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}
  // Raw engine output only; distribution objects are not portable.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  std::size_t pick(const std::vector<double>& cumulative) {
    const double r = unit() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                 cumulative.size() - 1);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> zipf_cumulative(std::size_t n, double exponent) {
  std::vector<double> c(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
    c[i] = total;
  }
  return c;
}

inline std::string upper(std::string s) {
  for (char& ch : s)
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
  return s;
}

}  // namespace detail

inline SynthCorpus synthesize_corpus(const SynthOptions& opt) {
  using detail::pseudo_word;
  const std::size_t C = opt.n_categories;
  constexpr std::size_t kSynonyms = 2;
  constexpr std::size_t kTopicWords = 10;
  constexpr std::size_t kBackground = 300;
  constexpr std::size_t kDedicatedTestDocs = 3;  // per undertrained category
  if (opt.n_docs < 1 || C < 1)
    throw std::invalid_argument("n_docs and n_categories must be at least 1");
  if (opt.undertrained > C)
    throw std::invalid_argument("more undertrained categories than categories");
  if (!(opt.train_fraction >= 0.0 && opt.train_fraction <= 1.0))
    throw std::invalid_argument("train_fraction must lie in [0, 1]");
  if (C * (1 + kSynonyms + kTopicWords) + kBackground > detail::kWordSpace)
    throw std::invalid_argument("too many categories for the word space");

  const std::size_t syn_base = C;
  const std::size_t topic_base = syn_base + C * kSynonyms;
  const std::size_t bg_base = topic_base + C * kTopicWords;
  auto name = [&](std::size_t k) { return pseudo_word(k); };
  auto synonym = [&](std::size_t k, std::size_t j) {
    return pseudo_word(syn_base + k * kSynonyms + j);
  };
  auto topic_word = [&](std::size_t k, std::size_t j) {
    return pseudo_word(topic_base + k * kTopicWords + j);
  };
  auto background = [&](std::size_t j) { return pseudo_word(bg_base + j); };

  const std::size_t trained = C - opt.undertrained;
  SynthCorpus out;
  out.train_count = static_cast<std::size_t>(static_cast<double>(opt.n_docs) * opt.train_fraction);
  for (std::size_t k = 0; k < C; ++k) out.collection.categories.push_back(name(k));
  for (std::size_t k = trained; k < C; ++k) out.undertrained.push_back(name(k));
  std::sort(out.collection.categories.begin(), out.collection.categories.end());

  detail::SynthRng rng(opt.seed);
  const auto cat_all = detail::zipf_cumulative(C, 0.8);
  const auto cat_trained = detail::zipf_cumulative(std::max<std::size_t>(trained, 1), 0.8);
  const auto bg_cum = detail::zipf_cumulative(kBackground, 1.0);
  static constexpr std::array<const char*, 12> kMonths = {
      "JAN", "FEB", "MAR", "APR", "MAY", "JUN", "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"};

  for (std::size_t i = 0; i < opt.n_docs; ++i) {
    const bool is_train = i < out.train_count;
    std::vector<std::size_t> labels;
    if (!is_train && i - out.train_count < opt.undertrained * kDedicatedTestDocs) {
      labels.push_back(trained + (i - out.train_count) % opt.undertrained);
    } else if (!rng.chance(is_train ? 0.35 : 0.2)) {
      const std::size_t n_labels = rng.chance(0.05) ? 2 : 1;
      for (std::size_t l = 0; l < n_labels; ++l) {
        std::size_t k;
        if (is_train) {
          if (trained == 0) break;
          k = rng.pick(cat_trained);
        } else {
          k = rng.pick(cat_all);
        }
        if (std::find(labels.begin(), labels.end(), k) == labels.end()) labels.push_back(k);
      }
    }

    auto draw_word = [&]() -> std::string {
      if (labels.empty()) {
        if (is_train && opt.undertrained > 0 && rng.chance(0.01))
          return synonym(trained + rng.below(opt.undertrained), rng.below(kSynonyms));
        if (rng.chance(0.05)) return topic_word(rng.below(C), rng.below(kTopicWords));
        return background(rng.pick(bg_cum));
      }
      if (rng.chance(0.6)) return background(rng.pick(bg_cum));
      const std::size_t k = labels[rng.below(labels.size())];
      const double r = rng.unit();
      if (r < 0.08) return synonym(k, rng.below(kSynonyms));
      if (r < 0.12) return name(k);
      return topic_word(k, rng.below(kTopicWords));
    };

    Document d;
    d.doc_id = i + 1;
    d.split = is_train ? Split::Training : Split::Test;
    d.date = std::to_string(1 + i % 28) + "-" + kMonths[(i / 28) % 12] + "-1987 " +
             (i % 24 < 10 ? "0" : "") + std::to_string(i % 24) + ":00:00.00";
    for (std::size_t k : labels) d.topics.insert(name(k));

    const std::size_t title_len = 4 + rng.below(3);
    for (std::size_t w = 0; w < title_len; ++w) {
      if (w) d.title.push_back(' ');
      d.title += detail::upper(draw_word());
    }
    const std::size_t body_len = opt.words_per_doc / 2 + rng.below(opt.words_per_doc + 1);
    std::size_t on_line = 0;
    for (std::size_t w = 0; w < body_len; ++w) {
      if (on_line == 10) {
        d.body.push_back('\n');
        on_line = 0;
      } else if (on_line > 0) {
        d.body.push_back(' ');
      }
      if (rng.chance(0.03)) {
        d.body += std::to_string(1 + rng.below(9)) + "," + std::to_string(100 + rng.below(900));
      } else {
        d.body += draw_word();
      }
      ++on_line;
    }
    if (!d.body.empty()) d.body.push_back('.');
    out.collection.documents.push_back(std::move(d));
  }

  std::vector<std::size_t> order(C);
  for (std::size_t k = 0; k < C; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return name(a) < name(b); });
  out.lexicon_text = "# synthetic lexicon\n";
  for (std::size_t k : order) {
    out.lexicon_text += name(k) + ": " + name(k);
    for (std::size_t j = 0; j < kSynonyms; ++j) out.lexicon_text += " | " + synonym(k, j);
    out.lexicon_text += "\n";
  }
  return out;
}

}  // namespace catvec

#endif  // CATVEC_SYNTH_HPP_
