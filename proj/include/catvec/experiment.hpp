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

// End-to-end protocol: split, build the requested category models on the
// training half, score the test half, sweep assignment levels.

#ifndef CATVEC_EXPERIMENT_HPP_
#define CATVEC_EXPERIMENT_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "catvec/categorizers.hpp"
#include "catvec/corpus.hpp"
#include "catvec/eval.hpp"
#include "catvec/lexicon.hpp"
#include "catvec/vsm.hpp"

namespace catvec {

inline constexpr std::size_t kDefaultTrainCount = 21450;

struct ExperimentConfig {
  std::size_t train_count = kDefaultTrainCount;
  std::vector<Approach> approaches = {Approach::Direct, Approach::Lexicon, Approach::Training,
                                      Approach::Integrated};
  std::size_t max_training_terms = kDefaultTrainingTerms;
  SweepOptions sweep;
  unsigned jobs = 0;  // 0: hardware concurrency
};

struct ApproachRun {
  ModelBundle bundle;
  std::vector<ScoredAssignment> scores;  // test docs in file order, categories by rank
  EvalReport report;
};

struct ExperimentResult {
  Collection train;
  Collection test;
  std::map<Approach, ApproachRun> runs;

  std::vector<EvalReport> reports(const std::vector<Approach>& order) const {
    std::vector<EvalReport> out;
    for (Approach a : order) out.push_back(runs.at(a).report);
    return out;
  }
};

inline bool needs_lexicon(const std::vector<Approach>& approaches) {
  return std::any_of(approaches.begin(), approaches.end(), [](Approach a) {
    return a == Approach::Lexicon || a == Approach::Integrated;
  });
}

/// Scores every document against the model. Work is split across `jobs`
/// threads; output order is document order regardless.
inline std::vector<ScoredAssignment> score_documents(const Collection& docs,
                                                     const TokenLists& tokens,
                                                     const ModelBundle& bundle,
                                                     unsigned jobs = 1) {
  const std::size_t n = docs.documents.size();
  std::vector<std::vector<ScoredAssignment>> per_doc(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      per_doc[i] = classify_tokens(docs.documents[i].doc_id, tokens[i], bundle.model, bundle.df);
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t b = j * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (std::thread& t : pool) t.join();
  }
  std::vector<ScoredAssignment> out;
  out.reserve(n * bundle.model.categories.size());
  for (auto& v : per_doc) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline ExperimentResult run_experiment(const Collection& corpus, const ExperimentConfig& cfg,
                                       const SynsetMap& lexicon = {},
                                       const CategoryNames& names = {}) {
  if (cfg.approaches.empty()) throw std::invalid_argument("no approaches requested");
  ExperimentResult result;
  std::tie(result.train, result.test) = split_collection(corpus, cfg.train_count);
  const TokenLists train_tokens = tokenize(result.train);
  const TokenLists test_tokens = tokenize(result.test);
  const GoldStandard gold = gold_standard(result.test);
  const std::vector<std::string>& categories = result.train.categories;

  std::map<Approach, CategoryModel> models;
  auto want = [&](Approach a) {
    return std::find(cfg.approaches.begin(), cfg.approaches.end(), a) != cfg.approaches.end();
  };
  if (want(Approach::Direct)) models[Approach::Direct] = build_direct(categories, names);
  if (want(Approach::Lexicon) || want(Approach::Integrated))
    models[Approach::Lexicon] = build_lexicon(categories, lexicon, names);
  if (want(Approach::Training) || want(Approach::Integrated)) {
    const TrainingSelection sel =
        select_training_terms(result.train, train_tokens, cfg.max_training_terms);
    models[Approach::Training] = build_training(result.train, train_tokens, sel);
  }
  if (want(Approach::Integrated)) {
    const CategoryModel& lex = models.at(Approach::Lexicon);
    models[Approach::Integrated] = build_integrated(
        lex, models.at(Approach::Training), occurring_terms(train_tokens, lex.vocab));
  }

  for (Approach a : cfg.approaches) {
    if (result.runs.count(a)) continue;
    ApproachRun run;
    run.bundle.model = models.at(a);
    run.bundle.df = build_df_table(train_tokens, run.bundle.model.vocab);
    run.scores = score_documents(result.test, test_tokens, run.bundle, cfg.jobs);
    run.report = sweep(run.scores, gold, categories, cfg.sweep, approach_label(a));
    result.runs.emplace(a, std::move(run));
  }
  return result;
}

}  // namespace catvec

#endif  // CATVEC_EXPERIMENT_HPP_
