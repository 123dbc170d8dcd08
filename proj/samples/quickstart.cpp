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

// Builds a direct and a lexicon model over three categories and scores one
// story against each.

#include <iostream>

#include "catvec/catvec.hpp"

int main() {
  using namespace catvec;

  const Collection corpus = parse_collection(std::string_view(R"(
     PATTERN-ID 1 TRAINING-SET
    TOPICS: crude END-TOPICS
    OIL PRICES RISE
    Petroleum futures rose as crude oil supplies tightened.
     REUTER
     PATTERN-ID 2 TRAINING-SET
    TOPICS: groundnut END-TOPICS
    PEANUT HARVEST
    The peanut harvest was lower this year.
     REUTER
     PATTERN-ID 3 TRAINING-SET
    TOPICS: fuel END-TOPICS
    FUEL DEMAND
    Demand for combustible material rose.
     REUTER
)"));

  const SynsetMap lexicon = parse_lexicon(
      "crude: petroleum | crude oil\n"
      "groundnut: peanut | earthnut\n"
      "fuel: combustible | combustible material\n");

  const TokenLists tokens = tokenize(corpus);
  Document story;
  story.doc_id = 99;
  story.body = "Refiners bought more petroleum and peanut oil.";

  for (const CategoryModel& model :
       {build_direct(corpus.categories), build_lexicon(corpus.categories, lexicon)}) {
    const DfTable df = build_df_table(tokens, model.vocab);
    std::cout << approach_label(model.approach) << " (" << model.vocab.size() << " terms)\n";
    for (const ScoredAssignment& a : classify(story, model, df))
      std::cout << "  " << a.category << "  " << a.score << "\n";
  }
}
