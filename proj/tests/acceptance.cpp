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

// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and
// exits nonzero if any criterion fails. Criteria 3 and 4 need a local
// Reuters-22173 copy named by CATVEC_CORPUS.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "catvec/catvec.hpp"
#include "oracles.hpp"

#ifndef CATVEC_DATA_DIR
#error "CATVEC_DATA_DIR must name the bundled data directory"
#endif
#ifndef CATVEC_CLI_PATH
#error "CATVEC_CLI_PATH must name the catvec binary"
#endif

namespace {

using namespace catvec;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

// Collects failed sub-checks for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, os.str());
  }
  Outcome outcome(std::string pass_detail) const {
    if (failed_ == 0) return {Status::Pass, std::move(pass_detail)};
    std::string d = std::to_string(failed_) + " failed check(s)";
    for (const std::string& f : failures_) d += "; " + f;
    return {Status::Fail, d};
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int places = 3) { return detail::format_fixed(v, places); }

std::string data_path(const std::string& rel) { return std::string(CATVEC_DATA_DIR) + "/" + rel; }

std::vector<std::string> read_topics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    for (std::string_view tok : detail::split_ws(detail::strip_comment(line)))
      out.emplace_back(tok);
  std::sort(out.begin(), out.end());
  return out;
}

// --- 1: oracle suites -------------------------------------------------------

Outcome criterion_oracles() {
  const auto t0 = Clock::now();
  Checker ck;
  std::mt19937 rng(2026);
  constexpr int kTrials = 200;
  for (int trial = 0; trial < kTrials; ++trial) {
    // cosine
    const SparseVector a = oracle::random_vector(rng, 10, 10);
    const SparseVector b = oracle::random_vector(rng, 10, 10);
    ck.near(cosine(a, b), oracle::dense_cosine(oracle::densify(a, 10), oracle::densify(b, 10)),
            1e-9, "cosine");

    oracle::Fixture f = oracle::random_fixture(rng);
    const Collection c = f.collection();

    // document_vector
    Vocabulary v;
    std::vector<std::string> terms;
    for (const auto& d : f.docs)
      for (const auto& t : d)
        if (!v.find(t)) {
          v.add({t});
          terms.push_back(t);
        }
    const DfTable df = build_df_table(f.docs, v);
    for (const auto& doc : f.docs) {
      const SparseVector got = document_vector(match_terms(doc, v), df);
      const auto want = oracle::document_weights(f.docs, doc, terms);
      ck.expect(got.size() == want.size(), "document_vector support");
      for (const auto& [t, w] : want) ck.near(got.weight(*v.find(t)), w, 1e-9, "document_vector");
    }

    // select_training_terms (exact), on the small fixture and on a wider
    // label space where the cf band is non-empty.
    for (int pass = 0; pass < 2; ++pass) {
      if (pass == 1) {
        f.categories.clear();
        const std::size_t L = 10 + rng() % 21;
        for (std::size_t k = 0; k < L; ++k)
          f.categories.push_back("k" + std::string(k < 10 ? "0" : "") + std::to_string(k));
        for (auto& lab : f.labels) {
          lab.clear();
          if (rng() % 4) lab.insert(f.categories[rng() % L]);
        }
      }
      const Collection cc = f.collection();
      const std::size_t cap = 1 + rng() % 6;
      const TrainingSelection sel = select_training_terms(cc, cap);
      const auto want = oracle::select_terms(f, cap);
      ck.expect(sel.vocab.size() == want.size(), "select_training_terms size");
      for (std::size_t i = 0; i < std::min(want.size(), sel.vocab.size()); ++i) {
        ck.expect(term_key(sel.vocab.term(static_cast<TermId>(i))) == want[i].term &&
                      sel.cf[i] == want[i].cf && sel.df[i] == want[i].df,
                  "select_training_terms entry");
      }

      // build_training weights over every term with cf >= 1.
      TrainingSelection all;
      std::vector<oracle::SelectedTerm> all_terms;
      std::set<std::string> seen;
      for (const auto& d : f.docs)
        for (const auto& t : d)
          if (seen.insert(t).second) {
            const std::size_t cf = oracle::category_frequency(f, t);
            if (cf == 0) continue;
            all.vocab.add({t});
            all.cf.push_back(cf);
            all.df.push_back(0);
            all_terms.push_back({t, cf, 0});
          }
      const CategoryModel m = build_training(cc, tokenize(cc), all);
      const auto wants = oracle::training_weights(f, all_terms);
      for (std::size_t k = 0; k < m.categories.size(); ++k) {
        std::map<std::string, double> got;
        for (const auto& [id, w] : m.vectors[k].entries()) got[term_key(m.vocab.term(id))] = w;
        const auto it = wants.find(m.categories[k]);
        const std::map<std::string, double> empty;
        const auto& want_k = it == wants.end() ? empty : it->second;
        ck.expect(got.size() == want_k.size(), "build_training support");
        for (const auto& [t, w] : want_k)
          ck.near(got.count(t) ? got.at(t) : -1.0, w, 1e-9, "build_training weight");
      }
    }

    // macro_rp / micro_rp
    const oracle::Grid g = oracle::random_grid(rng);
    const AssignmentSet as = oracle::grid_assigned(g);
    const GoldStandard gs = oracle::grid_gold(g);
    const RecallPrecision ma = macro_rp(as, gs, oracle::grid_categories(g));
    const RecallPrecision mi = micro_rp(as, gs);
    const RecallPrecision wma = oracle::grid_macro(g), wmi = oracle::grid_micro(g);
    ck.near(ma.recall, wma.recall, 1e-9, "macro recall");
    ck.near(ma.precision, wma.precision, 1e-9, "macro precision");
    ck.near(mi.recall, wmi.recall, 1e-9, "micro recall");
    ck.near(mi.precision, wmi.precision, 1e-9, "micro precision");
    (void)c;
  }
  const double secs = seconds_since(t0);
  ck.expect(secs < 5.0, "runtime " + fmt(secs) + " s >= 5 s");
  return ck.outcome(std::to_string(kTrials) + " fixtures per oracle, " + fmt(secs) + " s");
}

// --- 2: identity ladder -----------------------------------------------------

Outcome criterion_identities() {
  Checker ck;
  const std::vector<std::string> topics = read_topics(data_path("reuters/topics.txt"));
  const CategoryNames names = load_category_names(data_path("reuters/names.txt"));
  const CategoryModel lex = build_lexicon(topics, SynsetMap{}, names);
  const CategoryModel dir = build_direct(topics, names);
  ck.expect(lex.vocab == dir.vocab && lex.categories == dir.categories &&
                lex.vectors == dir.vectors,
            "build_lexicon(empty) differs from build_direct");

  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const SparseVector v = oracle::random_vector(rng, 20, 50);
    if (!v.empty()) ck.near(cosine(v, v), 1.0, 1e-12, "cosine(v,v)");
    std::vector<SparseVector::Entry> lo, hi;
    for (const auto& [id, w] : v.entries()) (id < 25 ? lo : hi).emplace_back(id, w);
    ck.expect(cosine(SparseVector(lo), SparseVector(hi)) == 0.0, "disjoint cosine not 0");
  }

  const std::vector<ScoredAssignment> zeros = {{1, "a", 0.0}, {1, "b", 0.0}, {2, "a", 0.0}};
  const GoldStandard gold = {{1, {"a"}}, {2, {"a", "b"}}};
  for (Strategy s : {Strategy::Threshold, Strategy::KPerDoc}) {
    const EvalReport r = sweep(zeros, gold, {"a", "b"}, {s, 10, Orientation::Category});
    bool all_zero = r.averages == RPPoint{};
    for (const RPPoint& p : r.points)
      all_zero = all_zero && p.macro_recall == 0 && p.macro_precision == 0 &&
                 p.micro_recall == 0 && p.micro_precision == 0;
    ck.expect(all_zero, std::string("zero sweep not zero (") + strategy_name(s) + ")");
  }
  return ck.outcome("lexicon(empty)==direct over " + std::to_string(topics.size()) +
                    " categories; 500 cosine identities; zero sweeps");
}

// --- 3 and 4: Reuters -------------------------------------------------------

Collection load_reuters(const std::string& spec) {
  std::vector<std::string> files;
  std::stringstream ss(spec);
  std::string p;
  while (std::getline(ss, p, ':')) {
    if (p.empty()) continue;
    if (fs::is_directory(p)) {
      std::vector<std::string> inner;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file()) inner.push_back(e.path().string());
      std::sort(inner.begin(), inner.end());
      files.insert(files.end(), inner.begin(), inner.end());
    } else {
      files.push_back(p);
    }
  }
  std::string data;
  for (const std::string& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + f);
    std::ostringstream os;
    os << in.rdbuf();
    data += os.str();
    if (!data.empty() && data.back() != '\n') data.push_back('\n');
  }
  Collection c = parse_collection(std::string_view(data));
  restrict_categories(c, read_topics(data_path("reuters/topics.txt")));
  return c;
}

Outcome criterion_reuters_structure(const Collection& corpus, double load_secs) {
  const auto t0 = Clock::now();
  Checker ck;
  if (corpus.size() < kDefaultTrainCount) {
    ck.expect(false, "corpus has only " + std::to_string(corpus.size()) + " documents");
    return ck.outcome("");
  }
  const auto [train, test] = split_collection(corpus, kDefaultTrainCount);
  const CollectionStats st = collection_stats(train), se = collection_stats(test);
  ck.expect(st.doc_count == 21450, "training docs " + std::to_string(st.doc_count));
  ck.expect(se.doc_count == 723, "test docs " + std::to_string(se.doc_count));
  ck.expect(st.topic_occurrences == 13756,
            "training topic occurrences " + std::to_string(st.topic_occurrences));
  ck.expect(se.topic_occurrences == 896,
            "test topic occurrences " + std::to_string(se.topic_occurrences));
  const double wt = static_cast<double>(st.word_occurrences) / 2851455.0 - 1.0;
  const double we = static_cast<double>(se.word_occurrences) / 140922.0 - 1.0;
  ck.expect(std::abs(wt) <= 0.05, "training words off by " + fmt(100 * wt, 2) + "%");
  ck.expect(std::abs(we) <= 0.05, "test words off by " + fmt(100 * we, 2) + "%");
  const CategoryModel dir =
      build_direct(train.categories, load_category_names(data_path("reuters/names.txt")));
  ck.expect(dir.vocab.size() == 137, "direct vocabulary " + std::to_string(dir.vocab.size()));
  const double secs = load_secs + seconds_since(t0);
  ck.expect(secs < 120.0, "runtime " + fmt(secs) + " s");
  return ck.outcome("words " + fmt(100 * wt, 2) + "% / " + fmt(100 * we, 2) + "%, " +
                    fmt(secs) + " s");
}

Outcome criterion_reuters_ordering(const Collection& corpus) {
  Checker ck;
  if (corpus.size() < kDefaultTrainCount) {
    ck.expect(false, "corpus too small");
    return ck.outcome("");
  }
  ExperimentConfig cfg;
  const ExperimentResult r =
      run_experiment(corpus, cfg, load_lexicon(data_path("reuters/lexicon.txt")),
                     load_category_names(data_path("reuters/names.txt")));
  const RPPoint& d = r.runs.at(Approach::Direct).report.averages;
  const RPPoint& l = r.runs.at(Approach::Lexicon).report.averages;
  const RPPoint& t = r.runs.at(Approach::Training).report.averages;
  const RPPoint& i = r.runs.at(Approach::Integrated).report.averages;
  ck.expect(d.micro_recall < l.micro_recall && d.micro_recall < t.micro_recall &&
                d.micro_recall < i.micro_recall,
            "(a) direct micro recall " + fmt(d.micro_recall, 6) + " not strictly lowest");
  ck.expect(i.micro_recall > t.micro_recall, "(b) integrated micro recall " +
                                                 fmt(i.micro_recall, 6) + " <= training " +
                                                 fmt(t.micro_recall, 6));
  ck.expect(t.micro_recall > l.micro_recall, "(c) training micro recall " +
                                                 fmt(t.micro_recall, 6) + " <= lexicon " +
                                                 fmt(l.micro_recall, 6));
  ck.expect(l.macro_precision > t.macro_precision,
            "(c) lexicon macro precision " + fmt(l.macro_precision, 6) + " <= training " +
                fmt(t.macro_precision, 6));
  return ck.outcome("micro-R D/L/T/I " + fmt(d.micro_recall, 4) + "/" + fmt(l.micro_recall, 4) +
                    "/" + fmt(t.micro_recall, 4) + "/" + fmt(i.micro_recall, 4));
}

// --- 5: undertrained category -----------------------------------------------

Outcome criterion_undertrained() {
  const auto t0 = Clock::now();
  Checker ck;
  SynthOptions opt;  // 1,000 docs, seed 42
  const SynthCorpus s = synthesize_corpus(opt);
  ck.expect(serialize_collection(s.collection) ==
                serialize_collection(synthesize_corpus(opt).collection),
            "synthesis not deterministic");
  ck.expect(!s.undertrained.empty(), "no undertrained category");

  ExperimentConfig cfg;
  cfg.train_count = s.train_count;
  cfg.approaches = {Approach::Training, Approach::Integrated};
  const ExperimentResult r = run_experiment(s.collection, cfg, parse_lexicon(s.lexicon_text));
  const GoldStandard gold = gold_standard(r.test);
  const auto& trn = r.runs.at(Approach::Training);
  const auto& itg = r.runs.at(Approach::Integrated);
  double u_min = 1.0;
  for (const std::string& u : s.undertrained) {
    for (const Document& d : r.train.documents)
      ck.expect(d.topics.count(u) == 0, u + " labels a training document");
    std::size_t in_test = 0;
    for (const auto& [doc, cats] : gold) in_test += cats.count(u);
    ck.expect(in_test > 0, u + " labels no test document");
    for (int i = 0; i < kThresholdLevels; ++i) {
      const double t = threshold_level(i);
      const double rec = macro_rp(assign_by_threshold(trn.scores, t), gold, {u}).recall;
      ck.expect(rec == 0.0, "training recall for " + u + " at t=" + fmt(t, 1) + " is " + fmt(rec, 6));
    }
    const double u_int = macro_rp(assign_by_threshold(itg.scores, 0.1), gold, {u}).recall;
    ck.expect(u_int > 0.0, "integrated recall for " + u + " at t=0.1 is 0");
    u_min = std::min(u_min, u_int);
  }
  const double mt = trn.report.averages.micro_recall, mi = itg.report.averages.micro_recall;
  ck.expect(mi > mt, "integrated micro recall " + fmt(mi, 6) + " <= training " + fmt(mt, 6));
  const double secs = seconds_since(t0);
  ck.expect(secs < 10.0, "runtime " + fmt(secs) + " s");
  return ck.outcome(std::to_string(s.undertrained.size()) +
                    " undertrained categories, min integrated recall@0.1 " + fmt(u_min, 4) +
                    ", micro-R " +
                    fmt(mi, 4) + " > " + fmt(mt, 4) + ", " + fmt(secs) + " s");
}

// --- 6: evaluation fixture --------------------------------------------------

Outcome criterion_eval_fixture() {
  Checker ck;
  const GoldStandard gold = {{1, {"c1"}}, {2, {"c1"}}, {3, {"c2"}}};
  const AssignmentSet assigned = {{1, "c1"}, {3, "c2"}, {3, "c1"}};
  const RecallPrecision ma = macro_rp(assigned, gold, {"c1", "c2", "c3"});
  const RecallPrecision mi = micro_rp(assigned, gold);
  ck.expect(ma.recall == 0.75 && ma.precision == 0.75, "macro not (0.75, 0.75)");
  ck.expect(mi.recall == 2.0 / 3.0 && mi.precision == 2.0 / 3.0, "micro not (2/3, 2/3)");
  const EvalReport r = sweep({{1, "x", 0.55}}, {{1, {"x"}}}, {"x"});
  ck.expect(r.averages.macro_recall == 6.0 / 11.0,
            "sweep macro recall average " + fmt(r.averages.macro_recall, 17));
  return ck.outcome("macro (0.75, 0.75), micro (2/3, 2/3), sweep 6/11");
}

// --- 7: determinism of `catvec run` -----------------------------------------

int shell(const std::string& cmd, std::string* out = nullptr) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return -1;
  char buf[4096];
  std::size_t n;
  std::string text;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) text.append(buf, n);
  if (out) *out = text;
  const int status = pclose(p);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion_determinism() {
  Checker ck;
  const fs::path dir = fs::temp_directory_path() / "catvec_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = CATVEC_CLI_PATH;
  const std::string corpus = (dir / "corpus.sgm").string();
  const std::string lexicon = (dir / "lexicon.txt").string();
  ck.expect(shell(cli + " synth --docs 600 --out " + corpus + " --lexicon-out " + lexicon +
                  " 2>/dev/null") == 0,
            "synth failed");
  std::string text[2];
  for (int i = 0; i < 2; ++i) {
    const std::string json = (dir / ("report" + std::to_string(i) + ".json")).string();
    ck.expect(shell(cli + " run --train-count 480 --corpus " + corpus + " --lexicon " + lexicon +
                        " --levels --out " + json + " 2>/dev/null",
                    &text[i]) == 0,
              "run " + std::to_string(i) + " failed");
  }
  const std::string j0 = slurp(dir / "report0.json"), j1 = slurp(dir / "report1.json");
  ck.expect(!text[0].empty() && text[0] == text[1], "text reports differ");
  ck.expect(!j0.empty() && j0 == j1, "JSON reports differ");
  fs::remove_all(dir);
  return ck.outcome("text " + std::to_string(text[0].size()) + " bytes, JSON " +
                    std::to_string(j0.size()) + " bytes identical");
}

}  // namespace

int main() {
  bool failed = false;
  auto report = [&](int n, const std::string& title, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    failed = failed || o.status == Status::Fail;
    std::cout << tag << " " << n << " " << title << " - " << o.detail << std::endl;
  };

  report(1, "oracle suites", criterion_oracles);
  report(2, "identity ladder", criterion_identities);

  const char* env = std::getenv("CATVEC_CORPUS");
  if (env == nullptr || *env == '\0') {
    report(3, "Reuters structure", [] { return Outcome{Status::Skip, "CATVEC_CORPUS not set"}; });
    report(4, "Reuters ordering", [] { return Outcome{Status::Skip, "CATVEC_CORPUS not set"}; });
  } else {
    Collection corpus;
    double load_secs = 0;
    std::string load_error;
    try {
      const auto t0 = Clock::now();
      corpus = load_reuters(env);
      load_secs = seconds_since(t0);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    if (!load_error.empty()) {
      report(3, "Reuters structure", [&] { return Outcome{Status::Fail, load_error}; });
      report(4, "Reuters ordering", [&] { return Outcome{Status::Fail, load_error}; });
    } else {
      report(3, "Reuters structure", [&] { return criterion_reuters_structure(corpus, load_secs); });
      report(4, "Reuters ordering", [&] { return criterion_reuters_ordering(corpus); });
    }
  }

  report(5, "undertrained category", criterion_undertrained);
  report(6, "evaluation fixture", criterion_eval_fixture);
  report(7, "run determinism", criterion_determinism);
  return failed ? 1 : 0;
}
