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

// catvec: corpus statistics, category-model experiments, synthetic corpora
// and ad-hoc classification from one binary.
//
// Settings resolve as flags > CATVEC_* environment > --config file
// (key=value lines) > built-in defaults.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catvec/catvec.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using namespace catvec;

constexpr int kExitOk = 0;
constexpr int kExitEval = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One resolvable setting: a string-bound flag, an optional environment
// variable and a config-file key.
struct Setting {
  CLI::Option* option = nullptr;
  std::string value;
  const char* env = nullptr;
};

class Settings {
 public:
  void add(CLI::App* app, const std::string& key, const std::string& flags,
           const std::string& help, const char* env = nullptr) {
    Setting& s = settings_[key];
    s.env = env;
    std::string text = help;
    if (env) text += " [env: " + std::string(env) + "]";
    s.option = app->add_option(flags, s.value, text);
  }

  void load_config(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      std::string_view v = detail::trim(line);
      if (v.empty() || v.front() == '#') continue;
      const std::size_t eq = v.find('=');
      if (eq == std::string_view::npos)
        throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
      std::string key(detail::trim(v.substr(0, eq)));
      std::replace(key.begin(), key.end(), '_', '-');
      file_[key] = std::string(detail::trim(v.substr(eq + 1)));
    }
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = settings_.find(key);
    if (it == settings_.end()) throw std::logic_error("unknown setting " + key);
    const Setting& s = it->second;
    if (s.option->count() > 0) return s.value;
    if (s.env) {
      if (const char* e = std::getenv(s.env); e && *e) return std::string(e);
    }
    if (auto f = file_.find(key); f != file_.end()) return f->second;
    return std::nullopt;
  }

  std::string get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
  }

  std::size_t get_size(const std::string& key, std::size_t fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const unsigned long long n = std::stoull(*v, &used);
      if (used != v->size() || v->front() == '-') throw std::invalid_argument(*v);
      return static_cast<std::size_t>(n);
    } catch (const std::logic_error&) {
      throw UsageError("--" + key + ": expected a non-negative integer, got '" + *v + "'");
    }
  }

  double get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const double d = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return d;
    } catch (const std::logic_error&) {
      throw UsageError("--" + key + ": expected a number, got '" + *v + "'");
    }
  }

 private:
  std::map<std::string, Setting> settings_;
  std::map<std::string, std::string> file_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

std::vector<std::string> read_category_list(const std::string& path) {
  const std::string text = read_text(path);
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::string_view v = detail::strip_comment(line);
    for (std::string_view tok : detail::split_ws(v)) out.emplace_back(tok);
  }
  return out;
}

// Corpus files are concatenated; a path naming a directory contributes its
// regular files in name order.
Collection load_corpus(const std::string& spec, const std::string& categories_path) {
  std::vector<std::string> files;
  std::string rest = spec;
  while (!rest.empty()) {
    const std::size_t colon = rest.find(':');
    std::string p = rest.substr(0, colon);
    rest = colon == std::string::npos ? "" : rest.substr(colon + 1);
    if (p.empty()) continue;
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<std::string> inner;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file()) inner.push_back(e.path().string());
      std::sort(inner.begin(), inner.end());
      files.insert(files.end(), inner.begin(), inner.end());
    } else {
      files.push_back(p);
    }
  }
  if (files.empty()) throw UsageError("no corpus given (use --corpus or CATVEC_CORPUS)");
  std::string data;
  for (const std::string& f : files) {
    if (!fs::exists(f)) throw IoError("corpus not found: " + f);
    data += read_text(f);
    if (!data.empty() && data.back() != '\n') data.push_back('\n');
  }
  Collection c;
  try {
    c = parse_collection(std::string_view(data));
  } catch (const ParseError& e) {
    throw IoError(std::string("corpus parse error: ") + e.what());
  }
  if (!categories_path.empty()) {
    const std::size_t dropped = restrict_categories(c, read_category_list(categories_path));
    if (dropped > 0)
      std::cerr << "catvec: dropped " << dropped
                << " topic assignments outside the declared category list\n";
  }
  return c;
}

void add_corpus_settings(Settings& s, CLI::App* cmd) {
  s.add(cmd, "corpus", "--corpus",
        "Corpus file(s) or directories, ':'-separated", "CATVEC_CORPUS");
  s.add(cmd, "categories", "--categories",
        "Declared category list (whitespace separated); topics outside it are dropped",
        "CATVEC_CATEGORIES");
  s.add(cmd, "train-count", "--train-count",
        "Number of leading documents used for training (default 21450)");
}

std::vector<Approach> parse_approaches(const std::string& list) {
  std::vector<Approach> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view v = detail::trim(item);
    if (v.empty()) continue;
    Approach a;
    try {
      a = parse_approach(v);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw UsageError("--approaches: nothing selected");
  return out;
}

int cmd_stats(const Settings& s) {
  const Collection c = load_corpus(s.get_or("corpus", ""), s.get_or("categories", ""));
  std::size_t train_count = s.get_size("train-count", kDefaultTrainCount);
  if (train_count > c.size()) {
    if (!c.empty())
      std::cerr << "catvec: train count " << train_count << " exceeds " << c.size()
                << " documents; using all as training\n";
    train_count = c.size();
  }
  const auto [train, test] = split_collection(c, train_count);
  const CollectionStats st_train = collection_stats(train);
  const CollectionStats st_test = collection_stats(test);
  const CollectionStats st_total = collection_stats(c);
  std::cout << render_stats_table(st_train, st_test, st_total);
  if (auto out = s.get("json")) {
    nlohmann::json j = {{"training", to_json(st_train)},
                        {"test", to_json(st_test)},
                        {"total", to_json(st_total)},
                        {"categories", c.categories.size()}};
    write_text(*out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_run(const Settings& s, bool levels) {
  ExperimentConfig cfg;
  cfg.approaches = parse_approaches(s.get_or("approaches", "direct,lexicon,training,integrated"));
  cfg.train_count = s.get_size("train-count", kDefaultTrainCount);
  cfg.max_training_terms = s.get_size("max-training-terms", kDefaultTrainingTerms);
  cfg.jobs = static_cast<unsigned>(s.get_size("jobs", 0));
  try {
    cfg.sweep.strategy = parse_strategy(s.get_or("strategy", "threshold"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::size_t k_max = s.get_size("k-max", 10);
  if (k_max < 1) throw UsageError("--k-max must be at least 1");
  cfg.sweep.k_max = static_cast<int>(k_max);
  const std::string orientation = s.get_or("orientation", "category");
  if (orientation == "document")
    cfg.sweep.orientation = Orientation::Document;
  else if (orientation != "category")
    throw UsageError("--orientation must be 'category' or 'document'");

  const Collection corpus = load_corpus(s.get_or("corpus", ""), s.get_or("categories", ""));
  if (cfg.train_count > corpus.size())
    throw UsageError("--train-count " + std::to_string(cfg.train_count) + " exceeds the " +
                     std::to_string(corpus.size()) + " documents in the corpus");

  CategoryNames names;
  if (auto p = s.get("names")) {
    try {
      names = load_category_names(*p);
    } catch (const FormatError& e) {
      throw IoError(*p + ": " + e.what());
    }
  }
  SynsetMap lexicon;
  if (needs_lexicon(cfg.approaches)) {
    auto p = s.get("lexicon");
    if (!p) throw UsageError("the lexicon and integrated approaches need --lexicon or CATVEC_LEXICON");
    if (!fs::exists(*p)) throw IoError("lexicon not found: " + *p);
    try {
      lexicon = load_lexicon(*p, names);
    } catch (const FormatError& e) {
      throw IoError(*p + ": " + e.what());
    }
  }

  const ExperimentResult result = run_experiment(corpus, cfg, lexicon, names);
  const std::vector<EvalReport> reports = result.reports(cfg.approaches);
  std::cout << render_report(reports);
  if (levels) {
    for (const EvalReport& r : reports) {
      std::cout << "\n" << r.approach << " (" << strategy_name(r.strategy) << ")\n";
      std::cout << "level  macro-R   macro-P   micro-R   micro-P\n";
      for (const RPPoint& p : r.points) {
        std::cout << detail::format_fixed(p.level, 1) << "    "
                  << detail::format_fixed(p.macro_recall, 6) << "  "
                  << detail::format_fixed(p.macro_precision, 6) << "  "
                  << detail::format_fixed(p.micro_recall, 6) << "  "
                  << detail::format_fixed(p.micro_precision, 6) << "\n";
      }
    }
  }
  if (auto out = s.get("out")) write_text(*out, to_json(reports).dump(2) + "\n");
  if (auto dir = s.get("cache")) {
    fs::create_directories(*dir);
    for (Approach a : cfg.approaches)
      write_text((fs::path(*dir) / (std::string(approach_name(a)) + ".model.json")).string(),
                 to_json(result.runs.at(a).bundle).dump() + "\n");
  }
  if (auto dir = s.get("scores-out")) {
    fs::create_directories(*dir);
    for (Approach a : cfg.approaches) {
      std::ostringstream os;
      write_scores_csv(os, result.runs.at(a).scores);
      write_text((fs::path(*dir) / (std::string(approach_name(a)) + ".scores.csv")).string(),
                 os.str());
    }
  }
  return kExitOk;
}

int cmd_evaluate(const Settings& s) {
  auto scores_path = s.get("scores");
  if (!scores_path) throw UsageError("--scores is required");
  std::ifstream in(*scores_path);
  if (!in) throw IoError("cannot open " + *scores_path);
  std::vector<ScoredAssignment> scores;
  try {
    scores = read_scores_csv(in);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  const Collection corpus = load_corpus(s.get_or("corpus", ""), s.get_or("categories", ""));
  const std::size_t train_count = s.get_size("train-count", kDefaultTrainCount);
  if (train_count > corpus.size()) throw UsageError("--train-count exceeds corpus size");
  const auto [train, test] = split_collection(corpus, train_count);
  SweepOptions opts;
  try {
    opts.strategy = parse_strategy(s.get_or("strategy", "threshold"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  opts.k_max = static_cast<int>(s.get_size("k-max", 10));
  const EvalReport r = sweep(scores, gold_standard(test), corpus.categories, opts,
                             s.get_or("label", "Scores"));
  std::cout << render_report({r});
  if (auto out = s.get("out")) write_text(*out, to_json(std::vector<EvalReport>{r}).dump(2) + "\n");
  return kExitOk;
}

int cmd_synth(const Settings& s) {
  SynthOptions opt;
  opt.seed = s.get_size("seed", 42);
  opt.n_docs = s.get_size("docs", opt.n_docs);
  opt.n_categories = s.get_size("n-categories", opt.n_categories);
  opt.undertrained = s.get_size("undertrained", opt.undertrained);
  opt.train_fraction = s.get_double("train-fraction", opt.train_fraction);
  opt.words_per_doc = s.get_size("words-per-doc", opt.words_per_doc);
  SynthCorpus corpus;
  try {
    corpus = synthesize_corpus(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_text(s.get_or("out", "-"), serialize_collection(corpus.collection));
  if (auto p = s.get("lexicon-out")) write_text(*p, corpus.lexicon_text);
  if (auto p = s.get("categories-out")) {
    std::string text;
    for (const std::string& c : corpus.collection.categories) text += c + "\n";
    write_text(*p, text);
  }
  std::cerr << "catvec: " << corpus.collection.size() << " documents, train count "
            << corpus.train_count << ", undertrained:";
  for (const std::string& u : corpus.undertrained) std::cerr << " " << u;
  std::cerr << "\n";
  return kExitOk;
}

int cmd_classify(const Settings& s) {
  auto model_path = s.get("model");
  if (!model_path) throw UsageError("--model is required");
  ModelBundle bundle;
  try {
    bundle = model_from_json(nlohmann::json::parse(read_text(*model_path)));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(*model_path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw IoError(*model_path + ": " + e.what());
  }
  std::vector<Document> docs;
  if (auto text = s.get("text")) {
    Document d;
    d.doc_id = 1;
    d.body = *text;
    docs.push_back(d);
  } else if (s.get("corpus")) {
    docs = load_corpus(s.get_or("corpus", ""), "").documents;
  } else {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    Document d;
    d.doc_id = 1;
    d.body = ss.str();
    docs.push_back(d);
  }
  const std::size_t top = s.get_size("top", 5);
  const double threshold = s.get_double("threshold", -1.0);
  if (threshold > 1.0) throw UsageError("--threshold must lie in [0, 1]");
  for (const Document& d : docs) {
    std::size_t shown = 0;
    for (const ScoredAssignment& a : classify(d, bundle.model, bundle.df)) {
      if (a.score <= 0.0) break;
      if (threshold >= 0.0 ? a.score < threshold : shown >= top) break;
      std::cout << a.doc_id << '\t' << a.category << '\t' << detail::format_fixed(a.score, 6)
                << '\n';
      ++shown;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catvec: vector space text categorization with lexicon and training models"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value settings file");

  Settings stats_s, run_s, eval_s, synth_s, classify_s;

  CLI::App* stats = app.add_subcommand("stats", "Collection statistics table");
  add_corpus_settings(stats_s, stats);
  stats_s.add(stats, "json", "--json", "Also write statistics as JSON ('-' for stdout)");

  CLI::App* run = app.add_subcommand("run", "Build models, classify the test split, evaluate");
  add_corpus_settings(run_s, run);
  run_s.add(run, "lexicon", "--lexicon", "Lexicon file (category: synonym | ...)", "CATVEC_LEXICON");
  run_s.add(run, "names", "--names", "Category display-name file, same format as the lexicon",
            "CATVEC_NAMES");
  run_s.add(run, "approaches", "--approaches",
            "Comma list of direct,lexicon,training,integrated (default all)");
  run_s.add(run, "strategy", "--strategy", "threshold (default) or k-per-doc");
  run_s.add(run, "k-max", "--k-max", "Largest k for k-per-doc (default 10)");
  run_s.add(run, "orientation", "--orientation",
            "Macro-averaging items: category (default) or document");
  run_s.add(run, "max-training-terms", "--max-training-terms",
            "Cap on selected training terms (default 286)");
  run_s.add(run, "jobs", "--jobs", "Worker threads for scoring (default: all cores)");
  run_s.add(run, "out", "--out", "Write the JSON report here");
  run_s.add(run, "cache", "--cache", "Directory receiving <approach>.model.json files");
  run_s.add(run, "scores-out", "--scores-out", "Directory receiving <approach>.scores.csv files");
  bool levels = false;
  run->add_flag("--levels", levels, "Print every sweep level, not only the averages");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a doc_id,category,score CSV");
  add_corpus_settings(eval_s, evaluate);
  eval_s.add(evaluate, "scores", "--scores", "Score matrix CSV");
  eval_s.add(evaluate, "strategy", "--strategy", "threshold (default) or k-per-doc");
  eval_s.add(evaluate, "k-max", "--k-max", "Largest k for k-per-doc (default 10)");
  eval_s.add(evaluate, "label", "--label", "Row label in the table");
  eval_s.add(evaluate, "out", "--out", "Write the JSON report here");

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_s.add(synth, "seed", "--seed", "RNG seed (default 42)");
  synth_s.add(synth, "docs", "--docs", "Number of documents (default 1000)");
  synth_s.add(synth, "n-categories", "--n-categories", "Number of categories (default 20)");
  synth_s.add(synth, "undertrained", "--undertrained",
              "Categories with no training documents (default 4)");
  synth_s.add(synth, "train-fraction", "--train-fraction", "Leading fraction used for training");
  synth_s.add(synth, "words-per-doc", "--words-per-doc", "Typical body length (default 80)");
  synth_s.add(synth, "out", "--out", "Corpus output path (default stdout)");
  synth_s.add(synth, "lexicon-out", "--lexicon-out", "Write the matching lexicon here");
  synth_s.add(synth, "categories-out", "--categories-out", "Write the category list here");

  CLI::App* cls = app.add_subcommand("classify", "Score documents against a cached model");
  classify_s.add(cls, "model", "--model", "Model JSON written by 'run --cache'");
  classify_s.add(cls, "text", "--text", "Text to classify (default: stdin)");
  classify_s.add(cls, "corpus", "--corpus", "Classify every record of a corpus file");
  classify_s.add(cls, "top", "--top", "Categories shown per document (default 5)");
  classify_s.add(cls, "threshold", "--threshold", "Show every category scoring at least this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (stats->parsed()) {
      stats_s.load_config(config_path);
      return cmd_stats(stats_s);
    }
    if (run->parsed()) {
      run_s.load_config(config_path);
      return cmd_run(run_s, levels);
    }
    if (evaluate->parsed()) {
      eval_s.load_config(config_path);
      return cmd_evaluate(eval_s);
    }
    if (synth->parsed()) {
      synth_s.load_config(config_path);
      return cmd_synth(synth_s);
    }
    if (cls->parsed()) {
      classify_s.load_config(config_path);
      return cmd_classify(classify_s);
    }
  } catch (const UsageError& e) {
    std::cerr << "catvec: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "catvec: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "catvec: " << e.what() << "\n";
    return kExitEval;
  }
  return kExitUsage;
}
