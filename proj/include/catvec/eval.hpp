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

// Recall/precision evaluation: assignment strategies (threshold sweep and
// k-per-doc), macro and micro averaging, report rendering.

#ifndef CATVEC_EVAL_HPP_
#define CATVEC_EVAL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catvec/categorizers.hpp"
#include "catvec/corpus.hpp"
#include "json.hpp"

namespace catvec {

using Assignment = std::pair<std::uint64_t, std::string>;  // (doc_id, category)
using AssignmentSet = std::set<Assignment>;
using GoldStandard = std::map<std::uint64_t, std::set<std::string>>;

inline GoldStandard gold_standard(const Collection& c) {
  GoldStandard g;
  for (const Document& d : c.documents) g[d.doc_id] = d.topics;
  return g;
}

enum class Strategy { Threshold, KPerDoc };

// Which items macro-averaging runs over. Micro values do not depend on it.
enum class Orientation { Category, Document };

struct RecallPrecision {
  double recall = 0.0;
  double precision = 0.0;
};

struct RPPoint {
  double level = 0.0;  // threshold, or k for KPerDoc
  double macro_recall = 0.0;
  double macro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_precision = 0.0;

  friend bool operator==(const RPPoint&, const RPPoint&) = default;
};

struct EvalReport {
  std::string approach;
  Strategy strategy = Strategy::Threshold;
  std::vector<RPPoint> points;
  RPPoint averages;  // level unused
};

/// Pairs with score >= t. Zero scores are never assigned, even at t = 0.
inline AssignmentSet assign_by_threshold(const std::vector<ScoredAssignment>& scores, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("threshold must lie in [0, 1]");
  AssignmentSet out;
  for (const ScoredAssignment& s : scores)
    if (s.score > 0.0 && s.score >= t) out.emplace(s.doc_id, s.category);
  return out;
}

/// Top k nonzero-scored categories per document; ties go to the
/// lexicographically smaller category.
inline AssignmentSet assign_k_per_doc(const std::vector<ScoredAssignment>& scores, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::map<std::uint64_t, std::vector<const ScoredAssignment*>> by_doc;
  for (const ScoredAssignment& s : scores)
    if (s.score > 0.0) by_doc[s.doc_id].push_back(&s);
  AssignmentSet out;
  for (auto& [doc, list] : by_doc) {
    std::sort(list.begin(), list.end(), [](const auto* a, const auto* b) {
      if (a->score != b->score) return a->score > b->score;
      return a->category < b->category;
    });
    const std::size_t n = std::min(list.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) out.emplace(doc, list[i]->category);
  }
  return out;
}

struct ConfusionCounts {
  std::size_t correct = 0;
  std::size_t assigned = 0;
  std::size_t gold = 0;
};

inline std::map<std::string, ConfusionCounts> per_category_counts(
    const AssignmentSet& assigned, const GoldStandard& gold) {
  std::map<std::string, ConfusionCounts> out;
  for (const auto& [doc, cats] : gold)
    for (const std::string& c : cats) ++out[c].gold;
  for (const auto& [doc, cat] : assigned) {
    ConfusionCounts& cc = out[cat];
    ++cc.assigned;
    auto it = gold.find(doc);
    if (it != gold.end() && it->second.count(cat)) ++cc.correct;
  }
  return out;
}

inline std::map<std::uint64_t, ConfusionCounts> per_document_counts(
    const AssignmentSet& assigned, const GoldStandard& gold) {
  std::map<std::uint64_t, ConfusionCounts> out;
  for (const auto& [doc, cats] : gold) out[doc].gold = cats.size();
  for (const auto& [doc, cat] : assigned) {
    ConfusionCounts& cc = out[doc];
    ++cc.assigned;
    auto it = gold.find(doc);
    if (it != gold.end() && it->second.count(cat)) ++cc.correct;
  }
  return out;
}

namespace detail {

template <typename Map>
RecallPrecision macro_average(const Map& counts) {
  double r = 0.0, p = 0.0;
  std::size_t nr = 0, np = 0;
  for (const auto& [key, cc] : counts) {
    if (cc.gold > 0) {
      r += static_cast<double>(cc.correct) / static_cast<double>(cc.gold);
      ++nr;
    }
    if (cc.assigned > 0) {
      p += static_cast<double>(cc.correct) / static_cast<double>(cc.assigned);
      ++np;
    }
  }
  return {nr ? r / static_cast<double>(nr) : 0.0, np ? p / static_cast<double>(np) : 0.0};
}

}  // namespace detail

/// Mean of per-item recall and precision. Items with a zero denominator
/// are skipped for that metric; if every item is skipped the value is 0.
/// With Orientation::Category the items are `categories` (assignments to
/// other categories are ignored); with Orientation::Document they are the
/// gold documents plus any document that received an assignment.
inline RecallPrecision macro_rp(const AssignmentSet& assigned, const GoldStandard& gold,
                                const std::vector<std::string>& categories,
                                Orientation orientation = Orientation::Category) {
  if (orientation == Orientation::Document)
    return detail::macro_average(per_document_counts(assigned, gold));
  const auto all = per_category_counts(assigned, gold);
  std::map<std::string, ConfusionCounts> selected;
  for (const std::string& c : categories) {
    auto it = all.find(c);
    selected[c] = it == all.end() ? ConfusionCounts{} : it->second;
  }
  return detail::macro_average(selected);
}

/// Pooled counts; 0/0 is 0.
inline RecallPrecision micro_rp(const AssignmentSet& assigned, const GoldStandard& gold) {
  std::size_t correct = 0, to_assign = 0;
  for (const auto& [doc, cats] : gold) to_assign += cats.size();
  for (const auto& [doc, cat] : assigned) {
    auto it = gold.find(doc);
    if (it != gold.end() && it->second.count(cat)) ++correct;
  }
  auto ratio = [](std::size_t a, std::size_t b) {
    return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
  };
  return {ratio(correct, to_assign), ratio(correct, assigned.size())};
}

struct SweepOptions {
  Strategy strategy = Strategy::Threshold;
  int k_max = 10;
  Orientation orientation = Orientation::Category;
};

inline constexpr int kThresholdLevels = 11;

/// Threshold levels are i/10 for i = 0..10, computed by division so each
/// level is the double nearest its decimal value.
inline double threshold_level(int i) { return static_cast<double>(i) / 10.0; }

inline EvalReport sweep(const std::vector<ScoredAssignment>& scores, const GoldStandard& gold,
                        const std::vector<std::string>& categories,
                        const SweepOptions& opts = {}, std::string approach = {}) {
  EvalReport report;
  report.approach = std::move(approach);
  report.strategy = opts.strategy;
  const int levels = opts.strategy == Strategy::Threshold ? kThresholdLevels : opts.k_max;
  if (opts.strategy == Strategy::KPerDoc && opts.k_max < 1)
    throw std::invalid_argument("k_max must be at least 1");
  for (int i = 0; i < levels; ++i) {
    RPPoint p;
    AssignmentSet assigned;
    if (opts.strategy == Strategy::Threshold) {
      p.level = threshold_level(i);
      assigned = assign_by_threshold(scores, p.level);
    } else {
      p.level = i + 1;
      assigned = assign_k_per_doc(scores, i + 1);
    }
    const RecallPrecision macro = macro_rp(assigned, gold, categories, opts.orientation);
    const RecallPrecision micro = micro_rp(assigned, gold);
    p.macro_recall = macro.recall;
    p.macro_precision = macro.precision;
    p.micro_recall = micro.recall;
    p.micro_precision = micro.precision;
    report.points.push_back(p);
  }
  if (!report.points.empty()) {
    RPPoint& a = report.averages;
    for (const RPPoint& p : report.points) {
      a.macro_recall += p.macro_recall;
      a.macro_precision += p.macro_precision;
      a.micro_recall += p.micro_recall;
      a.micro_precision += p.micro_precision;
    }
    const double n = static_cast<double>(report.points.size());
    a.macro_recall /= n;
    a.macro_precision /= n;
    a.micro_recall /= n;
    a.micro_precision /= n;
  }
  return report;
}

inline const char* strategy_name(Strategy s) {
  return s == Strategy::Threshold ? "threshold" : "k-per-doc";
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "threshold") return Strategy::Threshold;
  if (s == "k-per-doc" || s == "kperdoc") return Strategy::KPerDoc;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

/// One row per report: averaged Macro-R, Macro-P, Micro-R, Micro-P with
/// six decimals.
inline std::string render_report(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to render");
  std::string first = reports.front().strategy == Strategy::Threshold
                          ? "Threshold strategy"
                          : "K-per-doc strategy";
  for (const EvalReport& r : reports)
    if (r.strategy != reports.front().strategy) first = "Strategy";
  std::size_t w = first.size();
  for (const EvalReport& r : reports) w = std::max(w, r.approach.size());
  auto pad = [](std::string s, std::size_t width) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
  };
  auto num = [](double v) { return detail::format_fixed(v, 6); };
  std::ostringstream os;
  os << pad("", w) << " | " << pad("Macro-averaging", 19) << " | Micro-averaging\n";
  os << pad(first, w) << " | Recall    Precision | Recall    Precision\n";
  os << std::string(w, '-') << "-+-" << std::string(19, '-') << "-+-"
     << std::string(19, '-') << "\n";
  for (const EvalReport& r : reports) {
    const RPPoint& a = r.averages;
    os << pad(r.approach, w) << " | " << pad(num(a.macro_recall), 9) << " "
       << pad(num(a.macro_precision), 9) << " | " << pad(num(a.micro_recall), 9) << " "
       << num(a.micro_precision) << "\n";
  }
  return os.str();
}

inline nlohmann::json to_json(const RPPoint& p) {
  return {{"level", p.level},
          {"macro_recall", p.macro_recall},
          {"macro_precision", p.macro_precision},
          {"micro_recall", p.micro_recall},
          {"micro_precision", p.micro_precision}};
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json points = nlohmann::json::array();
  for (const RPPoint& p : r.points) points.push_back(to_json(p));
  nlohmann::json avg = to_json(r.averages);
  avg.erase("level");
  return {{"approach", r.approach},
          {"strategy", strategy_name(r.strategy)},
          {"points", std::move(points)},
          {"averages", std::move(avg)}};
}

inline nlohmann::json to_json(const std::vector<EvalReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const EvalReport& r : reports) arr.push_back(to_json(r));
  return {{"format", "catvec-report/1"}, {"reports", std::move(arr)}};
}

// --- score matrix CSV: doc_id,category,score -------------------------------

inline void write_scores_csv(std::ostream& os, const std::vector<ScoredAssignment>& scores) {
  os << "doc_id,category,score\n";
  char buf[64];
  for (const ScoredAssignment& s : scores) {
    std::snprintf(buf, sizeof buf, "%.17g", s.score);
    os << s.doc_id << ',' << s.category << ',' << buf << '\n';
  }
}

inline std::vector<ScoredAssignment> read_scores_csv(std::istream& is) {
  std::vector<ScoredAssignment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view v = detail::trim(line);
    if (v.empty() || (line_no == 1 && v.substr(0, 6) == "doc_id")) continue;
    const std::size_t c1 = v.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : v.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
      throw std::runtime_error("scores csv line " + std::to_string(line_no) +
                               ": expected doc_id,category,score");
    ScoredAssignment s;
    try {
      s.doc_id = std::stoull(std::string(v.substr(0, c1)));
      s.category = std::string(detail::trim(v.substr(c1 + 1, c2 - c1 - 1)));
      s.score = std::stod(std::string(v.substr(c2 + 1)));
    } catch (const std::logic_error&) {
      throw std::runtime_error("scores csv line " + std::to_string(line_no) +
                               ": malformed value");
    }
    if (!(s.score >= 0.0 && s.score <= 1.0))
      throw std::runtime_error("scores csv line " + std::to_string(line_no) +
                               ": score outside [0, 1]");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace catvec

#endif  // CATVEC_EVAL_HPP_
