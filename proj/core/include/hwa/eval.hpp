#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hwa/topics.hpp"

// Scoring emitted topics against labeled ground truth: per-window topic
// precision/recall/f1, a top-k recall curve, and top-m keyword metrics over
// the matched topic/truth pairs.

namespace hwa {

struct GroundTruthTopic {
  std::string label;
  std::vector<std::string> required;        // normalized, sorted, unique
  std::vector<std::string> optional_words;  // normalized, sorted, unique, disjoint
};

struct GroundTruthWindow {
  std::int64_t index = 0;
  std::vector<GroundTruthTopic> topics;
};

struct GroundTruth {
  std::vector<GroundTruthWindow> windows;
};

// {"windows": [{"index": L, "topics": [{"label": str, "required": [str],
// "optional": [str]}]}]}. Keywords run through the same casefold+NFC
// normalization as corpus words. Throws std::runtime_error on unreadable or
// malformed input, an empty required set, or required/optional overlap.
GroundTruth parse_ground_truth(const std::string& json_text);
GroundTruth read_ground_truth(const std::string& path);

// True iff every required word appears among the topic keywords and at
// least ceil(theta * |optional|) optional words do.
bool matches(const std::vector<std::string>& topic_keywords,
             const GroundTruthTopic& truth, double theta = 0.0);

// 2PR/(P+R), or 0 when both are 0.
double f1_score(double precision, double recall);

struct WindowScore {
  std::int64_t window = 0;
  std::size_t extracted = 0;
  std::size_t matched_extracted = 0;
  std::size_t truth = 0;
  std::size_t matched_truth = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // (topic rank, truth label) for every matched pair, audit trail.
  std::vector<std::pair<std::uint32_t, std::string>> pairs;
};

// Scores one window. Topics are truncated to the first `k` when set;
// precision is 0 when nothing was extracted.
WindowScore score_window(std::int64_t window_index, const std::vector<Topic>& topics,
                         const std::vector<GroundTruthTopic>& truth,
                         std::optional<std::uint32_t> k, double theta = 0.0);

struct KeywordMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalOptions {
  double theta = 0.0;
  std::uint32_t keyword_m = 2;
  std::vector<std::uint32_t> ks = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::optional<std::uint32_t> top_k;  // truncate topics before matching
};

struct EvalReport {
  std::vector<WindowScore> windows;  // truth-bearing windows, ascending index
  double topic_precision = 0.0;      // mean over truth-bearing windows
  double topic_recall = 0.0;
  double topic_f1 = 0.0;             // harmonic mean of the two aggregates
  std::map<std::uint32_t, double> topk_recall;
  double keyword_precision = 0.0;
  double keyword_recall = 0.0;
  double keyword_f1 = 0.0;
  std::uint32_t keyword_m = 2;
  std::size_t missing_windows = 0;  // truth windows with no emitted record
};

// Recall at each k with topics truncated to rank <= k, averaged over
// truth-bearing windows. Non-decreasing in k.
std::map<std::uint32_t, double> topk_recall_curve(
    const std::vector<WindowTopics>& detected, const GroundTruth& truth,
    const std::vector<std::uint32_t>& ks, double theta = 0.0);

// Over all matched (topic, truth) pairs: precision counts the topic's top-m
// keywords found in the truth keyword union, out of m per pair; recall
// counts required words found in the top-m of some topic matched to their
// truth entry, out of all required words.
KeywordMetrics keyword_metrics(const std::vector<WindowTopics>& detected,
                               const GroundTruth& truth, std::uint32_t m,
                               double theta = 0.0,
                               std::optional<std::uint32_t> top_k = std::nullopt);

// Full report. Windows whose truth entry lists no topics are skipped; truth
// windows missing from `detected` count as zero extracted topics.
EvalReport evaluate_topics(const std::vector<WindowTopics>& detected,
                           const GroundTruth& truth, const EvalOptions& options = {});

// Pretty-printed JSON rendering of the report.
std::string report_to_json(const EvalReport& report);

}  // namespace hwa
