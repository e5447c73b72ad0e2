#include "hwa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hwa/text.hpp"

namespace hwa {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<std::string> normalized_words(const json& arr, const char* what) {
  if (!arr.is_array()) {
    throw std::runtime_error(std::string("ground truth: ") + what + " must be an array");
  }
  std::vector<std::string> words;
  for (const auto& v : arr) {
    if (!v.is_string()) {
      throw std::runtime_error(std::string("ground truth: ") + what +
                               " entries must be strings");
    }
    words.push_back(text::normalize(v.get<std::string>()));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

GroundTruthTopic parse_topic(const json& node) {
  if (!node.is_object()) throw std::runtime_error("ground truth: topic must be an object");
  GroundTruthTopic topic;
  if (node.contains("label")) {
    if (!node["label"].is_string()) {
      throw std::runtime_error("ground truth: label must be a string");
    }
    topic.label = node["label"].get<std::string>();
  }
  if (!node.contains("required")) {
    throw std::runtime_error("ground truth: topic lacks required keywords");
  }
  topic.required = normalized_words(node["required"], "required");
  if (topic.required.empty()) {
    throw std::runtime_error("ground truth: required keywords empty");
  }
  if (node.contains("optional")) {
    topic.optional_words = normalized_words(node["optional"], "optional");
  }
  for (const auto& w : topic.optional_words) {
    if (std::binary_search(topic.required.begin(), topic.required.end(), w)) {
      throw std::runtime_error("ground truth: '" + w + "' is both required and optional");
    }
  }
  return topic;
}

// First min(m, size) keywords.
std::vector<std::string> top_m(const std::vector<std::string>& keywords, std::uint32_t m) {
  const std::size_t take = std::min<std::size_t>(m, keywords.size());
  return {keywords.begin(), keywords.begin() + static_cast<std::ptrdiff_t>(take)};
}

const std::vector<Topic>* topics_for(const std::vector<WindowTopics>& detected,
                                     std::int64_t index) {
  for (const auto& w : detected) {
    if (w.index == index) return &w.topics;
  }
  return nullptr;
}

std::vector<Topic> truncated(const std::vector<Topic>* topics,
                             std::optional<std::uint32_t> k) {
  if (topics == nullptr) return {};
  if (!k) return *topics;
  const std::size_t take = std::min<std::size_t>(*k, topics->size());
  return {topics->begin(), topics->begin() + static_cast<std::ptrdiff_t>(take)};
}

}  // namespace

GroundTruth parse_ground_truth(const std::string& json_text) {
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded() || !root.is_object() || !root.contains("windows") ||
      !root["windows"].is_array()) {
    throw std::runtime_error("ground truth: expected {\"windows\": [...]}");
  }
  GroundTruth truth;
  for (const auto& wnode : root["windows"]) {
    if (!wnode.is_object() || !wnode.contains("index") ||
        !wnode["index"].is_number_integer()) {
      throw std::runtime_error("ground truth: window lacks an integer index");
    }
    GroundTruthWindow window;
    window.index = wnode["index"].get<std::int64_t>();
    if (wnode.contains("topics")) {
      if (!wnode["topics"].is_array()) {
        throw std::runtime_error("ground truth: topics must be an array");
      }
      for (const auto& tnode : wnode["topics"]) window.topics.push_back(parse_topic(tnode));
    }
    truth.windows.push_back(std::move(window));
  }
  return truth;
}

GroundTruth read_ground_truth(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open ground truth file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ground_truth(buffer.str());
}

bool matches(const std::vector<std::string>& topic_keywords,
             const GroundTruthTopic& truth, double theta) {
  const std::set<std::string> keywords(topic_keywords.begin(), topic_keywords.end());
  for (const auto& w : truth.required) {
    if (keywords.count(w) == 0) return false;
  }
  const auto needed = static_cast<std::size_t>(
      std::ceil(theta * static_cast<double>(truth.optional_words.size())));
  std::size_t hits = 0;
  for (const auto& w : truth.optional_words) {
    if (keywords.count(w) != 0) ++hits;
  }
  return hits >= needed;
}

double f1_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

WindowScore score_window(std::int64_t window_index, const std::vector<Topic>& topics,
                         const std::vector<GroundTruthTopic>& truth,
                         std::optional<std::uint32_t> k, double theta) {
  WindowScore score;
  score.window = window_index;
  const std::vector<Topic> considered = truncated(&topics, k);
  score.extracted = considered.size();
  score.truth = truth.size();

  std::vector<bool> topic_hit(considered.size(), false);
  for (const auto& gt : truth) {
    bool detected = false;
    for (std::size_t i = 0; i < considered.size(); ++i) {
      if (matches(considered[i].keywords, gt, theta)) {
        detected = true;
        topic_hit[i] = true;
        score.pairs.emplace_back(considered[i].rank, gt.label);
      }
    }
    if (detected) ++score.matched_truth;
  }
  score.matched_extracted =
      static_cast<std::size_t>(std::count(topic_hit.begin(), topic_hit.end(), true));

  score.precision = score.extracted == 0
                        ? 0.0
                        : static_cast<double>(score.matched_extracted) /
                              static_cast<double>(score.extracted);
  score.recall = score.truth == 0 ? 0.0
                                  : static_cast<double>(score.matched_truth) /
                                        static_cast<double>(score.truth);
  score.f1 = f1_score(score.precision, score.recall);
  return score;
}

std::map<std::uint32_t, double> topk_recall_curve(
    const std::vector<WindowTopics>& detected, const GroundTruth& truth,
    const std::vector<std::uint32_t>& ks, double theta) {
  std::map<std::uint32_t, double> curve;
  for (const std::uint32_t k : ks) {
    double sum = 0.0;
    std::size_t windows = 0;
    for (const auto& gtw : truth.windows) {
      if (gtw.topics.empty()) continue;
      ++windows;
      const auto* topics = topics_for(detected, gtw.index);
      const auto considered = truncated(topics, k);
      const WindowScore s =
          score_window(gtw.index, considered, gtw.topics, std::nullopt, theta);
      sum += s.recall;
    }
    curve[k] = windows == 0 ? 0.0 : sum / static_cast<double>(windows);
  }
  return curve;
}

KeywordMetrics keyword_metrics(const std::vector<WindowTopics>& detected,
                               const GroundTruth& truth, std::uint32_t m, double theta,
                               std::optional<std::uint32_t> top_k) {
  std::size_t pairs = 0;
  std::size_t precision_hits = 0;
  std::size_t required_total = 0;
  std::size_t required_found = 0;

  for (const auto& gtw : truth.windows) {
    if (gtw.topics.empty()) continue;
    const auto considered = truncated(topics_for(detected, gtw.index), top_k);
    for (const auto& gt : gtw.topics) {
      required_total += gt.required.size();
      std::set<std::string> found;
      for (const auto& topic : considered) {
        if (!matches(topic.keywords, gt, theta)) continue;
        ++pairs;
        for (const auto& w : top_m(topic.keywords, m)) {
          const bool in_required =
              std::binary_search(gt.required.begin(), gt.required.end(), w);
          const bool in_optional = std::binary_search(gt.optional_words.begin(),
                                                      gt.optional_words.end(), w);
          if (in_required || in_optional) ++precision_hits;
          if (in_required) found.insert(w);
        }
      }
      required_found += found.size();
    }
  }

  KeywordMetrics metrics;
  if (pairs > 0 && m > 0) {
    metrics.precision = static_cast<double>(precision_hits) /
                        (static_cast<double>(m) * static_cast<double>(pairs));
  }
  if (required_total > 0) {
    metrics.recall =
        static_cast<double>(required_found) / static_cast<double>(required_total);
  }
  metrics.f1 = f1_score(metrics.precision, metrics.recall);
  return metrics;
}

EvalReport evaluate_topics(const std::vector<WindowTopics>& detected,
                           const GroundTruth& truth, const EvalOptions& options) {
  EvalReport report;
  report.keyword_m = options.keyword_m;

  std::vector<GroundTruthWindow> bearing;
  for (const auto& gtw : truth.windows) {
    if (!gtw.topics.empty()) bearing.push_back(gtw);
  }
  std::sort(bearing.begin(), bearing.end(),
            [](const GroundTruthWindow& a, const GroundTruthWindow& b) {
              return a.index < b.index;
            });

  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (const auto& gtw : bearing) {
    const auto* topics = topics_for(detected, gtw.index);
    if (topics == nullptr) ++report.missing_windows;
    const auto considered = truncated(topics, options.top_k);
    WindowScore s =
        score_window(gtw.index, considered, gtw.topics, std::nullopt, options.theta);
    precision_sum += s.precision;
    recall_sum += s.recall;
    report.windows.push_back(std::move(s));
  }
  if (!report.windows.empty()) {
    const auto n = static_cast<double>(report.windows.size());
    report.topic_precision = precision_sum / n;
    report.topic_recall = recall_sum / n;
    report.topic_f1 = f1_score(report.topic_precision, report.topic_recall);
  }

  report.topk_recall = topk_recall_curve(detected, truth, options.ks, options.theta);
  const KeywordMetrics km =
      keyword_metrics(detected, truth, options.keyword_m, options.theta, options.top_k);
  report.keyword_precision = km.precision;
  report.keyword_recall = km.recall;
  report.keyword_f1 = km.f1;
  return report;
}

std::string report_to_json(const EvalReport& report) {
  ordered_json root;
  root["topic_precision"] = report.topic_precision;
  root["topic_recall"] = report.topic_recall;
  root["topic_f1"] = report.topic_f1;
  root["keyword_precision"] = report.keyword_precision;
  root["keyword_recall"] = report.keyword_recall;
  root["keyword_f1"] = report.keyword_f1;
  root["keyword_m"] = report.keyword_m;
  ordered_json curve = ordered_json::object();
  for (const auto& [k, recall] : report.topk_recall) {
    curve[std::to_string(k)] = recall;
  }
  root["topk_recall"] = std::move(curve);
  root["missing_windows"] = report.missing_windows;
  ordered_json windows = ordered_json::array();
  for (const auto& w : report.windows) {
    ordered_json node;
    node["window"] = w.window;
    node["extracted"] = w.extracted;
    node["matched_extracted"] = w.matched_extracted;
    node["truth"] = w.truth;
    node["matched_truth"] = w.matched_truth;
    node["precision"] = w.precision;
    node["recall"] = w.recall;
    node["f1"] = w.f1;
    ordered_json pairs = ordered_json::array();
    for (const auto& [rank, label] : w.pairs) {
      pairs.push_back(ordered_json{{"rank", rank}, {"label", label}});
    }
    node["matches"] = std::move(pairs);
    windows.push_back(std::move(node));
  }
  root["windows"] = std::move(windows);
  return root.dump(2);
}

}  // namespace hwa
