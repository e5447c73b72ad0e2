#include "hwa/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hwa/association.hpp"
#include "hwa/clustering.hpp"
#include "hwa/patterns.hpp"
#include "hwa/ranking.hpp"

namespace hwa {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[32];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

const char* source_name(TopicSource source) {
  return source == TopicSource::Cluster ? "cluster" : "fallback";
}

TopicSource source_from(const std::string& name) {
  if (name == "cluster") return TopicSource::Cluster;
  if (name == "fallback") return TopicSource::FallbackPattern;
  throw std::runtime_error("unknown topic source: " + name);
}

}  // namespace

void validate(const PipelineConfig& config) {
  if (config.window_minutes < 1) {
    throw std::invalid_argument("window_minutes must be at least 1");
  }
  if (!(config.h_percent > 0.0) || config.h_percent > 100.0) {
    throw std::invalid_argument("h must be in (0, 100]");
  }
  if (!(config.delta > 0.0) || config.delta > 1.0) {
    throw std::invalid_argument("delta must be in (0, 1]");
  }
  if (config.min_cluster_size < 2) {
    throw std::invalid_argument("min_cluster_size must be at least 2");
  }
  if (config.top_k && *config.top_k < 1) {
    throw std::invalid_argument("top_k must be at least 1");
  }
}

DetectResult run_detect(const std::vector<RawPost>& posts, const StopwordSet& stopwords,
                        const VectorStore& vectors, const PipelineConfig& config) {
  validate(config);

  WindowBuilder builder(config.window_minutes * 60, config.origin);
  for (const auto& post : posts) builder.add(post, stopwords);
  const std::vector<Window> windows = builder.finish();

  DetectResult result;
  result.rejected_posts = builder.rejected();

  TfMap prev_tf;
  for (const Window& window : windows) {
    const WindowStats stats = compute_stats(window, prev_tf);

    std::vector<Topic> topics;
    const KeywordSet keywords =
        select_keywords(stats, config.h_percent, window.index);
    if (!keywords.keywords.empty()) {
      AssociationTable table(window, keywords, stats, config.delta);
      PatternSet patterns = extract_all(keywords, table.max_associations(), stats);

      std::vector<PatternEmbedding> embeddings;
      embeddings.reserve(patterns.patterns.size());
      for (const Pattern& p : patterns.patterns) {
        embeddings.push_back(embed_pattern(p, vectors));
      }
      const Clustering clustering =
          hdbscan(distance_matrix(embeddings), {config.min_cluster_size, 0});
      topics = extract_topics(clustering, patterns, stats, config.top_k);
    }

    std::map<std::string, std::uint32_t> tf;
    for (const Topic& topic : topics) {
      for (const auto& word : topic.keywords) {
        const auto it = stats.words.find(word);
        tf[word] = it == stats.words.end() ? 0 : it->second.tf;
      }
    }

    WindowTopics record;
    record.index = window.index;
    record.start = window.start;
    record.end = window.end;
    record.topics = std::move(topics);
    result.windows.push_back(std::move(record));
    result.keyword_tf.push_back(std::move(tf));

    prev_tf = extract_tf(stats);
  }
  return result;
}

void write_topics_jsonl(std::ostream& out, const std::vector<WindowTopics>& windows) {
  for (const auto& window : windows) {
    ordered_json record;
    record["window"] = window.index;
    record["start"] = window.start;
    record["end"] = window.end;
    ordered_json topics = ordered_json::array();
    for (const Topic& topic : window.topics) {
      ordered_json node;
      node["rank"] = topic.rank;
      node["score"] = topic.score;
      node["keywords"] = topic.keywords;
      node["source"] = source_name(topic.source);
      topics.push_back(std::move(node));
    }
    record["topics"] = std::move(topics);
    out << record.dump() << '\n';
  }
}

void write_word_freq_jsonl(std::ostream& out, const DetectResult& result) {
  for (std::size_t i = 0; i < result.windows.size(); ++i) {
    const auto& window = result.windows[i];
    const auto& tf = result.keyword_tf[i];
    ordered_json record;
    record["window"] = window.index;
    ordered_json topics = ordered_json::array();
    for (const Topic& topic : window.topics) {
      ordered_json words = ordered_json::object();
      for (const auto& word : topic.keywords) {
        const auto it = tf.find(word);
        words[word] = it == tf.end() ? 0u : it->second;
      }
      topics.push_back(ordered_json{{"rank", topic.rank}, {"words", std::move(words)}});
    }
    record["topics"] = std::move(topics);
    out << record.dump() << '\n';
  }
}

std::vector<WindowTopics> read_topics_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open topics file: " + path);

  std::vector<WindowTopics> windows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("window") ||
        !record.contains("topics")) {
      throw std::runtime_error("malformed topics record at line " +
                               std::to_string(line_number));
    }
    try {
      WindowTopics window;
      window.index = record["window"].get<std::int64_t>();
      window.start = record.value("start", std::int64_t{0});
      window.end = record.value("end", std::int64_t{0});
      for (const auto& node : record["topics"]) {
        Topic topic;
        topic.window_index = window.index;
        topic.rank = node.at("rank").get<std::uint32_t>();
        topic.score = node.at("score").get<double>();
        topic.keywords = node.at("keywords").get<std::vector<std::string>>();
        topic.source = source_from(node.at("source").get<std::string>());
        window.topics.push_back(std::move(topic));
      }
      windows.push_back(std::move(window));
    } catch (const json::exception& e) {
      throw std::runtime_error("malformed topics record at line " +
                               std::to_string(line_number) + ": " + e.what());
    }
  }
  return windows;
}

std::vector<double> default_h_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(5.0 * i);
  return grid;
}

std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  return grid;
}

std::vector<TuneRow> run_tune(const std::vector<RawPost>& posts,
                              const StopwordSet& stopwords, const VectorStore& vectors,
                              const GroundTruth& truth, PipelineConfig config,
                              const std::vector<double>& h_grid,
                              const std::vector<double>& delta_grid,
                              const EvalOptions& eval_options) {
  std::vector<TuneRow> rows;
  rows.reserve(h_grid.size() * delta_grid.size());
  for (const double h : h_grid) {
    for (const double delta : delta_grid) {
      config.h_percent = h;
      config.delta = delta;
      const DetectResult detected = run_detect(posts, stopwords, vectors, config);
      const EvalReport report = evaluate_topics(detected.windows, truth, eval_options);
      rows.push_back({h, delta, report.keyword_f1});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const TuneRow& a, const TuneRow& b) {
    if (a.f1 != b.f1) return a.f1 > b.f1;
    if (a.h != b.h) return a.h < b.h;
    return a.delta < b.delta;
  });
  return rows;
}

void write_tune_csv(std::ostream& out, const std::vector<TuneRow>& rows) {
  for (const TuneRow& row : rows) {
    out << format_double(row.h) << ',' << format_double(row.delta) << ','
        << format_double(row.f1) << '\n';
  }
}

}  // namespace hwa
