#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hwa/corpus.hpp"
#include "hwa/embedding.hpp"
#include "hwa/eval.hpp"
#include "hwa/topics.hpp"

// Window-by-window orchestration of the whole pipeline, the JSONL topic
// format, and the tune grid search. Windows run strictly in index order
// because the utility term needs the previous window's term frequencies.

namespace hwa {

struct PipelineConfig {
  std::int64_t window_minutes = 720;
  double h_percent = 30.0;
  double delta = 0.5;
  std::uint32_t min_cluster_size = 5;
  std::optional<std::uint32_t> top_k;       // unset: report every cluster
  std::optional<std::int64_t> origin;       // epoch seconds anchoring window 0
};

// Throws std::invalid_argument when a bound is violated: window_minutes >= 1,
// 0 < h <= 100, 0 < delta <= 1, min_cluster_size >= 2, top_k >= 1.
void validate(const PipelineConfig& config);

struct DetectResult {
  std::vector<WindowTopics> windows;
  // Per window: tf of every topic keyword, for the word-frequency dump.
  std::vector<std::map<std::string, std::uint32_t>> keyword_tf;
  std::size_t rejected_posts = 0;  // posts before the configured origin
};

DetectResult run_detect(const std::vector<RawPost>& posts, const StopwordSet& stopwords,
                        const VectorStore& vectors, const PipelineConfig& config);

// One JSON object per line: {"window": L, "start": s, "end": e, "topics":
// [{"rank": r, "score": s, "keywords": [...], "source": "cluster"|"fallback"}]}.
void write_topics_jsonl(std::ostream& out, const std::vector<WindowTopics>& windows);

// One line per window: {"window": L, "topics": [{"rank": r, "words":
// {word: tf, ...}}]} with words in topic keyword order.
void write_word_freq_jsonl(std::ostream& out, const DetectResult& result);

// Reads write_topics_jsonl output back; blank lines are ignored. Throws
// std::runtime_error on unreadable files or malformed records.
std::vector<WindowTopics> read_topics_jsonl(const std::string& path);

struct TuneRow {
  double h = 0.0;
  double delta = 0.0;
  double f1 = 0.0;  // top-m keyword f1
};

std::vector<double> default_h_grid();      // 5, 10, ..., 50
std::vector<double> default_delta_grid();  // 0.1, 0.2, ..., 1.0

// Full detect + evaluate at every grid point. Rows come back sorted by
// descending f1, ties by ascending h then ascending delta.
std::vector<TuneRow> run_tune(const std::vector<RawPost>& posts,
                              const StopwordSet& stopwords, const VectorStore& vectors,
                              const GroundTruth& truth, PipelineConfig config,
                              const std::vector<double>& h_grid,
                              const std::vector<double>& delta_grid,
                              const EvalOptions& eval_options = {});

// "h,delta,f1" per row, shortest round-trip float formatting, no header.
void write_tune_csv(std::ostream& out, const std::vector<TuneRow>& rows);

}  // namespace hwa
