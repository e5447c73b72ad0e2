#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hwa/corpus.hpp"

// Per-window word statistics and keyword selection. The rating of a word is
// the mean of a tf-idf style score and a utility term that rewards words
// whose frequency grew since the previous window.

namespace hwa {

struct WordStats {
  std::uint32_t tf = 0;    // raw occurrences in the window
  std::uint32_t df = 0;    // posts containing the word
  double score = 0.0;      // tf * log(batch / df)
  std::int64_t diff = 0;   // tf - previous-window tf
  double utility = 0.0;    // growth reward, 0 when diff <= 0
  double kr = 0.0;         // (score + utility) / 2
};

struct RankingOptions {
  // Natural log by default; the base only rescales score and utility
  // jointly, so rankings are unaffected.
  double log_base = 2.718281828459045235;
};

using TfMap = std::map<std::string, std::uint32_t>;

// tf/df aggregation over the window's posts.
std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> term_frequencies(
    const Window& window);

// Throws std::logic_error if df > batch_size (broken window invariant).
double score(std::uint32_t tf, std::uint32_t df, std::size_t batch_size,
             const RankingOptions& opts = {});

// diff and utility for one word given its current and previous tf.
std::pair<std::int64_t, double> utility(std::uint32_t tf_now, std::uint32_t tf_prev,
                                        const RankingOptions& opts = {});

struct WindowStats {
  std::map<std::string, WordStats> words;
  std::size_t batch_size = 0;
};

// Full per-word statistics for a window; `prev_tf` holds the previous
// window's term frequencies (empty for the first window).
WindowStats compute_stats(const Window& window, const TfMap& prev_tf,
                          const RankingOptions& opts = {});

TfMap extract_tf(const WindowStats& stats);

struct KeywordSet {
  std::int64_t window_index = 0;
  double h_percent = 30.0;
  // Descending kr; ties by higher tf, then lexicographic.
  std::vector<std::string> keywords;

  bool contains(const std::string& w) const;
};

// Selects ceil(h/100 * |vocabulary|) words by kr. Words with kr == 0 never
// become keywords even when inside the cutoff count, since later stages
// divide by the rating.
KeywordSet select_keywords(const WindowStats& stats, double h_percent,
                           std::int64_t window_index);

}  // namespace hwa
