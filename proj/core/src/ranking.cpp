#include "hwa/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hwa {
namespace {

double log_scale(const RankingOptions& opts) {
  return 1.0 / std::log(opts.log_base);
}

}  // namespace

std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> term_frequencies(
    const Window& window) {
  std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& post : window.posts) {
    for (const auto& [word, count] : post.counts) {
      auto& [tf, df] = out[word];
      tf += count;
      df += 1;
    }
  }
  return out;
}

double score(std::uint32_t tf, std::uint32_t df, std::size_t batch_size,
             const RankingOptions& opts) {
  if (df > batch_size) {
    throw std::logic_error("df exceeds batch size");
  }
  if (df == 0) return 0.0;
  return static_cast<double>(tf) *
         std::log(static_cast<double>(batch_size) / static_cast<double>(df)) *
         log_scale(opts);
}

std::pair<std::int64_t, double> utility(std::uint32_t tf_now, std::uint32_t tf_prev,
                                        const RankingOptions& opts) {
  const std::int64_t diff =
      static_cast<std::int64_t>(tf_now) - static_cast<std::int64_t>(tf_prev);
  if (diff <= 0) return {diff, 0.0};
  const double growth = std::log((static_cast<double>(tf_now) + 1.0) /
                                 (static_cast<double>(tf_prev) + 1.0)) *
                        log_scale(opts);
  return {diff, static_cast<double>(diff) * growth};
}

WindowStats compute_stats(const Window& window, const TfMap& prev_tf,
                          const RankingOptions& opts) {
  WindowStats stats;
  stats.batch_size = window.batch_size();
  for (const auto& [word, tfdf] : term_frequencies(window)) {
    WordStats ws;
    ws.tf = tfdf.first;
    ws.df = tfdf.second;
    ws.score = score(ws.tf, ws.df, stats.batch_size, opts);
    const auto prev = prev_tf.find(word);
    const std::uint32_t tf_prev = prev == prev_tf.end() ? 0u : prev->second;
    std::tie(ws.diff, ws.utility) = utility(ws.tf, tf_prev, opts);
    ws.kr = (ws.score + ws.utility) / 2.0;
    stats.words.emplace(word, ws);
  }
  return stats;
}

TfMap extract_tf(const WindowStats& stats) {
  TfMap tf;
  for (const auto& [word, ws] : stats.words) tf.emplace(word, ws.tf);
  return tf;
}

bool KeywordSet::contains(const std::string& w) const {
  return std::find(keywords.begin(), keywords.end(), w) != keywords.end();
}

KeywordSet select_keywords(const WindowStats& stats, double h_percent,
                           std::int64_t window_index) {
  if (h_percent <= 0.0 || h_percent > 100.0) {
    throw std::invalid_argument("h must be in (0, 100]");
  }
  KeywordSet set;
  set.window_index = window_index;
  set.h_percent = h_percent;
  if (stats.words.empty()) return set;

  std::vector<const std::pair<const std::string, WordStats>*> order;
  order.reserve(stats.words.size());
  for (const auto& entry : stats.words) order.push_back(&entry);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->second.kr != b->second.kr) return a->second.kr > b->second.kr;
    if (a->second.tf != b->second.tf) return a->second.tf > b->second.tf;
    return a->first < b->first;
  });

  const auto cutoff = static_cast<std::size_t>(
      std::ceil(h_percent / 100.0 * static_cast<double>(stats.words.size())));
  for (std::size_t i = 0; i < order.size() && i < cutoff; ++i) {
    if (order[i]->second.kr <= 0.0) break;  // sorted, so the rest are zero too
    set.keywords.push_back(order[i]->first);
  }
  return set;
}

}  // namespace hwa
