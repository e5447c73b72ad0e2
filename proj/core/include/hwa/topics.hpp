#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hwa/clustering.hpp"
#include "hwa/patterns.hpp"
#include "hwa/ranking.hpp"

// Final topic assembly: clusters are ranked by their best member pattern,
// noise patterns can fill the tail up to top_k, and every topic lists the
// deduplicated union of its member-pattern words.

namespace hwa {

enum class TopicSource { Cluster, FallbackPattern };

struct Topic {
  std::int64_t window_index = 0;
  std::uint32_t rank = 0;                    // 1-based
  std::vector<std::string> keywords;         // descending kr, ties lexicographic
  double score = 0.0;
  std::vector<std::size_t> member_patterns;  // indices into the pattern set
  TopicSource source = TopicSource::Cluster;
};

// One emitted window: its time bounds and ranked topics.
struct WindowTopics {
  std::int64_t index = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::vector<Topic> topics;
};

struct RankedCluster {
  std::vector<std::size_t> members;  // pattern indices, ascending
  double score = 0.0;                // max member pattern score
};

// Descending score; ties prefer more members, then the smaller first
// pattern id.
std::vector<RankedCluster> rank_clusters(const Clustering& clustering,
                                         const PatternSet& patterns);

// Ranked topics for one window. With top_k set, at most top_k topics come
// back and noise patterns (by score, ties by smaller id) fill the tail once
// clusters run out. Unset top_k reports every cluster and never falls back.
// Cluster topics always precede fallback topics.
std::vector<Topic> extract_topics(const Clustering& clustering,
                                  const PatternSet& patterns,
                                  const WindowStats& stats,
                                  std::optional<std::uint32_t> top_k);

}  // namespace hwa
