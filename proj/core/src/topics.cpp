#include "hwa/topics.hpp"

#include <algorithm>
#include <set>

namespace hwa {
namespace {

double kr_of(const WindowStats& stats, const std::string& word) {
  const auto it = stats.words.find(word);
  return it == stats.words.end() ? 0.0 : it->second.kr;
}

std::vector<std::string> topic_keywords(const std::vector<std::size_t>& members,
                                        const PatternSet& patterns,
                                        const WindowStats& stats) {
  std::set<std::string> unique;
  for (const std::size_t i : members) {
    const Pattern& p = patterns.patterns[i];
    unique.insert(p.words.begin(), p.words.end());
  }
  std::vector<std::string> words(unique.begin(), unique.end());
  std::stable_sort(words.begin(), words.end(),
                   [&](const std::string& a, const std::string& b) {
                     const double ka = kr_of(stats, a);
                     const double kb = kr_of(stats, b);
                     if (ka != kb) return ka > kb;
                     return a < b;
                   });
  return words;
}

}  // namespace

std::vector<RankedCluster> rank_clusters(const Clustering& clustering,
                                         const PatternSet& patterns) {
  std::vector<RankedCluster> ranked;
  ranked.reserve(clustering.clusters.size());
  for (const auto& members : clustering.clusters) {
    RankedCluster rc;
    rc.members = members;
    std::sort(rc.members.begin(), rc.members.end());
    for (const std::size_t i : rc.members) {
      rc.score = std::max(rc.score, patterns.patterns[i].score);
    }
    ranked.push_back(std::move(rc));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedCluster& a, const RankedCluster& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.members.size() != b.members.size()) {
                       return a.members.size() > b.members.size();
                     }
                     return a.members.front() < b.members.front();
                   });
  return ranked;
}

std::vector<Topic> extract_topics(const Clustering& clustering,
                                  const PatternSet& patterns,
                                  const WindowStats& stats,
                                  std::optional<std::uint32_t> top_k) {
  const auto ranked = rank_clusters(clustering, patterns);

  std::size_t cluster_count = ranked.size();
  if (top_k) cluster_count = std::min<std::size_t>(cluster_count, *top_k);

  std::vector<Topic> topics;
  for (std::size_t i = 0; i < cluster_count; ++i) {
    Topic t;
    t.window_index = patterns.window_index;
    t.keywords = topic_keywords(ranked[i].members, patterns, stats);
    t.score = ranked[i].score;
    t.member_patterns = ranked[i].members;
    t.source = TopicSource::Cluster;
    topics.push_back(std::move(t));
  }

  if (top_k && topics.size() < *top_k) {
    std::vector<std::size_t> noise;
    for (std::size_t i = 0; i < clustering.labels.size(); ++i) {
      if (clustering.labels[i] == Clustering::kNoise) noise.push_back(i);
    }
    std::stable_sort(noise.begin(), noise.end(), [&](std::size_t a, std::size_t b) {
      const double sa = patterns.patterns[a].score;
      const double sb = patterns.patterns[b].score;
      if (sa != sb) return sa > sb;
      return a < b;
    });
    for (const std::size_t i : noise) {
      if (topics.size() >= *top_k) break;
      Topic t;
      t.window_index = patterns.window_index;
      t.keywords = topic_keywords({i}, patterns, stats);
      t.score = patterns.patterns[i].score;
      t.member_patterns = {i};
      t.source = TopicSource::FallbackPattern;
      topics.push_back(std::move(t));
    }
  }

  for (std::size_t i = 0; i < topics.size(); ++i) {
    topics[i].rank = static_cast<std::uint32_t>(i + 1);
  }
  return topics;
}

}  // namespace hwa
