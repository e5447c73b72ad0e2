#include "hwa/patterns.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hwa {

bool Pattern::contains(const std::string& w) const {
  return std::find(words.begin(), words.end(), w) != words.end();
}

Pattern extract_pattern(const std::string& seed, const MaxAssociationMap& m,
                        const std::map<std::string, double>& kr) {
  Pattern pattern;
  pattern.seed = seed;
  std::set<std::string> members;
  std::deque<std::string> candidates{seed};
  while (!candidates.empty()) {
    std::string c = std::move(candidates.front());
    candidates.pop_front();
    if (members.count(c)) continue;
    const auto assoc = m.find(c);
    if (assoc != m.end()) {
      for (const auto& next : assoc->second.associates) {
        candidates.push_back(next);
      }
    }
    members.insert(c);
    pattern.words.push_back(std::move(c));
  }
  double kr_sum = 0.0;
  for (const auto& w : pattern.words) {
    const auto it = kr.find(w);
    if (it != kr.end()) kr_sum += it->second;
  }
  pattern.score = kr_sum / static_cast<double>(pattern.words.size());
  return pattern;
}

PatternSet extract_all(const KeywordSet& keywords, const MaxAssociationMap& m,
                       const WindowStats& stats) {
  std::map<std::string, double> kr;
  for (const auto& [word, ws] : stats.words) kr.emplace(word, ws.kr);

  PatternSet set;
  set.window_index = keywords.window_index;
  set.patterns.reserve(keywords.keywords.size());
  for (const auto& seed : keywords.keywords) {
    set.patterns.push_back(extract_pattern(seed, m, kr));
  }
  return merge_subsets(std::move(set));
}

PatternSet merge_subsets(PatternSet set) {
  const std::size_t n = set.patterns.size();
  std::vector<std::vector<std::string>> sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = set.patterns[i].words;
    std::sort(sorted[i].begin(), sorted[i].end());
  }

  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && !drop[i]; ++j) {
      if (i == j) continue;
      if (sorted[i].size() > sorted[j].size()) continue;
      if (!std::includes(sorted[j].begin(), sorted[j].end(), sorted[i].begin(),
                         sorted[i].end())) {
        continue;
      }
      if (sorted[i].size() < sorted[j].size()) {
        drop[i] = true;  // strict subset
      } else if (set.patterns[j].seed < set.patterns[i].seed) {
        drop[i] = true;  // duplicate set, keep the first-sorting seed
      }
    }
  }

  PatternSet out;
  out.window_index = set.window_index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!drop[i]) out.patterns.push_back(std::move(set.patterns[i]));
  }
  return out;
}

}  // namespace hwa
