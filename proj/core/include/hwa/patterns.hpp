#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hwa/association.hpp"

// Pattern extraction: each keyword seeds a breadth-first closure under the
// max-association relation, and patterns subsumed by another pattern's word
// set are merged away.

namespace hwa {

struct Pattern {
  std::string seed;
  std::vector<std::string> words;  // insertion order, unique, seed first
  double score = 0.0;              // mean kr of member words

  bool contains(const std::string& w) const;
};

struct PatternSet {
  std::int64_t window_index = 0;
  std::vector<Pattern> patterns;
};

using MaxAssociationMap = std::map<std::string, MaxAssociation>;

// FIFO closure from `seed`: pop a candidate, insert it if new, enqueue its
// max-association set (sets are kept lexicographic — members tie on AGF by
// construction, so that is the whole order). Terminates because enqueues
// happen only on insertion.
Pattern extract_pattern(const std::string& seed, const MaxAssociationMap& m,
                        const std::map<std::string, double>& kr);

// One pattern per keyword, in keyword order, followed by subset merging.
PatternSet extract_all(const KeywordSet& keywords, const MaxAssociationMap& m,
                       const WindowStats& stats);

// Drops every pattern whose word set is contained in another surviving
// pattern's word set; duplicate sets keep the pattern whose seed sorts
// first. Survivors keep their input order. The result is an antichain.
PatternSet merge_subsets(PatternSet set);

}  // namespace hwa
