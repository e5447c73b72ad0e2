#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwa/corpus.hpp"
#include "hwa/ranking.hpp"

// Pairwise association over the selected keywords: post-level co-occurrence
// counts, the damped asymmetric co-occurrence measure (CIMAWA) and the
// associative gravity force (AGF), plus the per-word max-association set.

namespace hwa {

struct MaxAssociation {
  std::string word;
  std::vector<std::string> associates;  // argmax set, lexicographic order
};

// The exact-equality argmax set of a score row, sorted lexicographically.
std::vector<std::string> argmax_set(const std::map<std::string, double>& row);

class AssociationTable {
 public:
  // Counts co-occurrence over the window's posts, restricted to keywords.
  // Pairs that never co-occur are not materialized.
  AssociationTable(const Window& window, const KeywordSet& keywords,
                   const WindowStats& stats, double delta);

  double delta() const { return delta_; }
  const std::vector<std::string>& keywords() const { return words_; }

  // Symmetric post-level co-occurrence count; 0 for unknown words.
  std::uint32_t cooc(const std::string& x, const std::string& y) const;

  // CooC(x,y)/TF(y) + delta * CooC(x,y)/TF(x); 0 when the pair never
  // co-occurs.
  double cimawa(const std::string& x, const std::string& y) const;

  // CIMAWA(x,y) * Kr(x)/Kr(y). Keywords always have kr > 0; a zero-rated y
  // (possible only on hand-built tables) yields 0.
  double agf(const std::string& x, const std::string& y) const;

  // The set of keywords attaining the maximal AGF(w, .) among candidates
  // with positive co-occurrence; empty when w co-occurs with no keyword.
  MaxAssociation max_association(const std::string& w) const;
  std::map<std::string, MaxAssociation> max_associations() const;

  // Debug dump: one "x,y,cooc,cimawa,agf" row per directed co-occurring pair.
  void dump_csv(std::ostream& out) const;

 private:
  std::optional<std::uint32_t> id_of(const std::string& w) const;
  std::uint32_t cooc_by_id(std::uint32_t a, std::uint32_t b) const;
  double cimawa_by_id(std::uint32_t x, std::uint32_t y) const;
  double agf_by_id(std::uint32_t x, std::uint32_t y) const;

  double delta_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<double> tf_;
  std::vector<double> kr_;
  std::unordered_map<std::uint64_t, std::uint32_t> cooc_;
  // Per-keyword adjacency (ids with positive co-occurrence), sorted.
  std::vector<std::vector<std::uint32_t>> neighbors_;
};

}  // namespace hwa
