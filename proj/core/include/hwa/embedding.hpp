#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwa/patterns.hpp"

// Word vectors and pattern geometry: each pattern is represented by the
// mean of its member-word vectors, and patterns are compared by cosine
// distance.

namespace hwa {

class VectorStore {
 public:
  // Parses the common text interchange format: a "count dim" header, then
  // one "word f1 ... fD" row per word. Rows with the wrong arity or
  // unparsable numbers are counted and skipped; duplicate words keep the
  // first occurrence. Keys are normalized like corpus words. Throws
  // std::runtime_error for a missing, empty or headerless file.
  static VectorStore load(const std::string& path);

  VectorStore() = default;
  VectorStore(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return offsets_.size(); }
  std::size_t skipped_lines() const { return skipped_; }

  void insert(const std::string& word, const std::vector<double>& vector);
  const double* find(const std::string& normalized_word) const;

 private:
  std::size_t dimension_ = 0;
  std::size_t skipped_ = 0;
  std::unordered_map<std::string, std::size_t> offsets_;
  std::vector<double> values_;
};

struct PatternEmbedding {
  std::vector<double> vector;    // mean over covered member words
  std::uint32_t covered = 0;     // members found in the store
  std::uint32_t oov = 0;         // members skipped
  bool degenerate = false;       // covered == 0 or zero-norm mean
};

PatternEmbedding embed_pattern(const Pattern& pattern, const VectorStore& store);

// Dense symmetric matrix of 1 - cosine similarity, zero diagonal, entries
// in [0, 2]. Pairs with a degenerate side get the neutral distance 1.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t j, std::size_t k) const { return values_[j * n_ + k]; }
  double& at(std::size_t j, std::size_t k) { return values_[j * n_ + k]; }
  std::size_t neutral_pairs() const { return neutral_pairs_; }
  void set_neutral_pairs(std::size_t count) { neutral_pairs_ = count; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
  std::size_t neutral_pairs_ = 0;
};

// All embeddings must share one dimension; throws std::logic_error else.
DistanceMatrix distance_matrix(const std::vector<PatternEmbedding>& embeddings);

}  // namespace hwa
