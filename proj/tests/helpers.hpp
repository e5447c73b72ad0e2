#pragma once

// Shared fixtures: building windows straight from word lists, random
// corpora, and scratch files for the I/O paths.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hwa/corpus.hpp"
#include "oracles.hpp"

namespace testutil {

// A window whose posts are given directly as word multisets.
inline hwa::Window make_window(std::int64_t index,
                               const std::vector<std::vector<std::string>>& posts) {
  hwa::Window w;
  w.index = index;
  w.start = index * 720 * 60;
  w.end = w.start + 720 * 60;
  int seq = 0;
  for (const auto& words : posts) {
    hwa::ProcessedPost p;
    p.id = "p" + std::to_string(index) + "_" + std::to_string(seq++);
    p.timestamp = w.start;
    for (const auto& word : words) {
      p.counts[word] += 1;
      p.words.insert(word);
    }
    for (const auto& word : p.words) w.vocabulary.insert(word);
    w.posts.push_back(std::move(p));
  }
  return w;
}

inline oracle::Batch to_batch(const hwa::Window& w) {
  oracle::Batch batch;
  for (const auto& post : w.posts) {
    oracle::Post p;
    for (const auto& [word, count] : post.counts) p[word] = static_cast<int>(count);
    batch.push_back(std::move(p));
  }
  return batch;
}

// Random posts over a vocabulary of `vocab` single-letter-ish words.
inline std::vector<std::vector<std::string>> random_posts(std::mt19937& rng,
                                                          int max_posts, int vocab,
                                                          int max_words_per_post) {
  std::uniform_int_distribution<int> posts_dist(1, max_posts);
  std::uniform_int_distribution<int> words_dist(1, max_words_per_post);
  std::uniform_int_distribution<int> word_dist(0, vocab - 1);
  std::vector<std::vector<std::string>> posts(posts_dist(rng));
  for (auto& post : posts) {
    const int n = words_dist(rng);
    for (int i = 0; i < n; ++i) post.push_back("w" + std::to_string(word_dist(rng)));
  }
  return posts;
}

// Random symmetric distance matrix with zero diagonal and distinct-ish
// off-diagonal entries.
inline std::vector<std::vector<double>> random_distances(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> dist(0.01, 2.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(rng);
  return d;
}

// Scratch directory cleaned up on destruction.
class TempDir {
 public:
  TempDir() {
    const auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    dir_ = base / ("hwa_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    const std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path dir_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace testutil
