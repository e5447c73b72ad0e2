#include "hwa/embedding.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hwa/text.hpp"

namespace hwa {
namespace {

bool parse_double(std::string_view field, double& out) {
  const auto result = std::from_chars(field.data(), field.data() + field.size(), out);
  return result.ec == std::errc() && result.ptr == field.data() + field.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

}  // namespace

VectorStore VectorStore::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vector file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty vector file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::size_t declared_count = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    if (!(header >> declared_count >> dim) || dim == 0) {
      throw std::runtime_error("bad vector file header: " + path);
    }
  }

  VectorStore store(dim);
  std::vector<double> row(dim);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != dim + 1) {
      ++store.skipped_;
      continue;
    }
    bool ok = true;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_double(fields[i + 1], row[i])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++store.skipped_;
      continue;
    }
    store.insert(text::normalize(fields[0]), row);
  }
  return store;
}

void VectorStore::insert(const std::string& word, const std::vector<double>& vector) {
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) {
    throw std::logic_error("vector dimension mismatch for word: " + word);
  }
  const auto [it, inserted] = offsets_.emplace(word, values_.size());
  if (!inserted) return;  // first occurrence wins
  values_.insert(values_.end(), vector.begin(), vector.end());
}

const double* VectorStore::find(const std::string& normalized_word) const {
  const auto it = offsets_.find(normalized_word);
  if (it == offsets_.end()) return nullptr;
  return values_.data() + it->second;
}

PatternEmbedding embed_pattern(const Pattern& pattern, const VectorStore& store) {
  PatternEmbedding emb;
  emb.vector.assign(store.dimension(), 0.0);
  for (const auto& word : pattern.words) {
    const double* v = store.find(word);
    if (v == nullptr) {
      ++emb.oov;
      continue;
    }
    for (std::size_t i = 0; i < store.dimension(); ++i) emb.vector[i] += v[i];
    ++emb.covered;
  }
  if (emb.covered == 0) {
    emb.degenerate = true;
    return emb;
  }
  double norm_sq = 0.0;
  for (auto& x : emb.vector) {
    x /= static_cast<double>(emb.covered);
    norm_sq += x * x;
  }
  emb.degenerate = norm_sq == 0.0;
  return emb;
}

DistanceMatrix distance_matrix(const std::vector<PatternEmbedding>& embeddings) {
  const std::size_t n = embeddings.size();
  DistanceMatrix d(n);
  if (n == 0) return d;

  const std::size_t dim = embeddings.front().vector.size();
  std::vector<double> norms(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (embeddings[j].vector.size() != dim) {
      throw std::logic_error("pattern embedding dimension mismatch");
    }
    double s = 0.0;
    for (const double x : embeddings[j].vector) s += x * x;
    norms[j] = std::sqrt(s);
  }

  std::size_t neutral = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      double dist;
      if (embeddings[j].degenerate || embeddings[k].degenerate || norms[j] == 0.0 ||
          norms[k] == 0.0) {
        dist = 1.0;  // no semantic evidence either way
        ++neutral;
      } else {
        double dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          dot += embeddings[j].vector[i] * embeddings[k].vector[i];
        }
        const double cosine = dot / (norms[j] * norms[k]);
        dist = 1.0 - std::clamp(cosine, -1.0, 1.0);
      }
      d.at(j, k) = dist;
      d.at(k, j) = dist;
    }
  }
  d.set_neutral_pairs(neutral);
  return d;
}

}  // namespace hwa
