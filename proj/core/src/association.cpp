#include "hwa/association.hpp"

#include <algorithm>

namespace hwa {
namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::vector<std::string> argmax_set(const std::map<std::string, double>& row) {
  std::vector<std::string> best;
  double best_value = 0.0;
  for (const auto& [word, value] : row) {
    if (best.empty() || value > best_value) {
      best_value = value;
      best.assign(1, word);
    } else if (value == best_value) {
      best.push_back(word);
    }
  }
  return best;  // map iteration is already lexicographic
}

AssociationTable::AssociationTable(const Window& window, const KeywordSet& keywords,
                                   const WindowStats& stats, double delta)
    : delta_(delta), words_(keywords.keywords) {
  ids_.reserve(words_.size());
  for (std::uint32_t i = 0; i < words_.size(); ++i) ids_.emplace(words_[i], i);

  tf_.resize(words_.size(), 0.0);
  kr_.resize(words_.size(), 0.0);
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    const auto it = stats.words.find(words_[i]);
    if (it != stats.words.end()) {
      tf_[i] = static_cast<double>(it->second.tf);
      kr_[i] = it->second.kr;
    }
  }

  std::vector<std::uint32_t> present;
  for (const auto& post : window.posts) {
    present.clear();
    for (const auto& word : post.words) {
      const auto it = ids_.find(word);
      if (it != ids_.end()) present.push_back(it->second);
    }
    std::sort(present.begin(), present.end());
    for (std::size_t i = 0; i < present.size(); ++i) {
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        cooc_[pair_key(present[i], present[j])] += 1;
      }
    }
  }

  neighbors_.resize(words_.size());
  for (const auto& [key, count] : cooc_) {
    const auto a = static_cast<std::uint32_t>(key >> 32);
    const auto b = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& adj : neighbors_) std::sort(adj.begin(), adj.end());
}

std::optional<std::uint32_t> AssociationTable::id_of(const std::string& w) const {
  const auto it = ids_.find(w);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t AssociationTable::cooc_by_id(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return 0;
  const auto it = cooc_.find(pair_key(a, b));
  return it == cooc_.end() ? 0u : it->second;
}

double AssociationTable::cimawa_by_id(std::uint32_t x, std::uint32_t y) const {
  const std::uint32_t count = cooc_by_id(x, y);
  if (count == 0) return 0.0;
  const double c = static_cast<double>(count);
  return c / tf_[y] + delta_ * c / tf_[x];
}

double AssociationTable::agf_by_id(std::uint32_t x, std::uint32_t y) const {
  if (kr_[y] <= 0.0) return 0.0;
  return cimawa_by_id(x, y) * kr_[x] / kr_[y];
}

std::uint32_t AssociationTable::cooc(const std::string& x, const std::string& y) const {
  const auto a = id_of(x);
  const auto b = id_of(y);
  if (!a || !b) return 0;
  return cooc_by_id(*a, *b);
}

double AssociationTable::cimawa(const std::string& x, const std::string& y) const {
  const auto a = id_of(x);
  const auto b = id_of(y);
  if (!a || !b) return 0.0;
  return cimawa_by_id(*a, *b);
}

double AssociationTable::agf(const std::string& x, const std::string& y) const {
  const auto a = id_of(x);
  const auto b = id_of(y);
  if (!a || !b) return 0.0;
  return agf_by_id(*a, *b);
}

MaxAssociation AssociationTable::max_association(const std::string& w) const {
  MaxAssociation m{w, {}};
  const auto id = id_of(w);
  if (!id) return m;
  std::map<std::string, double> row;
  for (const std::uint32_t other : neighbors_[*id]) {
    row.emplace(words_[other], agf_by_id(*id, other));
  }
  m.associates = argmax_set(row);
  return m;
}

std::map<std::string, MaxAssociation> AssociationTable::max_associations() const {
  std::map<std::string, MaxAssociation> out;
  for (const auto& word : words_) out.emplace(word, max_association(word));
  return out;
}

void AssociationTable::dump_csv(std::ostream& out) const {
  out << "x,y,cooc,cimawa,agf\n";
  for (std::uint32_t x = 0; x < words_.size(); ++x) {
    for (const std::uint32_t y : neighbors_[x]) {
      out << words_[x] << ',' << words_[y] << ',' << cooc_by_id(x, y) << ','
          << cimawa_by_id(x, y) << ',' << agf_by_id(x, y) << '\n';
    }
  }
}

}  // namespace hwa
