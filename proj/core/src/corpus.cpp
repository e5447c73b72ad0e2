#include "hwa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hwa/text.hpp"

namespace hwa {
namespace {

using text::decode_codepoint;

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  // Peeks the codepoint at `pos` without consuming it.
  char32_t peek(std::size_t* next) const {
    std::size_t p = pos;
    const char32_t cp = decode_codepoint(s, p);
    *next = p;
    return cp;
  }
};

bool is_ascii_word_char(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
         (cp >= '0' && cp <= '9') || cp == '_';
}

bool is_tag_char(char32_t cp) {
  return text::is_letter(cp) || text::is_digit(cp) || cp == '_' ||
         cp == text::kZwnj || text::is_combining_mark(cp);
}

// "scheme://..." or "www." at the cursor; consumes to the next whitespace.
bool try_url(Cursor& c, std::string& surface) {
  const std::string_view rest = c.s.substr(c.pos);
  std::size_t scheme_len = 0;
  for (std::size_t i = 0; i < rest.size() && i < 8; ++i) {
    const char ch = rest[i];
    if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z')) {
      scheme_len = i + 1;
    } else {
      break;
    }
  }
  bool matched = false;
  if (scheme_len >= 2 && rest.substr(scheme_len, 3) == "://") {
    matched = true;
  } else if (rest.size() >= 4) {
    const std::string_view head = rest.substr(0, 4);
    matched = (head == "www." || head == "WWW." || head == "Www.");
  }
  if (!matched) return false;
  std::size_t end = c.pos;
  while (end < c.s.size()) {
    std::size_t next = end;
    const char32_t cp = decode_codepoint(c.s, next);
    if (text::is_whitespace(cp)) break;
    end = next;
  }
  surface.assign(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  return true;
}

bool try_mention(Cursor& c, std::string& surface) {
  std::size_t next;
  if (c.peek(&next) != U'@') return false;
  std::size_t end = next;
  while (end < c.s.size()) {
    std::size_t n = end;
    const char32_t cp = decode_codepoint(c.s, n);
    if (!is_ascii_word_char(cp)) break;
    end = n;
  }
  if (end == next) return false;  // lone '@'
  surface.assign(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  return true;
}

bool try_hashtag(Cursor& c, std::string& surface) {
  std::size_t next;
  if (c.peek(&next) != U'#') return false;
  std::size_t end = next;
  while (end < c.s.size()) {
    std::size_t n = end;
    const char32_t cp = decode_codepoint(c.s, n);
    if (!is_tag_char(cp)) break;
    end = n;
  }
  if (end == next) return false;  // lone '#'
  surface.assign(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  return true;
}

// An emoji token is a run of pictographic codepoints with any joiners,
// modifiers and selectors between them (so ZWJ sequences stay together).
bool try_emoji(Cursor& c, std::string& surface) {
  std::size_t next;
  if (!text::is_emoji(c.peek(&next))) return false;
  std::size_t end = next;
  while (end < c.s.size()) {
    std::size_t n = end;
    const char32_t cp = decode_codepoint(c.s, n);
    if (!text::is_emoji(cp) && cp != text::kZwj) break;
    end = n;
  }
  surface.assign(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  return true;
}

bool try_number(Cursor& c, std::string& surface) {
  std::size_t next;
  if (!text::is_digit(c.peek(&next))) return false;
  std::size_t end = next;
  while (end < c.s.size()) {
    std::size_t n = end;
    const char32_t cp = decode_codepoint(c.s, n);
    if (text::is_digit(cp)) {
      end = n;
      continue;
    }
    if (cp == U'.' || cp == U',') {
      // Join only between digits; "2-1" stays two tokens, "3.5" one.
      std::size_t after = n;
      if (after < c.s.size() && text::is_digit(decode_codepoint(c.s, after))) {
        end = n;
        continue;
      }
    }
    break;
  }
  surface = text::normalize(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  return true;
}

bool try_word(Cursor& c, std::string& surface) {
  std::size_t next;
  if (!text::is_letter(c.peek(&next))) return false;
  std::size_t end = next;
  while (end < c.s.size()) {
    std::size_t n = end;
    const char32_t cp = decode_codepoint(c.s, n);
    if (text::is_letter(cp) || text::is_combining_mark(cp)) {
      end = n;
      continue;
    }
    if (cp == text::kZwnj || cp == U'\'') {
      // Word-internal only: a letter must follow.
      std::size_t after = n;
      if (after < c.s.size() && text::is_letter(decode_codepoint(c.s, after))) {
        end = n;
        continue;
      }
    }
    break;
  }
  surface = text::normalize(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  return true;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Cursor c{text};
  std::string surface;
  while (!c.done()) {
    if (try_url(c, surface)) {
      tokens.push_back({std::move(surface), TokenKind::Url});
    } else if (try_mention(c, surface)) {
      tokens.push_back({std::move(surface), TokenKind::Mention});
    } else if (try_hashtag(c, surface)) {
      tokens.push_back({std::move(surface), TokenKind::Hashtag});
    } else if (try_emoji(c, surface)) {
      tokens.push_back({std::move(surface), TokenKind::Emoji});
    } else if (try_number(c, surface)) {
      tokens.push_back({std::move(surface), TokenKind::Number});
    } else if (try_word(c, surface)) {
      tokens.push_back({std::move(surface), TokenKind::Word});
    } else {
      decode_codepoint(text, c.pos);  // separator
    }
    surface.clear();
  }
  return tokens;
}

StopwordSet StopwordSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    set.insert(line);
  }
  return set;
}

void StopwordSet::insert(std::string_view word) {
  words_.insert(text::normalize(word));
}

bool StopwordSet::contains(const std::string& normalized_word) const {
  return words_.count(normalized_word) > 0;
}

ProcessedPost preprocess(const RawPost& post, const StopwordSet& stopwords) {
  ProcessedPost out;
  out.id = post.id;
  out.timestamp = post.timestamp;
  for (Token& tok : tokenize(post.text)) {
    if (tok.kind != TokenKind::Word && tok.kind != TokenKind::Number) continue;
    if (tok.surface.empty() || stopwords.contains(tok.surface)) continue;
    out.counts[tok.surface] += 1;
    out.words.insert(std::move(tok.surface));
  }
  return out;
}

WindowBuilder::WindowBuilder(std::int64_t duration_seconds,
                             std::optional<std::int64_t> origin)
    : duration_(duration_seconds), origin_(origin) {
  if (duration_ <= 0) throw std::invalid_argument("window duration must be positive");
}

void WindowBuilder::add(const RawPost& post, const StopwordSet& stopwords) {
  if (origin_ && post.timestamp < *origin_) {
    ++rejected_;
    return;
  }
  pending_.emplace_back(post.timestamp, preprocess(post, stopwords));
}

std::vector<Window> WindowBuilder::finish() {
  std::vector<Window> windows;
  if (pending_.empty()) return windows;

  std::int64_t origin = origin_ ? *origin_
                                : std::min_element(pending_.begin(), pending_.end(),
                                                   [](const auto& a, const auto& b) {
                                                     return a.first < b.first;
                                                   })
                                      ->first;

  std::int64_t max_index = 0;
  std::vector<std::pair<std::int64_t, ProcessedPost>> placed;
  placed.reserve(pending_.size());
  for (auto& [ts, post] : pending_) {
    const std::int64_t index = (ts - origin) / duration_;
    max_index = std::max(max_index, index);
    placed.emplace_back(index, std::move(post));
  }
  pending_.clear();

  windows.resize(static_cast<std::size_t>(max_index) + 1);
  for (std::int64_t i = 0; i <= max_index; ++i) {
    auto& w = windows[static_cast<std::size_t>(i)];
    w.index = i;
    w.start = origin + i * duration_;
    w.end = w.start + duration_;
  }
  for (auto& [index, post] : placed) {
    auto& w = windows[static_cast<std::size_t>(index)];
    for (const auto& word : post.words) w.vocabulary.insert(word);
    w.posts.push_back(std::move(post));
  }
  return windows;
}

JsonlReadResult read_posts_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open posts file: " + path);
  JsonlReadResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
        !j.contains("text") || !j.contains("timestamp") ||
        !j["id"].is_string() || !j["text"].is_string() ||
        !j["timestamp"].is_number_integer()) {
      ++result.skipped_lines;
      continue;
    }
    RawPost post{j["id"].get<std::string>(), j["text"].get<std::string>(),
                 j["timestamp"].get<std::int64_t>()};
    if (post.id.empty() || post.timestamp < 0) {
      ++result.skipped_lines;
      continue;
    }
    result.posts.push_back(std::move(post));
  }
  return result;
}

}  // namespace hwa
