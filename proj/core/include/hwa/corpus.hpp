#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

// Post ingestion: tokenization, stopword filtering and assignment of posts
// to fixed-duration time windows.

namespace hwa {

enum class TokenKind { Word, Number, Emoji, Url, Hashtag, Mention };

struct Token {
  std::string surface;  // Word/Number surfaces are casefolded + NFC
  TokenKind kind = TokenKind::Word;

  bool operator==(const Token&) const = default;
};

// Splits social-media text into typed tokens. Classification tries rules in
// the order Url, Mention, Hashtag, Emoji, Number, Word; anything unmatched
// is a separator. U+200C (ZWNJ) is word-internal so Persian compounds stay
// single tokens, and '.'/',' join digit runs ("3.5" is one Number).
std::vector<Token> tokenize(std::string_view text);

struct RawPost {
  std::string id;
  std::string text;
  std::int64_t timestamp = 0;  // epoch seconds
};

class StopwordSet {
 public:
  StopwordSet() = default;

  // One word per line, normalized with the same casefold+NFC pipeline as
  // tokenization. Throws std::runtime_error if the file cannot be read.
  static StopwordSet load(const std::string& path);

  void insert(std::string_view word);
  bool contains(const std::string& normalized_word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

// A post after tokenization and filtering. `words` is the deduplicated set
// of retained surfaces; `counts` keeps raw occurrence counts per retained
// word since both views feed later stages.
struct ProcessedPost {
  std::string id;
  std::int64_t timestamp = 0;
  std::set<std::string> words;
  std::map<std::string, std::uint32_t> counts;
};

// Retained kinds are Word and Number; stopwords are dropped from both.
ProcessedPost preprocess(const RawPost& post, const StopwordSet& stopwords);

struct Window {
  std::int64_t index = 0;
  std::int64_t start = 0;  // epoch seconds, inclusive
  std::int64_t end = 0;    // epoch seconds, exclusive
  std::vector<ProcessedPost> posts;
  std::set<std::string> vocabulary;

  std::size_t batch_size() const { return posts.size(); }
};

// Buckets posts into half-open [start, end) windows of fixed duration.
// Windows between the first and last occupied index are emitted even when
// empty so that the previous-window frequency reference stays well-defined.
class WindowBuilder {
 public:
  // `origin` anchors window 0; when unset it snaps to the earliest post.
  WindowBuilder(std::int64_t duration_seconds, std::optional<std::int64_t> origin);

  void add(const RawPost& post, const StopwordSet& stopwords);
  std::vector<Window> finish();

  std::size_t rejected() const { return rejected_; }

 private:
  std::int64_t duration_;
  std::optional<std::int64_t> origin_;
  std::vector<std::pair<std::int64_t, ProcessedPost>> pending_;  // (timestamp, post)
  std::size_t rejected_ = 0;
};

struct JsonlReadResult {
  std::vector<RawPost> posts;
  std::size_t skipped_lines = 0;  // lines that failed to parse or validate
};

// Reads posts from JSON Lines: {"id": str, "text": str, "timestamp": int}.
// Bad lines are counted and skipped. Throws std::runtime_error when the
// file cannot be opened or is not valid UTF-8 input.
JsonlReadResult read_posts_jsonl(const std::string& path);

}  // namespace hwa
