#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prtrust {

/// Location of a pattern match inside the searched text, as byte offsets.
struct PatternMatch {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const PatternMatch&) const = default;
};

/// A case-insensitive substring pattern in which `*` matches any run of
/// characters (including none).
///
/// Matching algorithm: the pattern is lowercased and split on `*` into
/// literal segments; empty segments are dropped. The text is lowercased
/// (ASCII only; bytes >= 0x80 compare verbatim). The first segment is located
/// at its leftmost occurrence, and each following segment at its leftmost
/// occurrence after the end of the previous one. If every segment is found the
/// match spans from the start of the first segment to the end of the last.
/// Greedy-leftmost placement of later segments is optimal: if it fails from
/// the leftmost start, no later start can succeed.
class Pattern {
 public:
  /// Throws ConfigError if the pattern has no literal characters.
  explicit Pattern(std::string_view source);

  const std::string& source() const noexcept { return source_; }
  std::optional<PatternMatch> find(std::string_view text) const;

  bool operator==(const Pattern& other) const { return source_ == other.source_; }

 private:
  std::string source_;
  std::vector<std::string> segments_;
};

struct LexiconHit {
  std::size_t pattern_index = 0;
  PatternMatch span;
};

/// Ordered, non-empty list of vouching patterns.
class VouchLexicon {
 public:
  /// Throws ConfigError when empty or when a pattern is invalid.
  explicit VouchLexicon(const std::vector<std::string>& patterns);

  static VouchLexicon defaults();
  /// One pattern per line; blank lines and lines starting with '#' are skipped;
  /// surrounding whitespace is trimmed.
  static VouchLexicon parse(std::string_view text);
  static VouchLexicon load(const std::filesystem::path& path);

  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }
  std::vector<std::string> sources() const;

  /// Every pattern that matches, in lexicon order.
  std::vector<LexiconHit> match_all(std::string_view text) const;

  bool operator==(const VouchLexicon&) const = default;

 private:
  std::vector<Pattern> patterns_;
};

/// ASCII lowercase copy.
std::string ascii_lower(std::string_view s);

/// The patterns bundled as the default lexicon.
const std::vector<std::string>& default_vouch_patterns();

}  // namespace prtrust
