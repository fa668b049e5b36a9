#include "prtrust/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "prtrust/errors.hpp"

namespace prtrust {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Pattern::Pattern(std::string_view source) : source_(source) {
  const std::string lowered = ascii_lower(source);
  std::size_t start = 0;
  while (start <= lowered.size()) {
    const std::size_t star = lowered.find('*', start);
    const std::size_t stop = star == std::string::npos ? lowered.size() : star;
    if (stop > start) segments_.push_back(lowered.substr(start, stop - start));
    if (star == std::string::npos) break;
    start = star + 1;
  }
  const bool has_literal = std::any_of(segments_.begin(), segments_.end(), [](const std::string& s) {
    return s.find_first_not_of(" \t") != std::string::npos;
  });
  if (!has_literal) throw ConfigError("lexicon pattern '" + source_ + "' has no literal text");
}

std::optional<PatternMatch> Pattern::find(std::string_view text) const {
  const std::string hay = ascii_lower(text);
  const std::size_t first = hay.find(segments_.front());
  if (first == std::string::npos) return std::nullopt;
  std::size_t cursor = first + segments_.front().size();
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const std::size_t at = hay.find(segments_[i], cursor);
    if (at == std::string::npos) return std::nullopt;
    cursor = at + segments_[i].size();
  }
  return PatternMatch{first, cursor};
}

const std::vector<std::string>& default_vouch_patterns() {
  static const std::vector<std::string> kPatterns = {
      "new member of our team", "already reviewed * work", "i can vouch",
      "recommend* this",        "works with me",           "on my team",
  };
  return kPatterns;
}

VouchLexicon::VouchLexicon(const std::vector<std::string>& patterns) {
  if (patterns.empty()) throw ConfigError("vouch lexicon is empty");
  patterns_.reserve(patterns.size());
  for (const auto& p : patterns) patterns_.emplace_back(p);
}

VouchLexicon VouchLexicon::defaults() { return VouchLexicon(default_vouch_patterns()); }

VouchLexicon VouchLexicon::parse(std::string_view text) {
  std::vector<std::string> patterns;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    const auto b = line.find_first_not_of(" \t\r");
    if (b != std::string_view::npos) {
      const auto e = line.find_last_not_of(" \t\r");
      line = line.substr(b, e - b + 1);
      if (line.front() != '#') patterns.emplace_back(line);
    }
    pos = nl + 1;
  }
  return VouchLexicon(patterns);
}

VouchLexicon VouchLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open lexicon '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<std::string> VouchLexicon::sources() const {
  std::vector<std::string> out;
  out.reserve(patterns_.size());
  for (const auto& p : patterns_) out.push_back(p.source());
  return out;
}

std::vector<LexiconHit> VouchLexicon::match_all(std::string_view text) const {
  std::vector<LexiconHit> hits;
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (auto m = patterns_[i].find(text)) hits.push_back(LexiconHit{i, *m});
  }
  return hits;
}

}  // namespace prtrust
