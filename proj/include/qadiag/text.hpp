#pragma once

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qadiag/common.hpp"
#include "qadiag/porter.hpp"

namespace qadiag {

// Normalized content words of one text, set semantics.
using TokenSet = std::set<std::string>;

// v1 default stopword list: articles, conjunctions, prepositions, pronouns,
// auxiliaries, question words, plus the quantifiers "much"/"many". All
// lowercase. Replaceable via load_stopwords / QA_DIAG_STOPWORDS.
inline const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      // articles
      "a", "an", "the",
      // conjunctions
      "and", "or", "but", "if", "that", "than",
      // prepositions
      "of", "in", "on", "at", "by", "to", "from", "with", "for", "as",
      // pronouns and demonstratives
      "i", "me", "my", "we", "us", "our", "you", "your", "he", "him", "his",
      "she", "her", "it", "its", "they", "them", "their", "this", "these",
      // auxiliaries and copulas
      "is", "are", "was", "were", "be", "been", "being", "am", "do", "does",
      "did", "have", "has", "had", "will", "would", "shall", "should", "can",
      "could", "may", "might", "must",
      // question words
      "what", "who", "whom", "whose", "when", "where", "why", "how", "which",
      // negation and quantifiers
      "not", "no", "much", "many"};
  return words;
}

struct NormalizationConfig {
  bool lowercase = true;
  bool stem = false;
  std::set<std::string> stopwords = default_stopwords();

  bool operator==(const NormalizationConfig&) const = default;
};

// Defaults per use: sentence/question overlap keeps inflection distinctions,
// answer-key judging folds them.
inline NormalizationConfig overlap_config() { return NormalizationConfig{true, false, default_stopwords()}; }
inline NormalizationConfig judging_config() { return NormalizationConfig{true, true, default_stopwords()}; }

namespace text_detail {

// ASCII alphanumerics are word characters; bytes >= 0x80 are kept so UTF-8
// words survive intact. Everything else separates tokens.
inline bool is_word_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

inline char lower_ascii(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace text_detail

// Splits on maximal runs of non-alphanumeric characters; order and
// duplicates preserved; no empty tokens.
inline std::vector<std::string> tokenize(const std::string& text,
                                         const NormalizationConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (text_detail::is_word_byte(static_cast<unsigned char>(c))) {
      current.push_back(config.lowercase ? text_detail::lower_ascii(c) : c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// Tokenize, drop stopwords, stem survivors if configured, deduplicate.
// Stopwords are filtered again after stemming so no output element is ever
// in the active list (a stem can collapse onto a stopword, e.g. doing -> do).
inline TokenSet content_words(const std::string& text, const NormalizationConfig& config) {
  TokenSet words;
  for (std::string& token : tokenize(text, config)) {
    if (config.stopwords.count(token)) continue;
    std::string word = config.stem ? porter_stem(std::move(token)) : std::move(token);
    if (config.stopwords.count(word)) continue;
    words.insert(std::move(word));
  }
  return words;
}

// One word per line, '#' starts a comment, blank lines ignored. Words are
// lowercased when the active config lowercases, keeping the list closed
// under the configured normalization.
inline std::set<std::string> load_stopwords(const std::string& path, bool lowercase = true) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file: " + path);
  std::set<std::string> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word;
    while (fields >> word) {
      if (lowercase)
        for (char& c : word) c = text_detail::lower_ascii(c);
      words.insert(word);
    }
  }
  return words;
}

// Stable fingerprint of the active stopword list, echoed in reports.
inline std::string stopword_checksum(const std::set<std::string>& words) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& w : words) h = fnv1a64(w + "\n", h);
  return to_hex(h);
}

}  // namespace qadiag
