#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

// Porter suffix-stripping stemmer (Porter 1980). Faithful to the published
// rule tables, with one guard: one- and two-letter words are returned
// unchanged so that stripping "s" can never leave an empty stem. Within a
// step the longest matching suffix wins; its condition gates the rewrite and
// the step ends either way.

namespace qadiag {
namespace porter_detail {

inline bool is_consonant(std::string_view w, std::size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// m in the [C](VC)^m[V] decomposition.
inline int measure(std::string_view stem) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    bool vowel = !is_consonant(stem, i);
    if (prev_vowel && !vowel) ++m;
    prev_vowel = vowel;
  }
  return m;
}

inline bool has_vowel(std::string_view stem) {
  for (std::size_t i = 0; i < stem.size(); ++i)
    if (!is_consonant(stem, i)) return true;
  return false;
}

inline bool ends_double_consonant(std::string_view stem) {
  std::size_t n = stem.size();
  return n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant(stem, n - 1);
}

// *o: ends consonant-vowel-consonant, final consonant not w, x, or y.
inline bool ends_cvc(std::string_view stem) {
  std::size_t n = stem.size();
  if (n < 3) return false;
  char last = stem[n - 1];
  return is_consonant(stem, n - 3) && !is_consonant(stem, n - 2) &&
         is_consonant(stem, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

enum class Cond { none, m_pos, m_gt1, m_gt1_st };  // st: stem ends s or t

template <std::size_t N>
std::string apply_step(std::string w, const std::array<Rule, N>& rules, Cond cond) {
  const Rule* best = nullptr;
  for (const Rule& r : rules)
    if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
      best = &r;
  if (!best) return w;
  std::string stem = w.substr(0, w.size() - best->suffix.size());
  bool ok = true;
  switch (cond) {
    case Cond::none: break;
    case Cond::m_pos: ok = measure(stem) > 0; break;
    case Cond::m_gt1: ok = measure(stem) > 1; break;
    case Cond::m_gt1_st:
      ok = measure(stem) > 1 &&
           (best->suffix != "ion" || (!stem.empty() && (stem.back() == 's' || stem.back() == 't')));
      break;
  }
  return ok ? stem + std::string(best->replacement) : w;
}

inline std::string step1a(std::string w) {
  static constexpr std::array<Rule, 4> rules{
      Rule{"sses", "ss"}, Rule{"ies", "i"}, Rule{"ss", "ss"}, Rule{"s", ""}};
  return apply_step(std::move(w), rules, Cond::none);
}

inline std::string step1b(std::string w) {
  if (ends_with(w, "eed")) {
    std::string stem = w.substr(0, w.size() - 3);
    return measure(stem) > 0 ? stem + "ee" : w;
  }
  std::string stem;
  if (ends_with(w, "ed") && has_vowel(std::string_view(w).substr(0, w.size() - 2)))
    stem = w.substr(0, w.size() - 2);
  else if (ends_with(w, "ing") && has_vowel(std::string_view(w).substr(0, w.size() - 3)))
    stem = w.substr(0, w.size() - 3);
  else
    return w;
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz"))
    return stem + "e";
  if (ends_double_consonant(stem)) {
    char c = stem.back();
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

inline std::string step1c(std::string w) {
  if (ends_with(w, "y") && has_vowel(std::string_view(w).substr(0, w.size() - 1)))
    w.back() = 'i';
  return w;
}

inline std::string step2(std::string w) {
  static constexpr std::array<Rule, 20> rules{
      Rule{"ational", "ate"}, Rule{"tional", "tion"}, Rule{"enci", "ence"},
      Rule{"anci", "ance"},   Rule{"izer", "ize"},    Rule{"abli", "able"},
      Rule{"alli", "al"},     Rule{"entli", "ent"},   Rule{"eli", "e"},
      Rule{"ousli", "ous"},   Rule{"ization", "ize"}, Rule{"ation", "ate"},
      Rule{"ator", "ate"},    Rule{"alism", "al"},    Rule{"iveness", "ive"},
      Rule{"fulness", "ful"}, Rule{"ousness", "ous"}, Rule{"aliti", "al"},
      Rule{"iviti", "ive"},   Rule{"biliti", "ble"}};
  return apply_step(std::move(w), rules, Cond::m_pos);
}

inline std::string step3(std::string w) {
  static constexpr std::array<Rule, 7> rules{
      Rule{"icate", "ic"}, Rule{"ative", ""}, Rule{"alize", "al"},
      Rule{"iciti", "ic"}, Rule{"ical", "ic"}, Rule{"ful", ""}, Rule{"ness", ""}};
  return apply_step(std::move(w), rules, Cond::m_pos);
}

inline std::string step4(std::string w) {
  static constexpr std::array<Rule, 19> rules{
      Rule{"al", ""},  Rule{"ance", ""}, Rule{"ence", ""}, Rule{"er", ""},
      Rule{"ic", ""},  Rule{"able", ""}, Rule{"ible", ""}, Rule{"ant", ""},
      Rule{"ement", ""}, Rule{"ment", ""}, Rule{"ent", ""}, Rule{"ion", ""},
      Rule{"ou", ""},  Rule{"ism", ""},  Rule{"ate", ""},  Rule{"iti", ""},
      Rule{"ous", ""}, Rule{"ive", ""},  Rule{"ize", ""}};
  return apply_step(std::move(w), rules, Cond::m_gt1_st);
}

inline std::string step5a(std::string w) {
  if (ends_with(w, "e")) {
    std::string_view stem = std::string_view(w).substr(0, w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
  }
  return w;
}

inline std::string step5b(std::string w) {
  if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l') w.pop_back();
  return w;
}

}  // namespace porter_detail

inline std::string porter_stem(std::string word) {
  if (word.size() <= 2) return word;
  using namespace porter_detail;
  word = step1a(std::move(word));
  word = step1b(std::move(word));
  word = step1c(std::move(word));
  word = step2(std::move(word));
  word = step3(std::move(word));
  word = step4(std::move(word));
  word = step5a(std::move(word));
  word = step5b(std::move(word));
  return word;
}

}  // namespace qadiag
