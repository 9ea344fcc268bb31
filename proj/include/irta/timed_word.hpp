#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "irta/rational.hpp"

namespace irta {

// One step of a timed word: wait `delay`, then read `symbol`.
struct TimedLetter {
  Rational delay;
  std::string symbol;

  friend bool operator==(const TimedLetter&, const TimedLetter&) = default;
  friend std::strong_ordering operator<=>(const TimedLetter& a,
                                          const TimedLetter& b) {
    if (auto c = a.delay <=> b.delay; c != 0) return c;
    return a.symbol <=> b.symbol;
  }
};

// Letters of the finite symbolic alphabet are plain timed letters whose
// delays are restricted to {0, 1/2, 1, ..., K, K+1/2}.
using SymbolicLetter = TimedLetter;

struct TimedWord {
  std::vector<TimedLetter> letters;

  TimedWord() = default;
  explicit TimedWord(std::vector<TimedLetter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  TimedWord prefix(std::size_t n) const {
    return TimedWord({letters.begin(), letters.begin() + n});
  }

  TimedWord appended(const TimedLetter& l) const {
    TimedWord w = *this;
    w.letters.push_back(l);
    return w;
  }

  friend TimedWord operator+(const TimedWord& a, const TimedWord& b) {
    TimedWord w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
  }

  friend bool operator==(const TimedWord&, const TimedWord&) = default;
  friend std::strong_ordering operator<=>(const TimedWord& a,
                                          const TimedWord& b) {
    return std::lexicographical_compare_three_way(
        a.letters.begin(), a.letters.end(), b.letters.begin(), b.letters.end());
  }
};

// Shortlex: length first, then per-position (delay, symbol). This is the
// tie-break order used everywhere a "least" word is produced.
inline bool shortlex_less(const TimedWord& a, const TimedWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct ShortlexLess {
  bool operator()(const TimedWord& a, const TimedWord& b) const {
    return shortlex_less(a, b);
  }
};

inline Rational total_delay(const TimedWord& w) {
  Rational sum;
  for (const auto& l : w.letters) sum += l.delay;
  return sum;
}

// Every delay is an integer or an integer plus one half.
inline bool is_half_integral(const TimedWord& w) {
  for (const auto& l : w.letters) {
    const Rational f = l.delay.frac();
    if (!f.is_zero() && f != half()) return false;
  }
  return true;
}

// Every delay is strictly below K+1.
inline bool is_small(const TimedWord& w, int k) {
  for (const auto& l : w.letters)
    if (l.delay >= Rational(k + 1)) return false;
  return true;
}

// {0, 1/2, 1, ..., K, K+1/2} x alphabet, sorted by (delay, symbol).
inline std::vector<SymbolicLetter> symbolic_alphabet(
    const std::vector<std::string>& alphabet, int k) {
  if (alphabet.empty())
    throw std::invalid_argument("symbolic_alphabet: empty alphabet");
  std::vector<std::string> symbols = alphabet;
  std::sort(symbols.begin(), symbols.end());
  std::vector<SymbolicLetter> out;
  out.reserve((2 * k + 2) * symbols.size());
  for (int j = 0; j <= 2 * k + 1; ++j)
    for (const auto& s : symbols) out.push_back({Rational(j, 2), s});
  return out;
}

// Text form: semicolon-separated "delay:symbol" items, e.g. "1/2:a; 1:b".
// The empty string denotes the empty word.
inline std::string word_text(const TimedWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "; ";
    out += w.letters[i].delay.str();
    out += ":";
    out += w.letters[i].symbol;
  }
  return out;
}

inline TimedWord parse_word(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  TimedWord w;
  text = trim(text);
  while (!text.empty()) {
    std::string_view item = text;
    if (auto semi = text.find(';'); semi != std::string_view::npos) {
      item = text.substr(0, semi);
      text = trim(text.substr(semi + 1));
      if (text.empty()) throw ParseError("trailing ';' in timed word");
    } else {
      text = {};
    }
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("timed-word item without ':': '" + std::string(item) + "'");
    const Rational delay = Rational::parse(item.substr(0, colon));
    const std::string symbol{trim(item.substr(colon + 1))};
    if (symbol.empty())
      throw ParseError("timed-word item without symbol: '" + std::string(item) + "'");
    w.letters.push_back({delay, symbol});
  }
  return w;
}

inline std::ostream& operator<<(std::ostream& os, const TimedWord& w) {
  return os << (w.empty() ? "eps" : word_text(w));
}

}  // namespace irta
