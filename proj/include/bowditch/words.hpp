#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "bowditch/fraction.hpp"

namespace bowditch {

// Letters of F2 = <a, b> as ASCII: 'a', 'b', with 'A' = a^-1, 'B' = b^-1.
inline bool is_letter(char c) { return c == 'a' || c == 'b' || c == 'A' || c == 'B'; }

inline char letter_inverse(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
  }
  throw std::invalid_argument(std::string("bad letter: ") + c);
}

// Letter rank for the fixed total order a < b < a^-1 < b^-1.
inline int letter_rank(char c) {
  switch (c) {
    case 'a': return 0;
    case 'b': return 1;
    case 'A': return 2;
    case 'B': return 3;
  }
  throw std::invalid_argument(std::string("bad letter: ") + c);
}

// A freely reduced word. The constructor reduces, so the invariant always
// holds; the empty word is the identity.
class Word {
 public:
  Word() = default;

  static Word from_reduced(std::string s) {
    Word w;
    w.letters_ = std::move(s);
    return w;
  }

  explicit Word(const std::string& raw) : letters_(reduce_string(raw)) {}

  const std::string& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool identity() const { return letters_.empty(); }

  friend bool operator==(const Word& x, const Word& y) { return x.letters_ == y.letters_; }
  friend bool operator!=(const Word& x, const Word& y) { return !(x == y); }
  friend bool operator<(const Word& x, const Word& y) { return x.letters_ < y.letters_; }

  static std::string reduce_string(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
      if (!is_letter(c)) throw std::invalid_argument(std::string("bad letter: ") + c);
      if (!out.empty() && out.back() == letter_inverse(c))
        out.pop_back();
      else
        out.push_back(c);
    }
    return out;
  }

 private:
  std::string letters_;
};

inline Word reduce(const std::string& raw) { return Word(raw); }

inline Word concat(const Word& x, const Word& y) { return Word(x.letters() + y.letters()); }

inline Word inverse(const Word& w) {
  std::string out;
  out.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(letter_inverse(*it));
  return Word::from_reduced(out);
}

// Strips matching prefix/suffix inverse pairs; the result is conjugate to w.
inline Word cyclic_reduce(const Word& w) {
  const std::string& s = w.letters();
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && s[i] == letter_inverse(s[j - 1])) {
    ++i;
    --j;
  }
  return Word::from_reduced(s.substr(i, j - i));
}

inline long long cyclic_length(const Word& w) {
  return static_cast<long long>(cyclic_reduce(w).length());
}

// Conjugator u with w = u * cyclic_reduce(w) * u^-1.
inline Word cyclic_conjugator(const Word& w) {
  const std::string& s = w.letters();
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && s[i] == letter_inverse(s[j - 1])) {
    ++i;
    --j;
  }
  return Word::from_reduced(s.substr(0, i));
}

// Exponent sums (#a, #b) of the reduced word.
inline std::pair<long long, long long> exponent_sums(const Word& w) {
  long long sa = 0, sb = 0;
  for (char c : w.letters()) {
    if (c == 'a') ++sa;
    if (c == 'A') --sa;
    if (c == 'b') ++sb;
    if (c == 'B') --sb;
  }
  return {sa, sb};
}

// Abelianization ratio as a reduced fraction; nullopt when both exponent sums
// vanish or when their gcd exceeds 1 (the class cannot be primitive).
inline std::optional<Slope> slope(const Word& w) {
  auto [sa, sb] = exponent_sums(w);
  if (sa == 0 && sb == 0) return std::nullopt;
  long long g = std::gcd(sa < 0 ? -sa : sa, sb < 0 ? -sb : sb);
  if (g != 1) return std::nullopt;
  return normalize_slope(sa, sb);
}

// Substitutes a -> images.first, b -> images.second and reduces.
inline Word apply_endomorphism(const std::pair<Word, Word>& images, const Word& w) {
  std::string out;
  const Word inv_a = inverse(images.first);
  const Word inv_b = inverse(images.second);
  for (char c : w.letters()) {
    switch (c) {
      case 'a': out += images.first.letters(); break;
      case 'A': out += inv_a.letters(); break;
      case 'b': out += images.second.letters(); break;
      case 'B': out += inv_b.letters(); break;
    }
  }
  return Word(out);
}

// Lexicographic minimum over all cyclic rotations of the cyclic reduction of w
// and of its inverse, in the order a < b < a^-1 < b^-1. Decides equality of
// conjugacy-inversion classes.
inline std::string canonical_cyclic(const Word& w) {
  Word cw = cyclic_reduce(w);
  if (cw.identity()) return std::string();
  auto rank_less = [](const std::string& x, const std::string& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      int rx = letter_rank(x[i]), ry = letter_rank(y[i]);
      if (rx != ry) return rx < ry;
    }
    return false;
  };
  auto min_rotation = [&](const std::string& s) {
    std::string best = s;
    std::string rot = s;
    for (std::size_t i = 1; i < s.size(); ++i) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rank_less(rot, best)) best = rot;
    }
    return best;
  };
  std::string m1 = min_rotation(cw.letters());
  std::string m2 = min_rotation(inverse(cw).letters());
  return rank_less(m2, m1) ? m2 : m1;
}

inline bool same_class(const Word& x, const Word& y) {
  return canonical_cyclic(x) == canonical_cyclic(y);
}

}  // namespace bowditch
