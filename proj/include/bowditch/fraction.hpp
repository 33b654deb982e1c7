#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bowditch {

// Reduced slope p/q with q >= 0 and gcd(|p|, q) = 1. Infinity is 1/0.
struct Slope {
  long long p = 1;
  long long q = 0;

  bool infinite() const { return q == 0; }
  // |p| + q; equals the cyclically reduced length of the primitive word.
  long long size() const { return (p < 0 ? -p : p) + q; }

  friend bool operator==(const Slope& a, const Slope& b) {
    return a.p == b.p && a.q == b.q;
  }
  friend bool operator!=(const Slope& a, const Slope& b) { return !(a == b); }
  // Lexicographic on (p, q); used for map keys and deterministic tie-breaks.
  friend bool operator<(const Slope& a, const Slope& b) {
    return a.p != b.p ? a.p < b.p : a.q < b.q;
  }
};

// Normalizes an integer vector to a Slope: q >= 0, gcd 1 enforced by caller
// when it matters; (p,0) collapses to 1/0.
inline Slope normalize_slope(long long p, long long q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 0) {
    if (p == 0) throw std::invalid_argument("slope 0/0");
    p = 1;
  }
  return Slope{p, q};
}

inline Slope make_slope(long long p, long long q) {
  if (p == 0 && q == 0) throw std::invalid_argument("slope 0/0");
  long long g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return normalize_slope(p, q);
}

inline Slope slope_infinity() { return Slope{1, 0}; }
inline Slope slope_zero() { return Slope{0, 1}; }

// det(a, b) = p_a q_b - p_b q_a; Farey neighbors have |det| = 1.
inline long long slope_det(const Slope& a, const Slope& b) {
  return a.p * b.q - b.p * a.q;
}

inline bool farey_neighbors(const Slope& a, const Slope& b) {
  long long d = slope_det(a, b);
  return d == 1 || d == -1;
}

// Numeric value order with 1/0 treated as +infinity.
inline bool slope_value_less(const Slope& a, const Slope& b) {
  if (a == b) return false;
  if (a.infinite()) return false;
  if (b.infinite()) return true;
  return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
}

inline std::string to_string(const Slope& s) {
  return std::to_string(s.p) + "/" + std::to_string(s.q);
}

inline Slope parse_slope(const std::string& text) {
  auto bar = text.find('/');
  if (bar == std::string::npos) throw std::invalid_argument("slope: missing '/' in " + text);
  long long p = std::stoll(text.substr(0, bar));
  long long q = std::stoll(text.substr(bar + 1));
  return make_slope(p, q);
}

struct SlopeHash {
  std::size_t operator()(const Slope& s) const {
    std::size_t h = std::hash<long long>{}(s.p);
    return h ^ (std::hash<long long>{}(s.q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

}  // namespace bowditch
